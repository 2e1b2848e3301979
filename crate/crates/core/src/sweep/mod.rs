//! The virtual experiment: field, frequency, and combined 2D sweeps with
//! field modulation, seeded noise, and lock-in readout.

mod analysis;
mod run;
mod synth;

pub use analysis::{extract_pp_linewidth, find_zero_crossing, measure_snr};
pub use run::{run_2d_sweep, run_field_sweep, run_frequency_sweep};
pub use synth::{synthesize_baseband, OperatingPoint};

use serde::{Deserialize, Serialize};

use crate::calibration::LensCalibration;
use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::lockin::LockInSettings;
use crate::physics::SpinSystem;
use crate::resonator::ResonatorModel;

/// Field-modulation settings of the miniature modulation coil.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ModulationSettings {
    /// Modulation frequency f_mod (Hz).
    pub frequency: f64,
    /// Modulation amplitude B_m (T).
    pub amplitude: f64,
    /// Modulation phase (rad).
    pub phase: f64,
}

impl Default for ModulationSettings {
    fn default() -> Self {
        Self {
            frequency: 101e3,
            amplitude: 0.0,
            phase: 0.0,
        }
    }
}

impl ModulationSettings {
    pub fn validate(&self) -> Result<()> {
        if !(self.frequency > 0.0) || !self.frequency.is_finite() {
            return Err(Error::Domain(format!(
                "modulation frequency must be > 0 Hz, got {}",
                self.frequency
            )));
        }
        if self.amplitude < 0.0 || !self.amplitude.is_finite() {
            return Err(Error::Domain(format!(
                "modulation amplitude must be >= 0 T, got {}",
                self.amplitude
            )));
        }
        Ok(())
    }

    /// True when B_m > ΔB/2: the sweep runs in the overmodulation regime.
    pub fn is_overmodulated(&self, hwhm: f64) -> bool {
        self.amplitude > hwhm / 2.0
    }
}

/// A uniform axis `start..=stop` with spacing `step`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AxisRange {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl AxisRange {
    pub fn validate(&self) -> Result<()> {
        if !(self.start < self.stop) {
            return Err(Error::Config(format!(
                "axis start {} must be below stop {}",
                self.start, self.stop
            )));
        }
        if !(self.step > 0.0) {
            return Err(Error::Config(format!("axis step must be > 0, got {}", self.step)));
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        let n = ((self.stop - self.start) / self.step + 0.5).floor() as usize;
        (0..=n).map(|i| self.start + i as f64 * self.step).collect()
    }
}

/// One sweep axis: objective-lens excitation (%) or drive frequency (Hz).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepAxis {
    Excitation(AxisRange),
    Frequency(AxisRange),
}

impl SweepAxis {
    pub fn range(&self) -> &AxisRange {
        match self {
            SweepAxis::Excitation(r) | SweepAxis::Frequency(r) => r,
        }
    }
}

/// Plan for one virtual acquisition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepPlan {
    pub axis1: SweepAxis,
    /// Second axis for combined 2D sweeps.
    pub axis2: Option<SweepAxis>,
    /// Drive frequency (Hz), required when no frequency axis is swept.
    pub fixed_frequency: Option<f64>,
    /// Lens excitation (%), required when no excitation axis is swept.
    pub fixed_excitation: Option<f64>,
    /// Acquisition time per point (s); must cover the 5τ settling guard.
    pub dwell_time: f64,
    pub rng_seed: u64,
    pub noise_enabled: bool,
}

impl SweepPlan {
    pub fn validate(&self, cal: &LensCalibration, lockin: &LockInSettings) -> Result<()> {
        let mut axes = vec![&self.axis1];
        if let Some(a) = &self.axis2 {
            axes.push(a);
        }
        for axis in axes {
            axis.range().validate()?;
            if let SweepAxis::Excitation(r) = axis {
                for (name, v) in [("start", r.start), ("step", r.step)] {
                    let quantum = v / cal.min_step;
                    if (quantum - quantum.round()).abs() > 1e-6 {
                        return Err(Error::Config(format!(
                            "excitation axis {name} {v} % is not a multiple of the {} % lens step",
                            cal.min_step
                        )));
                    }
                }
            }
        }
        if self.dwell_time < 5.0 * lockin.time_constant {
            return Err(Error::Config(format!(
                "dwell time {} s violates the 5τ settling guard ({} s)",
                self.dwell_time,
                5.0 * lockin.time_constant
            )));
        }
        Ok(())
    }
}

/// Everything the synthesis and sweep runners need, bundled.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepContext {
    pub constants: PhysicalConstants,
    pub spin_system: SpinSystem,
    pub resonator: ResonatorModel,
    pub calibration: LensCalibration,
    pub modulation: ModulationSettings,
    pub lockin: LockInSettings,
    /// Generator output power (W).
    pub drive_power: f64,
    /// White-noise voltage density at the lock-in input (V/√Hz).
    pub noise_density: f64,
    /// Constant reflected-signal offset (V), emulating holder vibration.
    pub dc_offset: f64,
    /// Track the resonator phase per point so the I channel always reads
    /// pure absorption, as a phase-tuned spectrometer does. Without it a
    /// wide frequency sweep mixes dispersion into I away from the match.
    #[serde(default)]
    pub auto_phase: bool,
    /// Baseband sample rate override (Hz); default is 32·f_mod.
    pub sample_rate: Option<f64>,
}

impl SweepContext {
    pub fn validate(&self) -> Result<()> {
        self.constants.validate()?;
        self.spin_system.validate()?;
        self.resonator.validate()?;
        self.calibration.validate()?;
        self.modulation.validate()?;
        self.lockin.validate()?;
        if self.drive_power < 0.0 {
            return Err(Error::Domain("drive power must be >= 0 W".into()));
        }
        if self.noise_density < 0.0 {
            return Err(Error::Domain("noise density must be >= 0 V/√Hz".into()));
        }
        let fs = self.effective_sample_rate();
        if fs < 32.0 * self.modulation.frequency {
            return Err(Error::Config(format!(
                "sample rate {fs} Hz violates the 32 samples-per-modulation-period rule"
            )));
        }
        Ok(())
    }

    /// Baseband sample rate: 32 samples per modulation period unless overridden.
    pub fn effective_sample_rate(&self) -> f64 {
        self.sample_rate.unwrap_or(32.0 * self.modulation.frequency)
    }
}

/// Kind of the primary sweep axis, recorded in spectrum metadata.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AxisKind {
    Excitation,
    Frequency,
}

/// Acquisition metadata carried with every spectrum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumMeta {
    pub axis_kind: AxisKind,
    pub seed: u64,
    pub noise_enabled: bool,
    pub dwell_time: f64,
    pub software_version: String,
    /// False when the resonance lies outside the swept range.
    pub crossing_detected: bool,
}

/// Demodulated 1D sweep: axis values with I/Q outputs and per-point field
/// and drive frequency.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub axis: Vec<f64>,
    pub field_mt: Vec<f64>,
    pub frequency_ghz: Vec<f64>,
    pub i: Vec<f64>,
    pub q: Vec<f64>,
    pub meta: SpectrumMeta,
}

/// Demodulated 2D sweep; rows follow excitation, columns frequency.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum2d {
    pub excitation: Vec<f64>,
    pub frequency_ghz: Vec<f64>,
    pub i: Vec<Vec<f64>>,
    pub q: Vec<Vec<f64>>,
    pub meta: SpectrumMeta,
}
