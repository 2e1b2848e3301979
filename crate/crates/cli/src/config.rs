//! Run configuration: a strict TOML schema mirroring the simulation types,
//! plus the translation into sweep-engine inputs.

use serde::{Deserialize, Serialize};

use esr_core::{
    LensCalibration, LockInSettings, ModulationSettings, NoiseLedger, PhysicalConstants,
    ResonatorModel, SpinSystem, SweepContext,
};

use crate::error::{CliError, Result};

/// Complete configuration of one run. Unknown keys anywhere in the file are
/// errors: silent typos in physics parameters corrupt results.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    /// Master seed of the per-point noise streams.
    pub seed: u64,
    pub constants: PhysicalConstants,
    /// Sample description; required by the `sweep` subcommand.
    pub spin_system: Option<SpinSystem>,
    pub resonator: ResonatorModel,
    pub calibration: LensCalibration,
    pub modulation: ModulationSettings,
    pub lockin: LockInSettings,
    pub detection: DetectionConfig,
    /// Acquisition description; required by the `sweep` subcommand.
    pub sweep: Option<SweepConfig>,
    /// Grid description; required by the `sensitivity-table` subcommand.
    pub table: Option<TableConfig>,
    /// Operating point and ledger; required by the `noise-budget` subcommand.
    pub budget: Option<BudgetConfig>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: 1,
            constants: PhysicalConstants::default(),
            spin_system: None,
            resonator: ResonatorModel::default(),
            calibration: LensCalibration::default(),
            modulation: ModulationSettings::default(),
            lockin: LockInSettings::default(),
            detection: DetectionConfig::default(),
            sweep: None,
            table: None,
            budget: None,
        }
    }
}

/// Drive and receive-chain settings shared by all sweep modes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DetectionConfig {
    /// Microwave generator output power (W).
    pub drive_power: f64,
    /// White-noise voltage density at the lock-in input (V/√Hz).
    pub noise_density: f64,
    /// Constant reflected-signal offset (V), emulating holder vibration.
    pub dc_offset: f64,
    /// Track the resonator phase per swept point so the I channel reads the
    /// absorption quadrature at every detuning.
    pub auto_phase: bool,
    /// Baseband sample-rate override (Hz); default is 32 samples per
    /// modulation period.
    pub sample_rate: Option<f64>,
}

impl Default for DetectionConfig {
    fn default() -> Self {
        Self {
            // 20 dBm generator output.
            drive_power: 0.1,
            noise_density: 0.0,
            dc_offset: 0.0,
            auto_phase: false,
            sample_rate: None,
        }
    }
}

/// Which axes a sweep traverses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SweepMode {
    #[serde(rename = "field")]
    Field,
    #[serde(rename = "frequency")]
    Frequency,
    #[serde(rename = "2d")]
    TwoD,
}

/// A uniform axis `start..=stop` with spacing `step`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AxisConfig {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl AxisConfig {
    fn to_range(self) -> esr_core::AxisRange {
        esr_core::AxisRange {
            start: self.start,
            stop: self.stop,
            step: self.step,
        }
    }
}

/// Acquisition plan of one spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub mode: SweepMode,
    /// Acquisition time per point (s); must cover the 5τ settling guard.
    pub dwell_time: f64,
    /// Synthesize receiver noise (overridden by `--no-noise`).
    #[serde(default = "default_noise")]
    pub noise: bool,
    /// Drive frequency (Hz) for `field` mode.
    pub fixed_frequency: Option<f64>,
    /// Lens excitation (%) for `frequency` mode.
    pub fixed_excitation: Option<f64>,
    /// Excitation axis (%) for `field` and `2d` modes.
    pub excitation: Option<AxisConfig>,
    /// Frequency axis (Hz) for `frequency` and `2d` modes.
    pub frequency: Option<AxisConfig>,
}

fn default_noise() -> bool {
    true
}

/// Field × temperature grid of the closed-form sensitivity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableConfig {
    /// Bias fields B0 (T), one table row each.
    pub fields: Vec<f64>,
    /// Sample temperatures (K), one table column each.
    pub temperatures: Vec<f64>,
    /// Coil noise-equivalent resistance (Ω).
    pub resistance: f64,
    /// Microcoil diameter (m).
    pub coil_diameter: f64,
}

/// Operating point plus receive-chain ledger for the noise budget.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BudgetConfig {
    /// Bias field B0 (T).
    pub b0: f64,
    /// Sample temperature (K).
    pub temperature: f64,
    /// Coil noise-equivalent resistance (Ω).
    pub resistance: f64,
    /// Microcoil diameter (m).
    pub coil_diameter: f64,
    #[serde(default)]
    pub ledger: NoiseLedger,
}

impl RunConfig {
    /// Parse a strict TOML document.
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| CliError::Config(format!("config parse error: {e}")))
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string_pretty(self)
            .map_err(|e| CliError::Runtime(format!("config serialization error: {e}")))
    }

    /// Build the sweep-engine context; checks every block's invariants.
    pub fn sweep_context(&self) -> Result<SweepContext> {
        let spin_system = self
            .spin_system
            .ok_or_else(|| CliError::Config("the sweep subcommand needs a [spin_system] block".into()))?;
        let ctx = SweepContext {
            constants: self.constants,
            spin_system,
            resonator: self.resonator,
            calibration: self.calibration,
            modulation: self.modulation,
            lockin: self.lockin,
            drive_power: self.detection.drive_power,
            noise_density: self.detection.noise_density,
            dc_offset: self.detection.dc_offset,
            auto_phase: self.detection.auto_phase,
            sample_rate: self.detection.sample_rate,
        };
        ctx.validate().map_err(CliError::config)?;
        Ok(ctx)
    }

    /// Build the sweep plan; `seed`/`no_noise` are the command-line overrides.
    pub fn sweep_plan(
        &self,
        seed_override: Option<u64>,
        no_noise: bool,
    ) -> Result<esr_core::SweepPlan> {
        let sweep = self
            .sweep
            .ok_or_else(|| CliError::Config("the sweep subcommand needs a [sweep] block".into()))?;
        let need = |axis: Option<AxisConfig>, name: &str| {
            axis.map(AxisConfig::to_range).ok_or_else(|| {
                CliError::Config(format!("sweep mode requires a [sweep.{name}] axis"))
            })
        };
        let (axis1, axis2) = match sweep.mode {
            SweepMode::Field => (
                esr_core::SweepAxis::Excitation(need(sweep.excitation, "excitation")?),
                None,
            ),
            SweepMode::Frequency => (
                esr_core::SweepAxis::Frequency(need(sweep.frequency, "frequency")?),
                None,
            ),
            SweepMode::TwoD => (
                esr_core::SweepAxis::Excitation(need(sweep.excitation, "excitation")?),
                Some(esr_core::SweepAxis::Frequency(need(sweep.frequency, "frequency")?)),
            ),
        };
        let plan = esr_core::SweepPlan {
            axis1,
            axis2,
            fixed_frequency: sweep.fixed_frequency,
            fixed_excitation: sweep.fixed_excitation,
            dwell_time: sweep.dwell_time,
            rng_seed: seed_override.unwrap_or(self.seed),
            noise_enabled: sweep.noise && !no_noise,
        };
        plan.validate(&self.calibration, &self.lockin)
            .map_err(CliError::config)?;
        Ok(plan)
    }

    pub fn table(&self) -> Result<&TableConfig> {
        self.table.as_ref().ok_or_else(|| {
            CliError::Config("the sensitivity-table subcommand needs a [table] block".into())
        })
    }

    pub fn budget(&self) -> Result<&BudgetConfig> {
        self.budget.as_ref().ok_or_else(|| {
            CliError::Config("the noise-budget subcommand needs a [budget] block".into())
        })
    }
}
