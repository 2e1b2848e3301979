//! Sensitivity mathematics of the spectrometer: maximum induced voltage, SNR,
//! theoretical spin sensitivity (closed form and constructive route), grid
//! generation, and the dB ledger reconciling theoretical and measured
//! sensitivity.

use serde::{Deserialize, Serialize};

use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::physics::{curie_magnetization, johnson_noise_density, unitary_field, SpinSystem};

/// Inputs for the induced-voltage / SNR chain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SensitivityInputs {
    /// Bias field B0 (T).
    pub b0: f64,
    /// Coil noise-equivalent resistance (Ω).
    pub resistance: f64,
    /// Coil diameter (m).
    pub coil_diameter: f64,
    /// Sample description; its temperature feeds both signal and noise.
    pub spin_system: SpinSystem,
    /// Microwave drive field B1 (T).
    pub b1: f64,
    /// Equivalent noise bandwidth Δf (Hz).
    pub bandwidth: f64,
}

impl SensitivityInputs {
    pub fn validate(&self) -> Result<()> {
        self.spin_system.validate()?;
        let fields = [
            ("b0", self.b0),
            ("resistance", self.resistance),
            ("coil_diameter", self.coil_diameter),
            ("b1", self.b1),
            ("bandwidth", self.bandwidth),
        ];
        for (name, v) in fields {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::Domain(format!(
                    "sensitivity input {name} must be strictly positive, got {v}"
                )));
            }
        }
        if self.b1 > self.spin_system.hwhm_linewidth {
            return Err(Error::Domain(format!(
                "B1 = {} T exceeds the hwhm linewidth {} T (drive is limited to B1 <= ΔB)",
                self.b1, self.spin_system.hwhm_linewidth
            )));
        }
        Ok(())
    }
}

/// One named degradation stage of the receive chain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LedgerStage {
    pub name: String,
    /// Amplitude-SNR degradation (dB), >= 0.
    pub degradation_db: f64,
}

/// Ordered list of dB degradations plus a sample-position coupling efficiency.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NoiseLedger {
    /// Sample-microcoil coupling efficiency in (0, 1].
    pub coupling_efficiency: f64,
    pub stages: Vec<LedgerStage>,
}

impl Default for NoiseLedger {
    fn default() -> Self {
        Self {
            stages: Vec::new(),
            coupling_efficiency: 1.0,
        }
    }
}

impl NoiseLedger {
    pub fn validate(&self) -> Result<()> {
        for stage in &self.stages {
            if stage.degradation_db < 0.0 || !stage.degradation_db.is_finite() {
                return Err(Error::Domain(format!(
                    "ledger stage '{}' has negative degradation {} dB",
                    stage.name, stage.degradation_db
                )));
            }
        }
        if !(self.coupling_efficiency > 0.0 && self.coupling_efficiency <= 1.0) {
            return Err(Error::Domain(format!(
                "coupling efficiency must lie in (0, 1], got {}",
                self.coupling_efficiency
            )));
        }
        Ok(())
    }

    /// Sum of all stage degradations (dB).
    pub fn total_db(&self) -> f64 {
        self.stages.iter().map(|s| s.degradation_db).sum()
    }
}

/// How a sensitivity estimate was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EstimateMode {
    Theoretical,
    Degraded,
    MeasuredStyle,
}

/// A spin-sensitivity figure together with the chain quantities behind it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SensitivityEstimate {
    /// Minimum detectable spins per √Hz.
    pub n_min: f64,
    pub snr: f64,
    /// Maximum induced voltage ξ_max (V).
    pub xi_max: f64,
    pub mode: EstimateMode,
}

/// Maximum voltage induced in the microcoil:
/// ξ_max = γ·B1·M0·(B0/ΔB)·B_u·V_s.
pub fn max_induced_voltage(inputs: &SensitivityInputs, constants: &PhysicalConstants) -> Result<f64> {
    inputs.spin_system.validate()?;
    if !(inputs.spin_system.hwhm_linewidth > 0.0) {
        return Err(Error::Singular("ΔB = 0 makes the induced voltage singular".into()));
    }
    if inputs.b1 < 0.0 {
        return Err(Error::Domain("B1 must be >= 0".into()));
    }
    let sys = &inputs.spin_system;
    let gamma = sys.g_factor * constants.bohr_magneton / constants.planck_hbar;
    let m0 = curie_magnetization(sys, inputs.b0, constants)?;
    let bu = unitary_field(inputs.coil_diameter, constants)?;
    Ok(gamma * inputs.b1 * m0 * (inputs.b0 / sys.hwhm_linewidth) * bu * sys.volume)
}

/// SNR = ξ_max/(3·√(4·k_B·T·R·Δf)); the factor 3 is the detection margin.
pub fn snr(inputs: &SensitivityInputs, constants: &PhysicalConstants) -> Result<f64> {
    if !(inputs.bandwidth > 0.0) {
        return Err(Error::Domain(format!(
            "noise bandwidth must be > 0 Hz, got {}",
            inputs.bandwidth
        )));
    }
    let xi = max_induced_voltage(inputs, constants)?;
    let noise =
        johnson_noise_density(inputs.resistance, inputs.spin_system.temperature, constants)?
            * inputs.bandwidth.sqrt();
    Ok(xi / (3.0 * noise))
}

/// Closed-form theoretical spin sensitivity (spins/√Hz):
/// N_min = 24·k_B^{3/2}/(γ³·ħ²) · T^{3/2}·√R/(B_u·B0²).
pub fn spin_sensitivity(
    b0: f64,
    temperature: f64,
    resistance: f64,
    coil_diameter: f64,
    constants: &PhysicalConstants,
) -> Result<f64> {
    for (name, v) in [
        ("b0", b0),
        ("temperature", temperature),
        ("resistance", resistance),
        ("coil_diameter", coil_diameter),
    ] {
        if !(v > 0.0) || !v.is_finite() {
            return Err(Error::Domain(format!(
                "spin sensitivity input {name} must be strictly positive, got {v}"
            )));
        }
    }
    let gamma = constants.gyromagnetic_ratio();
    let hbar = constants.planck_hbar;
    let kb = constants.boltzmann_k;
    let bu = unitary_field(coil_diameter, constants)?;
    Ok(24.0 * kb.powf(1.5) / (gamma.powi(3) * hbar * hbar) * temperature.powf(1.5)
        * resistance.sqrt()
        / (bu * b0 * b0))
}

/// Constructive route to the same figure: N·V_s/(SNR·√Δf) evaluated at the
/// B1 = ΔB operating point. Agrees with the closed form algebraically.
pub fn spin_sensitivity_constructive(
    inputs: &SensitivityInputs,
    constants: &PhysicalConstants,
) -> Result<f64> {
    let s = snr(inputs, constants)?;
    if !(s > 0.0) {
        return Err(Error::Domain("SNR must be > 0 for a sensitivity estimate".into()));
    }
    Ok(inputs.spin_system.total_spins() / (s * inputs.bandwidth.sqrt()))
}

/// Grid of closed-form sensitivities; rows follow `fields`, columns `temps`.
pub fn sensitivity_table(
    fields: &[f64],
    temps: &[f64],
    resistance: f64,
    coil_diameter: f64,
    constants: &PhysicalConstants,
) -> Result<Vec<Vec<f64>>> {
    if fields.is_empty() || temps.is_empty() {
        return Err(Error::Config("sensitivity table needs nonempty field and temperature axes".into()));
    }
    fields
        .iter()
        .map(|&b0| {
            temps
                .iter()
                .map(|&t| spin_sensitivity(b0, t, resistance, coil_diameter, constants))
                .collect()
        })
        .collect()
}

/// Degrade a theoretical sensitivity by the ledger:
/// degraded = theoretical × 10^(total_dB/20) / coupling_efficiency.
pub fn apply_ledger(theoretical_n_min: f64, ledger: &NoiseLedger) -> Result<f64> {
    ledger.validate()?;
    Ok(theoretical_n_min * 10f64.powf(ledger.total_db() / 20.0) / ledger.coupling_efficiency)
}

/// Measured-style sensitivity N_min = total_spins/(SNR·√Δf).
pub fn measured_sensitivity(total_spins: f64, snr: f64, bandwidth: f64) -> Result<f64> {
    for (name, v) in [("total_spins", total_spins), ("snr", snr), ("bandwidth", bandwidth)] {
        if !(v > 0.0) || !v.is_finite() {
            return Err(Error::Domain(format!(
                "measured sensitivity input {name} must be strictly positive, got {v}"
            )));
        }
    }
    Ok(total_spins / (snr * bandwidth.sqrt()))
}

/// Equivalent noise bandwidth 1/(4τ) of a first-order lock-in filter.
pub fn lockin_noise_bandwidth(time_constant: f64) -> Result<f64> {
    if !(time_constant > 0.0) {
        return Err(Error::Domain(format!(
            "time constant must be > 0 s, got {time_constant}"
        )));
    }
    Ok(1.0 / (4.0 * time_constant))
}
