//! Lumped-element model of the impedance-matched microresonator: detuning,
//! complex reflection coefficient, drive field B1 from input power, and the
//! reflected-wave perturbation caused by the sample susceptibility.
//!
//! The model is a series RLC resonator coupled through an ideal impedance
//! inverter; Q, β, and η are not quoted by the instrument calibration and are
//! configuration gap-fills.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::physics::unitary_field;

/// Microresonator / matching-network description.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ResonatorModel {
    /// Matched center frequency f_res (Hz).
    pub center_frequency: f64,
    /// Loaded quality factor.
    pub quality_factor: f64,
    /// Coupling coefficient β; β = 1 is a critical match.
    pub coupling: f64,
    /// Microcoil diameter (m).
    pub coil_diameter: f64,
    /// Noise-equivalent series resistance (Ω).
    pub equivalent_resistance: f64,
    /// Filling factor η in (0, 1].
    pub filling_factor: f64,
    /// Line reference impedance Z0 (Ω).
    pub reference_impedance: f64,
}

impl Default for ResonatorModel {
    fn default() -> Self {
        Self {
            center_frequency: 4.5e9,
            quality_factor: 30.0,
            coupling: 1.0,
            coil_diameter: 1e-3,
            equivalent_resistance: 1.0,
            filling_factor: 0.1,
            reference_impedance: 50.0,
        }
    }
}

impl ResonatorModel {
    pub fn validate(&self) -> Result<()> {
        if !(self.center_frequency > 0.0) {
            return Err(Error::Domain("center frequency must be > 0".into()));
        }
        if !(self.quality_factor > 0.0) {
            return Err(Error::Domain("quality factor must be > 0".into()));
        }
        if !(self.coupling > 0.0) {
            return Err(Error::Domain("coupling must be > 0".into()));
        }
        if !(self.coil_diameter > 0.0) {
            return Err(Error::Domain("coil diameter must be > 0".into()));
        }
        if self.equivalent_resistance < 0.0 {
            return Err(Error::Domain("equivalent resistance must be >= 0".into()));
        }
        if !(self.filling_factor > 0.0 && self.filling_factor <= 1.0) {
            return Err(Error::Domain("filling factor must lie in (0, 1]".into()));
        }
        if !(self.reference_impedance > 0.0) {
            return Err(Error::Domain("reference impedance must be > 0".into()));
        }
        Ok(())
    }
}

/// Fractional detuning δ = ν/f_res − f_res/ν.
pub fn detuning(freq: f64, model: &ResonatorModel) -> Result<f64> {
    if !(freq > 0.0) || !freq.is_finite() {
        return Err(Error::Domain(format!("frequency must be > 0 Hz, got {freq}")));
    }
    Ok(freq / model.center_frequency - model.center_frequency / freq)
}

/// Complex reflection coefficient Γ(ν) = (β − 1 − i·Q·δ)/(β + 1 + i·Q·δ).
pub fn reflection_coefficient(freq: f64, model: &ResonatorModel) -> Result<Complex64> {
    let qd = model.quality_factor * detuning(freq, model)?;
    let num = Complex64::new(model.coupling - 1.0, -qd);
    let den = Complex64::new(model.coupling + 1.0, qd);
    Ok(num / den)
}

/// Rotating-frame drive field B1 (T) delivered to the sample by an incident
/// power P (W) at resonance.
///
/// The coil current is I = √(2β/(1+β)² · 4P/R); the factor 1/2 in B1 is the
/// rotating-frame half-amplitude of the linearly polarized coil field.
pub fn b1_field(input_power: f64, model: &ResonatorModel, constants: &PhysicalConstants) -> Result<f64> {
    if input_power < 0.0 || !input_power.is_finite() {
        return Err(Error::Domain(format!("input power must be >= 0 W, got {input_power}")));
    }
    if input_power == 0.0 {
        return Ok(0.0);
    }
    if model.equivalent_resistance == 0.0 {
        return Err(Error::Singular(
            "coil current is unbounded for R = 0 with nonzero drive power".into(),
        ));
    }
    let beta = model.coupling;
    let current = (2.0 * beta / ((1.0 + beta) * (1.0 + beta)) * 4.0 * input_power
        / model.equivalent_resistance)
        .sqrt();
    let bu = unitary_field(model.coil_diameter, constants)?;
    Ok(0.5 * bu * current)
}

/// Complex gain relating a small sample susceptibility to the change in the
/// reflected wave at drive frequency ν:
/// δΓ = i·η·Q·χ · 4β/(β + 1 + i·Q·δ)².
pub fn perturbation_gain(freq: f64, model: &ResonatorModel) -> Result<Complex64> {
    let qd = model.quality_factor * detuning(freq, model)?;
    let den = Complex64::new(model.coupling + 1.0, qd);
    Ok(Complex64::new(0.0, model.filling_factor * model.quality_factor) * 4.0 * model.coupling
        / (den * den))
}

/// Reflected-wave perturbation δΓ at resonance for susceptibility χ = χ' + iχ''.
pub fn signal_perturbation(chi: Complex64, model: &ResonatorModel) -> Complex64 {
    let beta = model.coupling;
    let norm = 4.0 * beta / ((beta + 1.0) * (beta + 1.0));
    Complex64::new(0.0, model.filling_factor * model.quality_factor) * chi * norm
}

/// Reflected-wave perturbation δΓ at an arbitrary drive frequency, including
/// the impedance-match roll-off envelope.
pub fn signal_perturbation_at(chi: Complex64, freq: f64, model: &ResonatorModel) -> Result<Complex64> {
    Ok(perturbation_gain(freq, model)? * chi)
}
