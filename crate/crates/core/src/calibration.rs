//! Affine maps between objective-lens excitation (%), bias field B0 (mT), and
//! resonance frequency (GHz), plus excitation quantization.
//!
//! The defaults are the instrument calibration of an FEI Tecnai F20 operated
//! in low magnification mode; they are configuration, not physics, and can be
//! replaced to model another microscope.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Objective-lens calibration: two affine lines and the excitation granularity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct LensCalibration {
    /// Field slope (mT per % excitation).
    pub field_slope: f64,
    /// Remanent field offset at zero excitation (mT).
    pub field_offset: f64,
    /// Frequency slope (GHz per % excitation).
    pub freq_slope: f64,
    /// Frequency intercept (GHz).
    pub freq_offset: f64,
    /// Smallest excitation step (%).
    pub min_step: f64,
    /// Field ceiling at the specimen (mT).
    pub max_field: f64,
}

impl Default for LensCalibration {
    fn default() -> Self {
        Self {
            field_slope: 22.86,
            field_offset: 19.14,
            freq_slope: 0.64,
            freq_offset: 0.536,
            min_step: 0.0001,
            // Low-magnification-mode ceiling (0 to 0.8 T at the specimen).
            max_field: 800.0,
        }
    }
}

impl LensCalibration {
    /// Calibration with the standard-mode field ceiling of 1.8 T.
    pub fn standard_mode() -> Self {
        Self {
            max_field: 1800.0,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.field_slope > 0.0) || !(self.freq_slope > 0.0) {
            return Err(Error::Domain("calibration slopes must be > 0".into()));
        }
        if !(self.min_step > 0.0) {
            return Err(Error::Domain("min_step must be > 0".into()));
        }
        if !(self.max_field > 0.0) {
            return Err(Error::Domain("max_field must be > 0".into()));
        }
        Ok(())
    }

    /// Implied field-to-frequency slope (GHz/mT) of the two calibration lines.
    pub fn implied_freq_per_field(&self) -> f64 {
        self.freq_slope / self.field_slope
    }
}

fn check_excitation(e_obj: f64) -> Result<()> {
    if e_obj < 0.0 || !e_obj.is_finite() {
        return Err(Error::Domain(format!(
            "lens excitation must be >= 0 %, got {e_obj}"
        )));
    }
    Ok(())
}

/// B0 (mT) produced at excitation `e_obj` (%).
pub fn excitation_to_field(e_obj: f64, cal: &LensCalibration) -> Result<f64> {
    check_excitation(e_obj)?;
    let b0 = cal.field_slope * e_obj + cal.field_offset;
    if b0 > cal.max_field {
        return Err(Error::Range(format!(
            "field {b0:.2} mT exceeds the {:.0} mT ceiling (0 to {:.1} T at the specimen)",
            cal.max_field,
            cal.max_field / 1000.0
        )));
    }
    Ok(b0)
}

/// Excitation (%) producing a field of `b0` (mT); exact affine inverse.
pub fn field_to_excitation(b0: f64, cal: &LensCalibration) -> Result<f64> {
    if b0 < cal.field_offset {
        return Err(Error::Range(format!(
            "field {b0:.2} mT is below the {:.2} mT remanent offset and unreachable",
            cal.field_offset
        )));
    }
    Ok((b0 - cal.field_offset) / cal.field_slope)
}

/// Resonance frequency (GHz) at excitation `e_obj` (%).
pub fn excitation_to_frequency(e_obj: f64, cal: &LensCalibration) -> Result<f64> {
    check_excitation(e_obj)?;
    Ok(cal.freq_slope * e_obj + cal.freq_offset)
}

/// Excitation (%) at which the calibration line reaches `freq` (GHz).
pub fn frequency_to_excitation(freq: f64, cal: &LensCalibration) -> Result<f64> {
    if freq < cal.freq_offset {
        return Err(Error::Range(format!(
            "frequency {freq:.4} GHz is below the {:.4} GHz intercept",
            cal.freq_offset
        )));
    }
    Ok((freq - cal.freq_offset) / cal.freq_slope)
}

/// Round an excitation to the nearest settable multiple of the minimum step,
/// ties to even.
pub fn quantize_excitation(e_obj: f64, cal: &LensCalibration) -> Result<f64> {
    check_excitation(e_obj)?;
    let n = (e_obj / cal.min_step).round_ties_even();
    Ok(n * cal.min_step)
}
