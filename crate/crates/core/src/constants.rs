//! Fundamental constants (CODATA 2018) and the derived electron quantities
//! used throughout the signal chain.

use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

use crate::error::{Error, Result};

/// Boltzmann constant (J/K), exact by SI definition.
pub const BOLTZMANN: f64 = 1.380_649e-23;
/// Reduced Planck constant (J·s).
pub const HBAR: f64 = 1.054_571_817e-34;
/// Planck constant (J·s), exact by SI definition.
pub const PLANCK: f64 = 6.626_070_15e-34;
/// Bohr magneton (J/T).
pub const BOHR_MAGNETON: f64 = 9.274_010_078_3e-24;
/// Vacuum permeability (T·m/A).
pub const VACUUM_PERMEABILITY: f64 = 1.256_637_062_12e-6;
/// Free-electron g-factor used as the default.
pub const DEFAULT_G_FACTOR: f64 = 2.0023;

/// Bundle of physical constants plus the configured g-factor.
///
/// The gyromagnetic ratio is always derived from the configured g-factor so
/// the Zeeman, Curie, and sensitivity formulas stay mutually consistent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PhysicalConstants {
    pub boltzmann_k: f64,
    pub planck_hbar: f64,
    pub bohr_magneton: f64,
    pub vacuum_permeability: f64,
    pub electron_g_factor: f64,
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self {
            boltzmann_k: BOLTZMANN,
            planck_hbar: HBAR,
            bohr_magneton: BOHR_MAGNETON,
            vacuum_permeability: VACUUM_PERMEABILITY,
            electron_g_factor: DEFAULT_G_FACTOR,
        }
    }
}

impl PhysicalConstants {
    /// Constants with a caller-chosen g-factor.
    pub fn with_g_factor(g: f64) -> Self {
        Self {
            electron_g_factor: g,
            ..Self::default()
        }
    }

    /// Planck constant h = 2π·ħ.
    pub fn planck_h(&self) -> f64 {
        TAU * self.planck_hbar
    }

    /// Electron gyromagnetic ratio γ = g·μB/ħ (rad s⁻¹ T⁻¹).
    pub fn gyromagnetic_ratio(&self) -> f64 {
        self.electron_g_factor * self.bohr_magneton / self.planck_hbar
    }

    /// Frequency-per-field conversion g·μB/h (Hz/T), ≈ 28 GHz/T for electrons.
    pub fn frequency_per_field(&self) -> f64 {
        self.electron_g_factor * self.bohr_magneton / self.planck_h()
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("boltzmann_k", self.boltzmann_k),
            ("planck_hbar", self.planck_hbar),
            ("bohr_magneton", self.bohr_magneton),
            ("vacuum_permeability", self.vacuum_permeability),
            ("electron_g_factor", self.electron_g_factor),
        ];
        for (name, v) in fields {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::Domain(format!(
                    "constant {name} must be strictly positive, got {v}"
                )));
            }
        }
        Ok(())
    }
}
