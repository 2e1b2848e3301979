//! Spin-ensemble physics: Zeeman splitting, the resonance condition, Curie
//! magnetization, Boltzmann polarization, the unitary coil field, and Johnson
//! noise density. All quantities are SI; unit conversions happen only at
//! interface boundaries.

use serde::{Deserialize, Serialize};

use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};

/// Paramagnetic sample description.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpinSystem {
    /// Spin density N (spins/m³).
    pub spin_density: f64,
    /// Sample volume V_s (m³).
    pub volume: f64,
    /// Sample temperature (K).
    pub temperature: f64,
    /// Landé g-factor of the spins.
    pub g_factor: f64,
    /// Half width at half maximum of the absorption line (T).
    pub hwhm_linewidth: f64,
}

impl SpinSystem {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("spin_density", self.spin_density),
            ("volume", self.volume),
            ("temperature", self.temperature),
            ("g_factor", self.g_factor),
            ("hwhm_linewidth", self.hwhm_linewidth),
        ];
        for (name, v) in fields {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::Domain(format!(
                    "spin system field {name} must be strictly positive, got {v}"
                )));
            }
        }
        if !(self.spin_density * self.volume).is_finite() {
            return Err(Error::Domain("total spin count is not finite".into()));
        }
        Ok(())
    }

    /// Total number of spins N·V_s in the sample.
    pub fn total_spins(&self) -> f64 {
        self.spin_density * self.volume
    }
}

fn check_field(b0: f64) -> Result<()> {
    if b0 < 0.0 || !b0.is_finite() {
        return Err(Error::Domain(format!("bias field must be >= 0 T, got {b0}")));
    }
    Ok(())
}

fn check_temperature(t: f64) -> Result<()> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::Domain(format!("temperature must be > 0 K, got {t}")));
    }
    Ok(())
}

/// ESR transition frequency ν = g·μB·B0/h (Hz) for a bias field B0 (T).
pub fn resonance_frequency(b0: f64, constants: &PhysicalConstants) -> Result<f64> {
    check_field(b0)?;
    Ok(constants.frequency_per_field() * b0)
}

/// Bias field B0 (T) whose resonance frequency equals `freq` (Hz).
pub fn resonance_field(freq: f64, constants: &PhysicalConstants) -> Result<f64> {
    if freq < 0.0 || !freq.is_finite() {
        return Err(Error::Domain(format!("frequency must be >= 0 Hz, got {freq}")));
    }
    Ok(freq / constants.frequency_per_field())
}

/// Zeeman energy separation ΔE = g·μB·B0 (J).
pub fn zeeman_splitting(b0: f64, constants: &PhysicalConstants) -> Result<f64> {
    check_field(b0)?;
    Ok(constants.electron_g_factor * constants.bohr_magneton * b0)
}

/// Equilibrium Curie magnetization M0 = N·γ²·ħ²·B0/(4·k_B·T) (A/m).
///
/// γ is built from the spin system's own g-factor.
pub fn curie_magnetization(sys: &SpinSystem, b0: f64, constants: &PhysicalConstants) -> Result<f64> {
    sys.validate()?;
    check_field(b0)?;
    check_temperature(sys.temperature)?;
    let gamma = sys.g_factor * constants.bohr_magneton / constants.planck_hbar;
    let num = sys.spin_density * gamma * gamma * constants.planck_hbar * constants.planck_hbar * b0;
    Ok(num / (4.0 * constants.boltzmann_k * sys.temperature))
}

/// Thermal polarization p = tanh(g·μB·B0/(2·k_B·T)) of a spin-1/2 ensemble.
pub fn boltzmann_polarization(b0: f64, temperature: f64, constants: &PhysicalConstants) -> Result<f64> {
    check_field(b0)?;
    check_temperature(temperature)?;
    let arg = constants.electron_g_factor * constants.bohr_magneton * b0
        / (2.0 * constants.boltzmann_k * temperature);
    Ok(arg.tanh())
}

/// Unitary coil field B_u ≈ μ0/d (T/A) of a one-turn microcoil of diameter d (m).
pub fn unitary_field(coil_diameter: f64, constants: &PhysicalConstants) -> Result<f64> {
    if !(coil_diameter > 0.0) || !coil_diameter.is_finite() {
        return Err(Error::Domain(format!(
            "coil diameter must be > 0 m, got {coil_diameter}"
        )));
    }
    Ok(constants.vacuum_permeability / coil_diameter)
}

/// Johnson noise voltage density √(4·k_B·T·R) (V/√Hz).
pub fn johnson_noise_density(resistance: f64, temperature: f64, constants: &PhysicalConstants) -> Result<f64> {
    if resistance < 0.0 || !resistance.is_finite() {
        return Err(Error::Domain(format!("resistance must be >= 0 Ω, got {resistance}")));
    }
    check_temperature(temperature)?;
    Ok((4.0 * constants.boltzmann_k * temperature * resistance).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::{BOHR_MAGNETON, BOLTZMANN, HBAR, VACUUM_PERMEABILITY};

    fn c() -> PhysicalConstants {
        PhysicalConstants::default()
    }

    fn bdpa() -> SpinSystem {
        SpinSystem {
            spin_density: 1.5e27,
            volume: 3.375e-12,
            temperature: 300.0,
            g_factor: PhysicalConstants::default().electron_g_factor,
            hwhm_linewidth: 1e-4,
        }
    }

    #[test]
    fn resonance_at_160_mt_near_4p5_ghz() {
        let f = resonance_frequency(0.160, &c()).unwrap();
        assert!((f - 4.48e9).abs() < 0.02e9, "got {f}");
    }

    #[test]
    fn resonance_at_1p8_t_near_50p4_ghz() {
        let f = resonance_frequency(1.8, &c()).unwrap();
        assert!((f - 50.4e9).abs() < 0.1e9, "got {f}");
    }

    #[test]
    fn resonance_zero_field() {
        assert_eq!(resonance_frequency(0.0, &c()).unwrap(), 0.0);
    }

    #[test]
    fn resonance_negative_field_rejected() {
        assert!(resonance_frequency(-0.1, &c()).is_err());
    }

    #[test]
    fn resonance_is_linear() {
        let consts = c();
        let f1 = resonance_frequency(0.3, &consts).unwrap();
        for a in [0.0, 0.5, 1.0, 2.0, 7.5] {
            let fa = resonance_frequency(a * 0.3, &consts).unwrap();
            assert!((fa - a * f1).abs() <= 1e-9 * f1.max(fa));
        }
    }

    #[test]
    fn zeeman_equals_h_times_frequency() {
        let consts = c();
        for b0 in [0.1, 0.5, 1.8] {
            let de = zeeman_splitting(b0, &consts).unwrap();
            let hf = consts.planck_h() * resonance_frequency(b0, &consts).unwrap();
            assert!((de - hf).abs() <= 1e-15 * de.abs());
        }
    }

    #[test]
    fn zeeman_one_tesla_g2() {
        // Independent oracle: direct product of CODATA constants at g = 2.
        let consts = PhysicalConstants::with_g_factor(2.0);
        let de = zeeman_splitting(1.0, &consts).unwrap();
        let expected = 2.0 * BOHR_MAGNETON;
        assert!((de - expected).abs() < 1e-12 * expected);
        assert!((de - 1.855e-23).abs() < 0.001e-23);
    }

    #[test]
    fn curie_magnetization_bdpa_oracle() {
        // Hand evaluation with CODATA constants: γ = g·μB/ħ, then
        // M0 = N·γ²·ħ²·B0/(4·k_B·T).
        let sys = bdpa();
        let gamma = sys.g_factor * BOHR_MAGNETON / HBAR;
        let expected = 1.5e27 * gamma * gamma * HBAR * HBAR * 0.167 / (4.0 * BOLTZMANN * 300.0);
        let m0 = curie_magnetization(&sys, 0.167, &c()).unwrap();
        assert!((m0 - expected).abs() < 1e-9 * expected);
        assert!((m0 - 5.2).abs() < 0.1, "got {m0}");
    }

    #[test]
    fn curie_zero_field() {
        assert_eq!(curie_magnetization(&bdpa(), 0.0, &c()).unwrap(), 0.0);
    }

    #[test]
    fn curie_inverse_temperature_law() {
        let consts = c();
        let warm = bdpa();
        let mut cold = warm;
        cold.temperature = warm.temperature / 2.0;
        let m_warm = curie_magnetization(&warm, 0.3, &consts).unwrap();
        let m_cold = curie_magnetization(&cold, 0.3, &consts).unwrap();
        assert!((m_cold - 2.0 * m_warm).abs() < 1e-9 * m_cold);
    }

    #[test]
    fn curie_product_with_temperature_constant() {
        let consts = c();
        let mut sys = bdpa();
        let mut products = Vec::new();
        for t in [4.0, 77.0, 300.0, 900.0] {
            sys.temperature = t;
            products.push(curie_magnetization(&sys, 0.3, &consts).unwrap() * t);
        }
        for p in &products {
            assert!((p - products[0]).abs() < 1e-12 * products[0]);
        }
    }

    #[test]
    fn curie_nonpositive_temperature_rejected() {
        let mut sys = bdpa();
        sys.temperature = 0.0;
        assert!(curie_magnetization(&sys, 0.3, &c()).is_err());
    }

    #[test]
    fn polarization_room_temperature_oracle() {
        // tanh small-argument evaluation at B0 = 0.17 T, T = 300 K.
        let p = boltzmann_polarization(0.17, 300.0, &c()).unwrap();
        assert!((p - 3.8e-4).abs() < 0.1e-4, "got {p}");
    }

    #[test]
    fn polarization_cryogenic_high_field() {
        // tanh oracle at 1.8 T / 4 K lands near 0.29, not the quoted ~35%.
        let p = boltzmann_polarization(1.8, 4.0, &c()).unwrap();
        assert!(p > 0.28 && p < 0.31, "got {p}");
    }

    #[test]
    fn polarization_zero_field() {
        assert_eq!(boltzmann_polarization(0.0, 300.0, &c()).unwrap(), 0.0);
    }

    #[test]
    fn polarization_monotone_and_bounded() {
        let consts = c();
        let mut prev = -1.0;
        for b0 in [0.0, 0.1, 0.5, 1.0, 2.0, 10.0, 100.0] {
            let p = boltzmann_polarization(b0, 4.0, &consts).unwrap();
            assert!(p >= prev);
            assert!((0.0..1.0).contains(&p));
            prev = p;
        }
        let warm = boltzmann_polarization(1.0, 300.0, &consts).unwrap();
        let cold = boltzmann_polarization(1.0, 4.0, &consts).unwrap();
        assert!(cold > warm);
    }

    #[test]
    fn polarization_matches_linearization_for_small_argument() {
        let consts = c();
        for b0 in [1e-4, 1e-3, 5e-3] {
            let lin = consts.electron_g_factor * consts.bohr_magneton * b0
                / (2.0 * consts.boltzmann_k * 300.0);
            assert!(lin < 1e-2);
            let p = boltzmann_polarization(b0, 300.0, &consts).unwrap();
            assert!((p - lin).abs() < 1e-4 * lin);
        }
    }

    #[test]
    fn unitary_field_one_mm_oracle() {
        let bu = unitary_field(1e-3, &c()).unwrap();
        let expected = VACUUM_PERMEABILITY / 1e-3;
        assert!((bu - expected).abs() < 1e-15);
        assert!((bu - 1.2566e-3).abs() < 1e-7);
    }

    #[test]
    fn unitary_field_inverse_proportional() {
        let consts = c();
        let b1 = unitary_field(1e-3, &consts).unwrap();
        let b2 = unitary_field(2e-3, &consts).unwrap();
        assert!((b1 - 2.0 * b2).abs() < 1e-12 * b1);
    }

    #[test]
    fn unitary_field_zero_diameter_rejected() {
        assert!(unitary_field(0.0, &c()).is_err());
    }

    #[test]
    fn johnson_density_oracle() {
        let n = johnson_noise_density(1.0, 300.0, &c()).unwrap();
        let expected = (4.0 * BOLTZMANN * 300.0).sqrt();
        assert!((n - expected).abs() < 1e-15);
        assert!((n - 1.287e-10).abs() < 0.002e-10);
    }

    #[test]
    fn johnson_density_zero_resistance() {
        assert_eq!(johnson_noise_density(0.0, 300.0, &c()).unwrap(), 0.0);
    }

    #[test]
    fn johnson_density_sqrt_temperature_scaling() {
        let consts = c();
        let n1 = johnson_noise_density(2.0, 100.0, &consts).unwrap();
        let n4 = johnson_noise_density(2.0, 400.0, &consts).unwrap();
        assert!((n4 - 2.0 * n1).abs() < 1e-12 * n4);
    }
}
