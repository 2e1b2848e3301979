//! Steady-state CW susceptibility: Lorentzian absorption and dispersion
//! versus field, analytic first derivatives, peak-to-peak widths, and
//! inhomogeneous broadening from polepiece field gradients across the sample.

use serde::{Deserialize, Serialize};

use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};

/// Lorentzian line parameters in field units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LineshapeParams {
    /// Resonance field B_res (T).
    pub center_field: f64,
    /// Half width at half maximum ΔB (T).
    pub hwhm: f64,
    /// Peak amplitude χ0 (dimensionless); static-susceptibility prefactors
    /// are folded in by the caller.
    pub amplitude: f64,
}

impl LineshapeParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.hwhm > 0.0) || !self.hwhm.is_finite() {
            return Err(Error::Domain(format!("hwhm must be > 0 T, got {}", self.hwhm)));
        }
        if !self.center_field.is_finite() || !self.amplitude.is_finite() {
            return Err(Error::Domain("lineshape parameters must be finite".into()));
        }
        Ok(())
    }
}

/// Static-field inhomogeneity across the sample, modeled as a uniform offset
/// distribution of full width gradient × sample_extent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FieldInhomogeneity {
    /// Field gradient along the beam axis (T/m).
    pub gradient: f64,
    /// Sample extent along the gradient (m).
    pub sample_extent: f64,
}

impl FieldInhomogeneity {
    pub fn validate(&self) -> Result<()> {
        if self.sample_extent < 0.0 {
            return Err(Error::Domain("sample extent must be >= 0".into()));
        }
        Ok(())
    }

    /// Full width (T) of the uniform field-offset kernel.
    pub fn kernel_width(&self) -> f64 {
        (self.gradient * self.sample_extent).abs()
    }
}

/// Absorptive susceptibility χ''(B) = χ0·ΔB²/((B − B_res)² + ΔB²).
pub fn chi_absorption(b: f64, params: &LineshapeParams) -> f64 {
    let x = b - params.center_field;
    let g2 = params.hwhm * params.hwhm;
    params.amplitude * g2 / (x * x + g2)
}

/// Dispersive susceptibility χ'(B) = χ0·ΔB·(B_res − B)/((B − B_res)² + ΔB²).
pub fn chi_dispersion(b: f64, params: &LineshapeParams) -> f64 {
    let x = b - params.center_field;
    let g = params.hwhm;
    params.amplitude * g * (-x) / (x * x + g * g)
}

/// Analytic derivative dχ''/dB.
pub fn derivative_absorption(b: f64, params: &LineshapeParams) -> f64 {
    let x = b - params.center_field;
    let g2 = params.hwhm * params.hwhm;
    let den = x * x + g2;
    -2.0 * params.amplitude * g2 * x / (den * den)
}

/// Axis selector for peak-to-peak width reporting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WidthAxis {
    Field,
    Frequency,
}

/// Peak-to-peak width 2ΔB/√3 of the derivative line, in field units (T) or
/// converted to frequency (Hz) via g·μB/h.
pub fn pp_linewidth(params: &LineshapeParams, axis: WidthAxis, constants: &PhysicalConstants) -> Result<f64> {
    params.validate()?;
    let field_width = 2.0 * params.hwhm / 3.0f64.sqrt();
    Ok(match axis {
        WidthAxis::Field => field_width,
        WidthAxis::Frequency => field_width * constants.frequency_per_field(),
    })
}

/// Absorption line convolved with the uniform field-offset kernel; closed
/// form via the Lorentzian antiderivative. Zero kernel width reproduces the
/// unbroadened line exactly.
pub fn broadened_absorption(b: f64, params: &LineshapeParams, inhom: &FieldInhomogeneity) -> f64 {
    let w = inhom.kernel_width();
    if w == 0.0 {
        return chi_absorption(b, params);
    }
    let x = b - params.center_field;
    let g = params.hwhm;
    params.amplitude * g / w * (((x + w / 2.0) / g).atan() - ((x - w / 2.0) / g).atan())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn params() -> LineshapeParams {
        LineshapeParams {
            center_field: 0.1677,
            hwhm: 99e-6,
            amplitude: 1.0,
        }
    }

    /// Simpson-rule quadrature on a uniform grid (n intervals, n even).
    fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
        let h = (b - a) / n as f64;
        let mut s = f(a) + f(b);
        for i in 1..n {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            s += w * f(a + i as f64 * h);
        }
        s * h / 3.0
    }

    #[test]
    fn absorption_peak_and_hwhm() {
        let p = params();
        assert_eq!(chi_absorption(p.center_field, &p), p.amplitude);
        for sign in [-1.0, 1.0] {
            let half = chi_absorption(p.center_field + sign * p.hwhm, &p);
            assert!((half - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn absorption_integral_oracle() {
        // Numerical quadrature over ±50ΔB against the analytic area π·χ0·ΔB.
        let p = params();
        let integral = simpson(
            |b| chi_absorption(b, &p),
            p.center_field - 50.0 * p.hwhm,
            p.center_field + 50.0 * p.hwhm,
            200_000,
        );
        let expected = std::f64::consts::PI * p.amplitude * p.hwhm;
        assert!((integral - expected).abs() < 0.02 * expected);
    }

    #[test]
    fn dispersion_odd_with_extrema() {
        let p = params();
        assert_eq!(chi_dispersion(p.center_field, &p), 0.0);
        let lo = chi_dispersion(p.center_field - p.hwhm, &p);
        let hi = chi_dispersion(p.center_field + p.hwhm, &p);
        assert!((lo - 0.5).abs() < 1e-12);
        assert!((hi + 0.5).abs() < 1e-12);
    }

    #[test]
    fn kramers_kronig_consistency() {
        // Discrete Hilbert transform of χ'' reproduces χ'. Principal-value
        // quadrature on a staggered grid over ±500ΔB, compared on ±10ΔB.
        let p = params();
        let h = 0.05 * p.hwhm;
        let half_span = 500.0 * p.hwhm;
        let n = (2.0 * half_span / h) as i64;
        let mut err2 = 0.0;
        let mut ref2 = 0.0;
        for k in -200i64..=200 {
            let x = p.center_field + k as f64 * p.hwhm / 20.0;
            let mut acc = 0.0;
            for j in 0..n {
                // Source samples at cell centers, offset from every target.
                let s = p.center_field - half_span + (j as f64 + 0.5) * h;
                acc += chi_absorption(s, &p) / (s - x);
            }
            let hilbert = acc * h / std::f64::consts::PI;
            let expected = chi_dispersion(x, &p);
            err2 += (hilbert - expected) * (hilbert - expected);
            ref2 += expected * expected;
        }
        assert!(err2.sqrt() < 0.03 * ref2.sqrt(), "rms ratio {}", err2.sqrt() / ref2.sqrt());
    }

    #[test]
    fn derivative_zero_at_center_and_pp_separation() {
        let p = params();
        assert_eq!(derivative_absorption(p.center_field, &p), 0.0);
        // Extrema at B_res ± ΔB/√3: derivative of the derivative vanishes.
        let ext = p.hwhm / 3.0f64.sqrt();
        let eps = p.hwhm * 1e-5;
        for sign in [-1.0, 1.0] {
            let b = p.center_field + sign * ext;
            let slope = (derivative_absorption(b + eps, &p) - derivative_absorption(b - eps, &p))
                / (2.0 * eps);
            let scale = p.amplitude / (p.hwhm * p.hwhm);
            assert!(slope.abs() < 1e-4 * scale);
        }
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let p = params();
        let step = p.hwhm * 1e-4;
        for k in -30..=30 {
            let b = p.center_field + k as f64 * 0.2 * p.hwhm;
            let fd = (chi_absorption(b + step, &p) - chi_absorption(b - step, &p)) / (2.0 * step);
            let an = derivative_absorption(b, &p);
            if an.abs() > 1e-12 * p.amplitude / p.hwhm {
                assert!((fd - an).abs() < 1e-6 * an.abs().max(p.amplitude / p.hwhm * 1e-3));
            }
        }
    }

    #[test]
    fn pp_linewidth_anchors_to_measured_width() {
        // ΔB chosen so the frequency width is 3.2 MHz: ΔB = √3/2·Δν_pp/(gμB/h).
        let c = PhysicalConstants::default();
        let hwhm = 3.0f64.sqrt() / 2.0 * 3.2e6 / c.frequency_per_field();
        assert!((hwhm - 99e-6).abs() < 1e-6, "hwhm {hwhm}");
        let p = LineshapeParams { hwhm, ..params() };
        let w_freq = pp_linewidth(&p, WidthAxis::Frequency, &c).unwrap();
        assert!((w_freq - 3.2e6).abs() < 1e-6 * 3.2e6);
        let w_field = pp_linewidth(&p, WidthAxis::Field, &c).unwrap();
        assert!((w_field - 2.0 * hwhm / 3.0f64.sqrt()).abs() < 1e-15);
        // The two axes are related by the unit conversion identity.
        assert!((w_freq - w_field * c.frequency_per_field()).abs() < 1e-9);
    }

    #[test]
    fn pp_linewidth_linear_in_hwhm() {
        let c = PhysicalConstants::default();
        let p = params();
        let doubled = LineshapeParams { hwhm: 2.0 * p.hwhm, ..p };
        let w1 = pp_linewidth(&p, WidthAxis::Field, &c).unwrap();
        let w2 = pp_linewidth(&doubled, WidthAxis::Field, &c).unwrap();
        assert!((w2 - 2.0 * w1).abs() < 1e-15);
    }

    #[test]
    fn broadening_zero_extent_is_identity() {
        let p = params();
        let inhom = FieldInhomogeneity { gradient: 5.0, sample_extent: 0.0 };
        for k in -20..=20 {
            let b = p.center_field + k as f64 * 0.3 * p.hwhm;
            assert_eq!(broadened_absorption(b, &p, &inhom), chi_absorption(b, &p));
        }
    }

    #[test]
    fn broadening_lowers_peak() {
        let p = params();
        let inhom = FieldInhomogeneity { gradient: 4.0 * p.hwhm, sample_extent: 1.0 };
        let peak = broadened_absorption(p.center_field, &p, &inhom);
        assert!(peak < p.amplitude);
    }

    #[test]
    fn broadening_matches_numerical_convolution() {
        // Dense-grid convolution of χ'' with the uniform kernel, then a
        // numerical extremum search on the derivative, against the closed form.
        let p = params();
        let w = 2.0 * p.hwhm;
        let inhom = FieldInhomogeneity { gradient: w, sample_extent: 1.0 };
        // Pointwise agreement with brute-force kernel quadrature.
        for k in -15..=15 {
            let b = p.center_field + k as f64 * 0.4 * p.hwhm;
            let brute = simpson(|u| chi_absorption(b - u, &p), -w / 2.0, w / 2.0, 4000) / w;
            let closed = broadened_absorption(b, &p, &inhom);
            assert!((brute - closed).abs() < 1e-6 * p.amplitude);
        }
        // Peak-to-peak width of the broadened derivative via grid search.
        let grid_pp = |f: &dyn Fn(f64) -> f64| {
            let n = 40_000;
            let span = 10.0 * p.hwhm;
            let h = 2.0 * span / n as f64;
            let mut best_max = (f64::MIN, 0.0);
            let mut best_min = (f64::MAX, 0.0);
            for i in 0..=n {
                let b = p.center_field - span + i as f64 * h;
                let d = (f(b + h / 2.0) - f(b - h / 2.0)) / h;
                if d > best_max.0 {
                    best_max = (d, b);
                }
                if d < best_min.0 {
                    best_min = (d, b);
                }
            }
            (best_min.1 - best_max.1).abs()
        };
        let pp_closed = grid_pp(&|b| broadened_absorption(b, &p, &inhom));
        let pp_brute = grid_pp(&|b| {
            simpson(|u| chi_absorption(b - u, &p), -w / 2.0, w / 2.0, 2000) / w
        });
        assert!((pp_closed - pp_brute).abs() < 0.01 * pp_brute);
    }

    #[test]
    fn broadening_preserves_integrated_intensity() {
        let p = params();
        let inhom = FieldInhomogeneity { gradient: 3.0 * p.hwhm, sample_extent: 1.0 };
        let a = p.center_field - 500.0 * p.hwhm;
        let b = p.center_field + 500.0 * p.hwhm;
        let plain = simpson(|x| chi_absorption(x, &p), a, b, 400_000);
        let broad = simpson(|x| broadened_absorption(x, &p, &inhom), a, b, 400_000);
        assert!((plain - broad).abs() < 1e-3 * plain);
    }

    #[test]
    fn broadened_pp_width_converges_to_lorentzian_limit() {
        let p = params();
        let target = 2.0 * p.hwhm / 3.0f64.sqrt();
        let mut prev_err = f64::MAX;
        for scale in [1e-1, 1e-2, 1e-3] {
            let inhom = FieldInhomogeneity { gradient: scale * p.hwhm, sample_extent: 1.0 };
            // Fine grid extremum search on the analytic broadened line.
            let n = 200_000usize;
            let span = 3.0 * p.hwhm;
            let h = 2.0 * span / n as f64;
            let mut bmax = (f64::MIN, 0.0);
            let mut bmin = (f64::MAX, 0.0);
            for i in 0..=n {
                let b = p.center_field - span + i as f64 * h;
                let d = (broadened_absorption(b + h / 2.0, &p, &inhom)
                    - broadened_absorption(b - h / 2.0, &p, &inhom))
                    / h;
                if d > bmax.0 {
                    bmax = (d, b);
                }
                if d < bmin.0 {
                    bmin = (d, b);
                }
            }
            let pp = (bmin.1 - bmax.1).abs();
            let err = (pp - target).abs() / target;
            assert!(err <= prev_err + 1e-3, "width not converging: {err} vs {prev_err}");
            prev_err = err;
        }
        assert!(prev_err < 5e-3);
    }

    #[test]
    fn derivative_integrates_back_to_line() {
        let p = params();
        let a = p.center_field - 30.0 * p.hwhm;
        for k in [-5.0f64, -1.0, 0.0, 1.5, 8.0] {
            let b = p.center_field + k * p.hwhm;
            let integral = simpson(|x| derivative_absorption(x, &p), a, b, 100_000);
            let expected = chi_absorption(b, &p) - chi_absorption(a, &p);
            assert!((integral - expected).abs() < 1e-4 * p.amplitude);
        }
    }

    proptest! {
        #[test]
        fn symmetry_properties(offset in -20.0f64..20.0) {
            let p = params();
            let x = offset * p.hwhm;
            let plus = chi_absorption(p.center_field + x, &p);
            let minus = chi_absorption(p.center_field - x, &p);
            prop_assert!(plus >= 0.0);
            prop_assert!(plus <= p.amplitude);
            prop_assert!((plus - minus).abs() <= 1e-12 * p.amplitude);
            let dp = chi_dispersion(p.center_field + x, &p);
            let dm = chi_dispersion(p.center_field - x, &p);
            prop_assert!((dp + dm).abs() <= 1e-12 * p.amplitude);
        }

        #[test]
        fn broadening_monotone_in_extent(extent in 0.0f64..8.0) {
            let p = params();
            let narrow = FieldInhomogeneity { gradient: p.hwhm, sample_extent: extent };
            let wide = FieldInhomogeneity { gradient: p.hwhm, sample_extent: extent + 1.0 };
            let peak_narrow = broadened_absorption(p.center_field, &p, &narrow);
            let peak_wide = broadened_absorption(p.center_field, &p, &wide);
            prop_assert!(peak_wide <= peak_narrow + 1e-12);
        }
    }
}
