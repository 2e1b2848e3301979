//! Baseband synthesis of the reflected microwave envelope at one operating
//! point. The GHz carrier is represented as a complex envelope, so the sample
//! rate only needs to resolve the modulation frequency.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::Result;
use crate::lineshape::{chi_absorption, chi_dispersion, LineshapeParams};
use crate::physics::curie_magnetization;
use crate::resonator::{perturbation_gain, reflection_coefficient};

use super::SweepContext;

/// One sweep point: static field and microwave drive frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatingPoint {
    /// Static bias field B0 (T).
    pub field: f64,
    /// Drive frequency (Hz).
    pub drive_frequency: f64,
}

/// Lorentzian parameters seen by the drive at this operating point: the line
/// is centered at the resonance field of the drive frequency and scaled by
/// the static susceptibility of the sample.
pub(super) fn point_lineshape(ctx: &SweepContext, point: &OperatingPoint) -> Result<LineshapeParams> {
    let sys = &ctx.spin_system;
    let freq_per_field =
        sys.g_factor * ctx.constants.bohr_magneton / ctx.constants.planck_h();
    let center = point.drive_frequency / freq_per_field;
    let m0 = curie_magnetization(sys, point.field, &ctx.constants)?;
    let amplitude = ctx.constants.vacuum_permeability * m0 / (2.0 * sys.hwhm_linewidth);
    Ok(LineshapeParams {
        center_field: center,
        hwhm: sys.hwhm_linewidth,
        amplitude,
    })
}

/// Incident-wave voltage amplitude on the reference impedance.
pub(super) fn drive_voltage(ctx: &SweepContext) -> f64 {
    (2.0 * ctx.resonator.reference_impedance * ctx.drive_power).sqrt()
}

/// Synthesize the complex baseband envelope V(t) at one operating point:
/// carrier reflection plus the susceptibility perturbation of the modulated
/// line, plus additive complex white Gaussian noise of the configured
/// density. Deterministic for a given RNG state.
pub fn synthesize_baseband<R: Rng>(
    ctx: &SweepContext,
    point: &OperatingPoint,
    duration: f64,
    noise_enabled: bool,
    rng: &mut R,
) -> Result<Vec<Complex64>> {
    ctx.validate()?;
    let fs = ctx.effective_sample_rate();
    let n = (duration * fs).ceil() as usize;

    let gamma = reflection_coefficient(point.drive_frequency, &ctx.resonator)?;
    let gain = perturbation_gain(point.drive_frequency, &ctx.resonator)?;
    let line = point_lineshape(ctx, point)?;
    let vd = drive_voltage(ctx);
    let carrier = vd * gamma + Complex64::new(ctx.dc_offset, 0.0);
    let scaled_gain = vd * gain;

    let bm = ctx.modulation.amplitude;
    let dt = 1.0 / fs;
    let step = Complex64::from_polar(1.0, std::f64::consts::TAU * ctx.modulation.frequency * dt);
    let mut phasor = Complex64::from_polar(1.0, ctx.modulation.phase);
    // Per-quadrature sample deviation for a one-sided density (V/√Hz).
    let sigma = if noise_enabled {
        ctx.noise_density * (fs / 2.0).sqrt()
    } else {
        0.0
    };

    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let b = point.field + bm * phasor.re;
        let chi = Complex64::new(chi_dispersion(b, &line), chi_absorption(b, &line));
        let mut v = carrier + scaled_gain * chi;
        if sigma > 0.0 {
            let nr: f64 = StandardNormal.sample(rng);
            let ni: f64 = StandardNormal.sample(rng);
            v += Complex64::new(sigma * nr, sigma * ni);
        }
        out.push(v);
        phasor *= step;
        if k & 0xffff == 0xffff {
            phasor /= phasor.norm();
        }
    }
    Ok(out)
}
