//! Sweep runners. Points are independent; each derives its own noise stream
//! from (master seed, point index), so results do not depend on the
//! parallel schedule.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::calibration::{excitation_to_field, quantize_excitation};
use crate::error::{Error, Result};
use crate::lockin::lockin_demodulate;

use super::synth::{synthesize_baseband, OperatingPoint};
use super::{AxisKind, Spectrum, Spectrum2d, SpectrumMeta, SweepAxis, SweepContext, SweepPlan};

fn point_seed(master: u64, index: u64) -> u64 {
    // SplitMix64-style mix keeps per-point streams decorrelated.
    let mut z = master ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn run_point(
    ctx: &SweepContext,
    point: &OperatingPoint,
    plan: &SweepPlan,
    index: u64,
) -> Result<(f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(point_seed(plan.rng_seed, index));
    let series = synthesize_baseband(ctx, point, plan.dwell_time, plan.noise_enabled, &mut rng)?;
    let mut lockin = ctx.lockin;
    if ctx.auto_phase {
        // Rotate the mixer so e^{−iφ}·gain is purely imaginary: the I
        // channel then reads the absorption quadrature at every detuning.
        let gain = crate::resonator::perturbation_gain(point.drive_frequency, &ctx.resonator)?;
        lockin.mixer_phase += gain.arg() - std::f64::consts::FRAC_PI_2;
    }
    lockin_demodulate(
        &series,
        ctx.effective_sample_rate(),
        ctx.modulation.frequency,
        &lockin,
    )
}

fn has_sign_change(trace: &[f64]) -> bool {
    trace.windows(2).any(|w| w[0] * w[1] < 0.0)
}

fn meta(ctx: &SweepContext, plan: &SweepPlan, kind: AxisKind, crossing: bool) -> SpectrumMeta {
    let _ = ctx;
    SpectrumMeta {
        axis_kind: kind,
        seed: plan.rng_seed,
        noise_enabled: plan.noise_enabled,
        dwell_time: plan.dwell_time,
        software_version: env!("CARGO_PKG_VERSION").to_string(),
        crossing_detected: crossing,
    }
}

/// Sweep the objective-lens excitation at a fixed drive frequency.
pub fn run_field_sweep(ctx: &SweepContext, plan: &SweepPlan) -> Result<Spectrum> {
    ctx.validate()?;
    plan.validate(&ctx.calibration, &ctx.lockin)?;
    let range = match &plan.axis1 {
        SweepAxis::Excitation(r) => r,
        SweepAxis::Frequency(_) => {
            return Err(Error::Config("field sweep needs an excitation axis".into()))
        }
    };
    let freq = plan
        .fixed_frequency
        .ok_or_else(|| Error::Config("field sweep needs a fixed drive frequency".into()))?;

    let mut axis = Vec::new();
    let mut field_mt = Vec::new();
    for e in range.values() {
        let eq = quantize_excitation(e, &ctx.calibration)?;
        axis.push(eq);
        field_mt.push(excitation_to_field(eq, &ctx.calibration)?);
    }

    let iq: Result<Vec<(f64, f64)>> = field_mt
        .par_iter()
        .enumerate()
        .map(|(idx, &b_mt)| {
            let point = OperatingPoint {
                field: b_mt * 1e-3,
                drive_frequency: freq,
            };
            run_point(ctx, &point, plan, idx as u64)
        })
        .collect();
    let iq = iq?;
    let i: Vec<f64> = iq.iter().map(|p| p.0).collect();
    let q: Vec<f64> = iq.iter().map(|p| p.1).collect();
    let crossing = has_sign_change(&i);
    let n = axis.len();
    Ok(Spectrum {
        axis,
        field_mt,
        frequency_ghz: vec![freq / 1e9; n],
        i,
        q,
        meta: meta(ctx, plan, AxisKind::Excitation, crossing),
    })
}

/// Sweep the drive frequency at a fixed lens excitation.
pub fn run_frequency_sweep(ctx: &SweepContext, plan: &SweepPlan) -> Result<Spectrum> {
    ctx.validate()?;
    plan.validate(&ctx.calibration, &ctx.lockin)?;
    let range = match &plan.axis1 {
        SweepAxis::Frequency(r) => r,
        SweepAxis::Excitation(_) => {
            return Err(Error::Config("frequency sweep needs a frequency axis".into()))
        }
    };
    let excitation = plan
        .fixed_excitation
        .ok_or_else(|| Error::Config("frequency sweep needs a fixed lens excitation".into()))?;
    let excitation = quantize_excitation(excitation, &ctx.calibration)?;
    let b_mt = excitation_to_field(excitation, &ctx.calibration)?;

    let freqs = range.values();
    let iq: Result<Vec<(f64, f64)>> = freqs
        .par_iter()
        .enumerate()
        .map(|(idx, &f)| {
            let point = OperatingPoint {
                field: b_mt * 1e-3,
                drive_frequency: f,
            };
            run_point(ctx, &point, plan, idx as u64)
        })
        .collect();
    let iq = iq?;
    let i: Vec<f64> = iq.iter().map(|p| p.0).collect();
    let q: Vec<f64> = iq.iter().map(|p| p.1).collect();
    let crossing = has_sign_change(&i);
    let n = freqs.len();
    Ok(Spectrum {
        axis: freqs.iter().map(|f| f / 1e9).collect(),
        field_mt: vec![b_mt; n],
        frequency_ghz: freqs.iter().map(|f| f / 1e9).collect(),
        i,
        q,
        meta: meta(ctx, plan, AxisKind::Frequency, crossing),
    })
}

/// Combined excitation × frequency sweep. Rows follow axis1 (excitation),
/// columns axis2 (frequency); point index is row-major so a single-row grid
/// reproduces the 1D frequency sweep bitwise.
pub fn run_2d_sweep(ctx: &SweepContext, plan: &SweepPlan) -> Result<Spectrum2d> {
    ctx.validate()?;
    plan.validate(&ctx.calibration, &ctx.lockin)?;
    let ex_range = match &plan.axis1 {
        SweepAxis::Excitation(r) => r,
        SweepAxis::Frequency(_) => {
            return Err(Error::Config("2D sweep axis1 must be excitation".into()))
        }
    };
    let freq_range = match &plan.axis2 {
        Some(SweepAxis::Frequency(r)) => r,
        _ => return Err(Error::Config("2D sweep axis2 must be frequency".into())),
    };

    let mut excitation = Vec::new();
    let mut field_mt = Vec::new();
    for e in ex_range.values() {
        let eq = quantize_excitation(e, &ctx.calibration)?;
        excitation.push(eq);
        field_mt.push(excitation_to_field(eq, &ctx.calibration)?);
    }
    let freqs = freq_range.values();
    let ncols = freqs.len();

    let iq: Result<Vec<(f64, f64)>> = (0..excitation.len() * ncols)
        .into_par_iter()
        .map(|idx| {
            let row = idx / ncols;
            let col = idx % ncols;
            let point = OperatingPoint {
                field: field_mt[row] * 1e-3,
                drive_frequency: freqs[col],
            };
            run_point(ctx, &point, plan, idx as u64)
        })
        .collect();
    let iq = iq?;

    let mut i = Vec::with_capacity(excitation.len());
    let mut q = Vec::with_capacity(excitation.len());
    for row in 0..excitation.len() {
        let slice = &iq[row * ncols..(row + 1) * ncols];
        i.push(slice.iter().map(|p| p.0).collect::<Vec<f64>>());
        q.push(slice.iter().map(|p| p.1).collect::<Vec<f64>>());
    }
    let crossing = i.iter().any(|row| has_sign_change(row));
    Ok(Spectrum2d {
        excitation,
        frequency_ghz: freqs.iter().map(|f| f / 1e9).collect(),
        i,
        q,
        meta: meta(ctx, plan, AxisKind::Excitation, crossing),
    })
}
