//! Trace analysis: SNR measurement, zero-crossing location, and peak-to-peak
//! linewidth extraction.

use crate::error::{Error, Result};

use super::Spectrum;

fn window_indices(axis: &[f64], window: (f64, f64)) -> Vec<usize> {
    let (lo, hi) = if window.0 <= window.1 {
        (window.0, window.1)
    } else {
        (window.1, window.0)
    };
    axis.iter()
        .enumerate()
        .filter(|(_, &v)| v >= lo && v <= hi)
        .map(|(k, _)| k)
        .collect()
}

/// Peak-to-peak amplitude of I inside the signal window divided by the RMS
/// of I inside the noise window. A zero-noise window yields +infinity.
pub fn measure_snr(
    spectrum: &Spectrum,
    signal_window: (f64, f64),
    noise_window: (f64, f64),
) -> Result<f64> {
    let sig = window_indices(&spectrum.axis, signal_window);
    let noise = window_indices(&spectrum.axis, noise_window);
    if sig.is_empty() || noise.is_empty() {
        return Err(Error::Config("SNR windows must each contain at least one point".into()));
    }
    let s_hi = signal_window.0.max(signal_window.1);
    let s_lo = signal_window.0.min(signal_window.1);
    let n_hi = noise_window.0.max(noise_window.1);
    let n_lo = noise_window.0.min(noise_window.1);
    if s_hi > n_lo && n_hi > s_lo {
        return Err(Error::Config("SNR signal and noise windows must be disjoint".into()));
    }

    let mut pp_max = f64::MIN;
    let mut pp_min = f64::MAX;
    for &k in &sig {
        pp_max = pp_max.max(spectrum.i[k]);
        pp_min = pp_min.min(spectrum.i[k]);
    }
    let pp = pp_max - pp_min;
    let rms = (noise.iter().map(|&k| spectrum.i[k] * spectrum.i[k]).sum::<f64>()
        / noise.len() as f64)
        .sqrt();
    if rms == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(pp / rms)
}

/// Parabolic-vertex refinement of an extremum at sample `k`; falls back to
/// the grid position at the trace edges or on a degenerate plateau.
fn refine_extremum(axis: &[f64], trace: &[f64], k: usize) -> f64 {
    if k == 0 || k + 1 >= trace.len() {
        return axis[k];
    }
    let denom = trace[k - 1] - 2.0 * trace[k] + trace[k + 1];
    if denom == 0.0 {
        return axis[k];
    }
    let delta = 0.5 * (trace[k - 1] - trace[k + 1]) / denom;
    let step = (axis[k + 1] - axis[k - 1]) / 2.0;
    axis[k] + delta.clamp(-1.0, 1.0) * step
}

/// Index of the global maximum / minimum of I; plateau ties break to the
/// first index.
fn extremum_indices(trace: &[f64]) -> (usize, usize) {
    let mut kmax = 0;
    let mut kmin = 0;
    for (k, &v) in trace.iter().enumerate() {
        if v > trace[kmax] {
            kmax = k;
        }
        if v < trace[kmin] {
            kmin = k;
        }
    }
    (kmax, kmin)
}

/// Axis distance between the minimum and maximum of the I trace around the
/// zero crossing of a derivative line, with sub-step parabolic refinement.
pub fn extract_pp_linewidth(spectrum: &Spectrum) -> Result<f64> {
    let trace = &spectrum.i;
    if trace.len() < 3 {
        return Err(Error::NoLineFound("trace too short for extremum extraction".into()));
    }
    let (kmax, kmin) = extremum_indices(trace);
    if kmax == kmin || trace[kmax] <= 0.0 || trace[kmin] >= 0.0 {
        return Err(Error::NoLineFound(
            "trace has no opposite-signed extremum pair".into(),
        ));
    }
    let lo = kmax.min(kmin);
    let hi = kmax.max(kmin);
    if !trace[lo..=hi].windows(2).any(|w| w[0] * w[1] <= 0.0) {
        return Err(Error::NoLineFound(
            "no zero crossing between the extremum pair".into(),
        ));
    }
    let a = refine_extremum(&spectrum.axis, trace, kmax);
    let b = refine_extremum(&spectrum.axis, trace, kmin);
    Ok((a - b).abs())
}

/// Axis position where the I trace crosses zero between its global extrema,
/// by linear interpolation. `None` when the trace never changes sign there.
pub fn find_zero_crossing(axis: &[f64], trace: &[f64]) -> Option<f64> {
    if trace.len() < 2 {
        return None;
    }
    let (kmax, kmin) = extremum_indices(trace);
    let (lo, hi) = (kmax.min(kmin), kmax.max(kmin));
    let (lo, hi) = if lo == hi { (0, trace.len() - 1) } else { (lo, hi) };
    for k in lo..hi {
        let (a, b) = (trace[k], trace[k + 1]);
        if a == 0.0 {
            return Some(axis[k]);
        }
        if a * b < 0.0 {
            let frac = a / (a - b);
            return Some(axis[k] + frac * (axis[k + 1] - axis[k]));
        }
    }
    None
}
