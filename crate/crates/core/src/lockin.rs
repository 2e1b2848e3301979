//! Dual-phase lock-in demodulation of a complex baseband record.
//!
//! RMS convention: a pure input A·cos(2π·f_mod·t) with zero phases yields
//! I = A/√2, Q = 0.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Lock-in amplifier settings; the output filter is first order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct LockInSettings {
    /// Output filter time constant τ (s).
    pub time_constant: f64,
    /// Phase of the modulation reference (rad).
    pub reference_phase: f64,
    /// Microwave mixer phase selecting absorption vs dispersion (rad).
    pub mixer_phase: f64,
}

impl Default for LockInSettings {
    fn default() -> Self {
        Self {
            time_constant: 0.100,
            reference_phase: 0.0,
            mixer_phase: 0.0,
        }
    }
}

impl LockInSettings {
    pub fn validate(&self) -> Result<()> {
        if !(self.time_constant > 0.0) || !self.time_constant.is_finite() {
            return Err(Error::Domain(format!(
                "lock-in time constant must be > 0 s, got {}",
                self.time_constant
            )));
        }
        Ok(())
    }

    /// Equivalent noise bandwidth 1/(4τ) of the first-order filter.
    pub fn noise_bandwidth(&self) -> f64 {
        1.0 / (4.0 * self.time_constant)
    }
}

/// Demodulate a complex baseband record at `reference_frequency`, returning
/// the steady-state (I, Q) pair in volts.
///
/// The mixer phase selects which quadrature of the record reaches the
/// lock-in input. The output is the mean of the filtered samples over the
/// final reference period: one period ≪ τ leaves the 1/(4τ) output noise
/// bandwidth of the first-order filter intact while cancelling the residual
/// reference-frequency ripple that a single output sample would carry.
pub fn lockin_demodulate(
    series: &[Complex64],
    sample_rate: f64,
    reference_frequency: f64,
    settings: &LockInSettings,
) -> Result<(f64, f64)> {
    settings.validate()?;
    if !(sample_rate > 0.0) || !(reference_frequency > 0.0) {
        return Err(Error::Config(
            "sample rate and reference frequency must be > 0".into(),
        ));
    }
    let tau = settings.time_constant;
    let settle = (5.0 * tau * sample_rate).ceil() as usize;
    if series.len() < settle {
        return Err(Error::Config(format!(
            "record of {} samples is shorter than the 5τ settling guard ({} samples)",
            series.len(),
            settle
        )));
    }

    let dt = 1.0 / sample_rate;
    let alpha = 1.0 - (-dt / tau).exp();
    let mixer = Complex64::from_polar(1.0, -settings.mixer_phase);
    // Conjugate reference phasor; Re → I mix, Im → Q mix.
    let step = Complex64::from_polar(1.0, -std::f64::consts::TAU * reference_frequency * dt);
    let mut reference = Complex64::from_polar(std::f64::consts::SQRT_2, -settings.reference_phase);

    let window = ((sample_rate / reference_frequency).round() as usize)
        .max(1)
        .min(series.len());
    let tail_start = series.len() - window;
    let mut filt = Complex64::new(0.0, 0.0);
    let mut acc = Complex64::new(0.0, 0.0);
    for (n, v) in series.iter().enumerate() {
        let x = (v * mixer).re;
        let mixed = reference * x;
        filt += alpha * (mixed - filt);
        if n >= tail_start {
            acc += filt;
        }
        reference *= step;
        if n & 0xffff == 0xffff {
            reference = reference / reference.norm() * std::f64::consts::SQRT_2;
        }
    }
    let out = acc / window as f64;
    Ok((out.re, out.im))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::TAU;

    const F_MOD: f64 = 101e3;
    const FS: f64 = 32.0 * F_MOD;

    fn cosine_record(amplitude: f64, phase: f64, duration: f64) -> Vec<Complex64> {
        let n = (duration * FS).ceil() as usize;
        (0..n)
            .map(|k| {
                let t = k as f64 / FS;
                Complex64::new(amplitude * (TAU * F_MOD * t + phase).cos(), 0.0)
            })
            .collect()
    }

    #[test]
    fn zero_input_zero_output() {
        let series = vec![Complex64::new(0.0, 0.0); (0.06 * FS) as usize];
        let settings = LockInSettings { time_constant: 0.010, ..Default::default() };
        let (i, q) = lockin_demodulate(&series, FS, F_MOD, &settings).unwrap();
        assert_eq!(i, 0.0);
        assert_eq!(q, 0.0);
    }

    #[test]
    fn sinusoid_closed_form() {
        // A·cos(2πft + φ) → (A/√2·cos φ, A/√2·sin φ) after settling.
        let settings = LockInSettings { time_constant: 0.005, ..Default::default() };
        for phase in [0.0, 0.3, -1.1, std::f64::consts::FRAC_PI_2] {
            let series = cosine_record(2.0, phase, 0.08);
            let (i, q) = lockin_demodulate(&series, FS, F_MOD, &settings).unwrap();
            let scale = 2.0 / std::f64::consts::SQRT_2;
            assert!((i - scale * phase.cos()).abs() < 1e-3 * scale, "phase {phase}: I {i}");
            assert!((q - scale * phase.sin()).abs() < 1e-3 * scale, "phase {phase}: Q {q}");
        }
    }

    #[test]
    fn reference_phase_rotation_moves_signal_between_channels() {
        let settings = LockInSettings {
            time_constant: 0.005,
            reference_phase: std::f64::consts::FRAC_PI_2,
            mixer_phase: 0.0,
        };
        let series = cosine_record(1.0, 0.0, 0.08);
        let (i, q) = lockin_demodulate(&series, FS, F_MOD, &settings).unwrap();
        assert!(i.abs() < 0.01 * q.abs());
        assert!((q.abs() - 1.0 / std::f64::consts::SQRT_2).abs() < 1e-3);
    }

    #[test]
    fn mixer_phase_selects_record_quadrature() {
        let duration = 0.08;
        let n = (duration * FS).ceil() as usize;
        let series: Vec<Complex64> = (0..n)
            .map(|k| {
                let t = k as f64 / FS;
                Complex64::new(0.0, (TAU * F_MOD * t).cos())
            })
            .collect();
        let base = LockInSettings { time_constant: 0.005, ..Default::default() };
        let (i0, _) = lockin_demodulate(&series, FS, F_MOD, &base).unwrap();
        assert!(i0.abs() < 1e-6);
        let rotated = LockInSettings { mixer_phase: std::f64::consts::FRAC_PI_2, ..base };
        let (i1, _) = lockin_demodulate(&series, FS, F_MOD, &rotated).unwrap();
        assert!((i1 - 1.0 / std::f64::consts::SQRT_2).abs() < 1e-3);
    }

    #[test]
    fn short_record_rejected() {
        let settings = LockInSettings { time_constant: 0.010, ..Default::default() };
        let series = vec![Complex64::new(1.0, 0.0); (0.02 * FS) as usize];
        assert!(lockin_demodulate(&series, FS, F_MOD, &settings).is_err());
    }

    #[test]
    fn noise_bandwidth_is_quarter_inverse_tau() {
        let settings = LockInSettings { time_constant: 0.100, ..Default::default() };
        assert_eq!(settings.noise_bandwidth(), 2.5);
    }
}
