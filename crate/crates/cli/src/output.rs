//! CSV and manifest writers. Numbers are printed with Rust's shortest
//! round-trip formatting, so files are bitwise reproducible and parse back
//! to the exact binary values.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use esr_core::{Spectrum, Spectrum2d};

use crate::config::RunConfig;
use crate::error::{CliError, Result};

/// Reproduction record written next to every CSV: the fully resolved
/// configuration (with command-line overrides applied) plus provenance.
#[derive(Debug, Clone, Serialize)]
pub struct Manifest<'a> {
    /// Subcommand that produced the artifact.
    pub command: &'a str,
    /// Bundled preset name, when one was used.
    pub preset: Option<&'a str>,
    /// Effective master seed after the `--seed` override.
    pub seed: u64,
    /// Effective noise switch after the `--no-noise` override.
    pub noise_enabled: bool,
    pub software_version: &'a str,
    /// Resolved configuration; re-running it reproduces the CSV exactly.
    pub config: &'a RunConfig,
}

pub fn software_version() -> &'static str {
    env!("CARGO_PKG_VERSION")
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents)
        .map_err(|e| CliError::Runtime(format!("cannot write {}: {e}", path.display())))
}

/// Write `name` under `out`, creating the directory if needed.
pub fn write_artifact(out: &Path, name: &str, contents: &str) -> Result<PathBuf> {
    fs::create_dir_all(out)
        .map_err(|e| CliError::Runtime(format!("cannot create {}: {e}", out.display())))?;
    let path = out.join(name);
    write_file(&path, contents)?;
    Ok(path)
}

pub fn manifest_toml(manifest: &Manifest) -> Result<String> {
    toml::to_string_pretty(manifest)
        .map_err(|e| CliError::Runtime(format!("manifest serialization error: {e}")))
}

/// CSV of a 1D sweep: `axis1,B0_mT,freq_GHz,I_V,Q_V`.
pub fn spectrum_csv(spec: &Spectrum) -> String {
    let mut s = String::from("axis1,B0_mT,freq_GHz,I_V,Q_V\n");
    for k in 0..spec.axis.len() {
        s.push_str(&format!(
            "{},{},{},{},{}\n",
            spec.axis[k], spec.field_mt[k], spec.frequency_ghz[k], spec.i[k], spec.q[k]
        ));
    }
    s
}

/// Row-major CSV of a 2D sweep: `axis1,axis2,B0_mT,freq_GHz,I_V,Q_V` with
/// axis1 = excitation (%) and axis2 = drive frequency (GHz).
pub fn spectrum2d_csv(grid: &Spectrum2d, field_mt: &[f64]) -> String {
    let mut s = String::from("axis1,axis2,B0_mT,freq_GHz,I_V,Q_V\n");
    for (row, &e) in grid.excitation.iter().enumerate() {
        for (col, &f) in grid.frequency_ghz.iter().enumerate() {
            s.push_str(&format!(
                "{},{},{},{},{},{}\n",
                e, f, field_mt[row], f, grid.i[row][col], grid.q[row][col]
            ));
        }
    }
    s
}

/// Dense matrix CSV of one 2D channel: header row = frequencies (GHz),
/// first column = excitation (%).
pub fn matrix_csv(excitation: &[f64], frequency_ghz: &[f64], data: &[Vec<f64>]) -> String {
    let mut s = String::from("excitation_pct");
    for f in frequency_ghz {
        s.push_str(&format!(",{f}"));
    }
    s.push('\n');
    for (row, &e) in excitation.iter().enumerate() {
        s.push_str(&format!("{e}"));
        for v in &data[row] {
            s.push_str(&format!(",{v}"));
        }
        s.push('\n');
    }
    s
}

/// CSV of the sensitivity grid: header row = temperatures (K), first
/// column = bias field (T). Full precision.
pub fn table_csv(fields: &[f64], temperatures: &[f64], grid: &[Vec<f64>]) -> String {
    let mut s = String::from("B0_T");
    for t in temperatures {
        s.push_str(&format!(",T_{t}K"));
    }
    s.push('\n');
    for (row, &b0) in fields.iter().enumerate() {
        s.push_str(&format!("{b0}"));
        for v in &grid[row] {
            s.push_str(&format!(",{v}"));
        }
        s.push('\n');
    }
    s
}

/// Two-significant-digit scientific notation, matching how sensitivity
/// figures are quoted (e.g. `2.9e9`).
pub fn sig2(v: f64) -> String {
    format!("{v:.1e}")
}
