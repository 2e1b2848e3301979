//! Subcommand implementations. Each command validates its inputs, runs the
//! simulation core, writes a CSV plus a manifest sidecar, and prints a
//! short human-readable summary.

use std::path::Path;

use esr_core::sensitivity::{apply_ledger, sensitivity_table, spin_sensitivity};
use esr_core::sweep::{find_zero_crossing, run_2d_sweep, run_field_sweep, run_frequency_sweep};
use esr_core::calibration::excitation_to_field;

use crate::config::{RunConfig, SweepMode};
use crate::error::{CliError, Result};
use crate::output::{
    manifest_toml, matrix_csv, sig2, spectrum2d_csv, spectrum_csv, software_version, table_csv,
    write_artifact, Manifest,
};

/// Command-line overrides and output destination shared by all subcommands.
pub struct RunOptions<'a> {
    pub preset: Option<&'a str>,
    pub seed: Option<u64>,
    pub no_noise: bool,
    pub out: &'a Path,
}

fn write_manifest(
    cfg: &RunConfig,
    opts: &RunOptions,
    command: &str,
    noise_enabled: bool,
    stem: &str,
) -> Result<()> {
    let manifest = Manifest {
        command,
        preset: opts.preset,
        seed: opts.seed.unwrap_or(cfg.seed),
        noise_enabled,
        software_version: software_version(),
        config: cfg,
    };
    write_artifact(opts.out, &format!("{stem}.manifest.toml"), &manifest_toml(&manifest)?)?;
    Ok(())
}

/// `sensitivity-table`: closed-form N_min over the configured B0 × T grid.
pub fn cmd_sensitivity_table(cfg: &RunConfig, opts: &RunOptions) -> Result<()> {
    let table = cfg.table()?;
    let grid = sensitivity_table(
        &table.fields,
        &table.temperatures,
        table.resistance,
        table.coil_diameter,
        &cfg.constants,
    )
    .map_err(CliError::config)?;

    let csv = table_csv(&table.fields, &table.temperatures, &grid);
    let path = write_artifact(opts.out, "sensitivity_table.csv", &csv)?;
    write_manifest(cfg, opts, "sensitivity-table", false, "sensitivity_table")?;

    println!(
        "Theoretical spin sensitivity N_min (spins/\u{221a}Hz), R = {} \u{3a9}, coil d = {} m",
        table.resistance, table.coil_diameter
    );
    let header: Vec<String> = table.temperatures.iter().map(|t| format!("{t} K")).collect();
    println!("{:>10} | {}", "B0", header.join("  "));
    for (row, &b0) in table.fields.iter().enumerate() {
        let cells: Vec<String> = grid[row].iter().map(|&v| sig2(v)).collect();
        println!("{b0:>8} T | {}", cells.join("  "));
    }
    println!("wrote {}", path.display());
    Ok(())
}

/// `sweep`: run the configured field, frequency, or 2D acquisition.
pub fn cmd_sweep(cfg: &RunConfig, opts: &RunOptions) -> Result<()> {
    let ctx = cfg.sweep_context()?;
    let plan = cfg.sweep_plan(opts.seed, opts.no_noise)?;
    let mode = cfg
        .sweep
        .ok_or_else(|| CliError::Config("the sweep subcommand needs a [sweep] block".into()))?
        .mode;

    match mode {
        SweepMode::Field | SweepMode::Frequency => {
            let spec = if mode == SweepMode::Field {
                run_field_sweep(&ctx, &plan).map_err(CliError::runtime)?
            } else {
                run_frequency_sweep(&ctx, &plan).map_err(CliError::runtime)?
            };
            let path = write_artifact(opts.out, "sweep.csv", &spectrum_csv(&spec))?;
            write_manifest(cfg, opts, "sweep", plan.noise_enabled, "sweep")?;

            let unit = if mode == SweepMode::Field { "%" } else { "GHz" };
            println!(
                "{} points, seed {}, noise {}",
                spec.axis.len(),
                plan.rng_seed,
                if plan.noise_enabled { "on" } else { "off" }
            );
            match find_zero_crossing(&spec.axis, &spec.i) {
                Some(x) if spec.meta.crossing_detected => {
                    println!("derivative zero crossing at {x:.6} {unit}")
                }
                _ => println!("no resonance crossing inside the swept range"),
            }
            println!("wrote {}", path.display());
        }
        SweepMode::TwoD => {
            let grid = run_2d_sweep(&ctx, &plan).map_err(CliError::runtime)?;
            let field_mt: Result<Vec<f64>> = grid
                .excitation
                .iter()
                .map(|&e| excitation_to_field(e, &ctx.calibration).map_err(CliError::runtime))
                .collect();
            let field_mt = field_mt?;
            let path = write_artifact(opts.out, "sweep.csv", &spectrum2d_csv(&grid, &field_mt))?;
            write_artifact(
                opts.out,
                "sweep_i_matrix.csv",
                &matrix_csv(&grid.excitation, &grid.frequency_ghz, &grid.i),
            )?;
            write_artifact(
                opts.out,
                "sweep_q_matrix.csv",
                &matrix_csv(&grid.excitation, &grid.frequency_ghz, &grid.q),
            )?;
            write_manifest(cfg, opts, "sweep", plan.noise_enabled, "sweep")?;

            println!(
                "{} \u{d7} {} grid, seed {}, noise {}",
                grid.excitation.len(),
                grid.frequency_ghz.len(),
                plan.rng_seed,
                if plan.noise_enabled { "on" } else { "off" }
            );
            let rows_with_crossing = grid
                .i
                .iter()
                .filter(|row| row.windows(2).any(|w| w[0] * w[1] < 0.0))
                .count();
            println!("{rows_with_crossing} rows show a resonance crossing");
            println!("wrote {}", path.display());
        }
    }
    Ok(())
}

/// `noise-budget`: theoretical N_min at the operating point, per-stage
/// degradations, and the degraded figure.
pub fn cmd_noise_budget(cfg: &RunConfig, opts: &RunOptions) -> Result<()> {
    let budget = cfg.budget()?;
    budget.ledger.validate().map_err(CliError::config)?;
    let theoretical = spin_sensitivity(
        budget.b0,
        budget.temperature,
        budget.resistance,
        budget.coil_diameter,
        &cfg.constants,
    )
    .map_err(CliError::config)?;
    let degraded = apply_ledger(theoretical, &budget.ledger).map_err(CliError::config)?;

    let mut csv = String::from("stage,degradation_dB,cumulative_dB\n");
    let mut cumulative = 0.0;
    println!(
        "theoretical N_min at B0 = {} T, T = {} K: {} spins/\u{221a}Hz",
        budget.b0,
        budget.temperature,
        sig2(theoretical)
    );
    for stage in &budget.ledger.stages {
        cumulative += stage.degradation_db;
        println!(
            "  {:<24} {:>5.1} dB   (cumulative {:>5.1} dB)",
            stage.name, stage.degradation_db, cumulative
        );
        csv.push_str(&format!(
            "{},{},{}\n",
            stage.name, stage.degradation_db, cumulative
        ));
    }
    println!("total degradation: {:.1} dB", budget.ledger.total_db());
    if budget.ledger.coupling_efficiency < 1.0 {
        println!("coupling efficiency: {}", budget.ledger.coupling_efficiency);
    }
    println!("degraded N_min: {} spins/\u{221a}Hz", sig2(degraded));

    let path = write_artifact(opts.out, "noise_budget.csv", &csv)?;
    write_manifest(cfg, opts, "noise-budget", false, "noise_budget")?;
    println!("wrote {}", path.display());
    Ok(())
}
