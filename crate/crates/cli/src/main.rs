use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use esr_cli::commands::{cmd_noise_budget, cmd_sensitivity_table, cmd_sweep, RunOptions};
use esr_cli::config::RunConfig;
use esr_cli::error::{CliError, Result};
use esr_cli::presets::{load_preset, PRESETS};

/// Digital twin of a continuous-wave ESR spectrometer operated inside a
/// transmission electron microscope.
#[derive(Parser)]
#[command(name = "esr", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form spin-sensitivity grid over bias field and temperature.
    SensitivityTable(Common),
    /// Field, frequency, or combined 2D sweep with lock-in readout.
    Sweep(Common),
    /// Theoretical vs degraded sensitivity through the receive-chain ledger.
    NoiseBudget(Common),
}

#[derive(Args)]
struct Common {
    /// Path of a TOML run configuration.
    #[arg(long, value_name = "path", conflicts_with = "preset")]
    config: Option<PathBuf>,
    /// Name of a bundled preset (see `--help` for the list).
    #[arg(long, value_name = "name")]
    preset: Option<String>,
    /// Override the master seed of the configuration.
    #[arg(long, value_name = "int")]
    seed: Option<u64>,
    /// Output directory for CSV and manifest artifacts.
    #[arg(long, value_name = "dir", default_value = ".")]
    out: PathBuf,
    /// Disable receiver-noise synthesis regardless of the configuration.
    #[arg(long)]
    no_noise: bool,
}

impl Common {
    fn load(&self) -> Result<RunConfig> {
        match (&self.config, &self.preset) {
            (Some(path), None) => {
                let text = std::fs::read_to_string(path).map_err(|e| {
                    CliError::Config(format!("cannot read {}: {e}", path.display()))
                })?;
                RunConfig::from_toml(&text)
            }
            (None, Some(name)) => load_preset(name),
            _ => {
                let names: Vec<&str> = PRESETS.iter().map(|(n, _)| *n).collect();
                Err(CliError::Config(format!(
                    "exactly one of --config <path> or --preset <name> is required \
                     (bundled presets: {})",
                    names.join(", ")
                )))
            }
        }
    }

    fn options<'a>(&'a self) -> RunOptions<'a> {
        RunOptions {
            preset: self.preset.as_deref(),
            seed: self.seed,
            no_noise: self.no_noise,
            out: &self.out,
        }
    }
}

fn run(cli: &Cli) -> Result<()> {
    let (common, cmd): (&Common, fn(&RunConfig, &RunOptions) -> Result<()>) = match &cli.command {
        Command::SensitivityTable(c) => (c, cmd_sensitivity_table),
        Command::Sweep(c) => (c, cmd_sweep),
        Command::NoiseBudget(c) => (c, cmd_noise_budget),
    };
    let cfg = common.load()?;
    cmd(&cfg, &common.options())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version are successful outcomes; anything else is a
            // configuration problem under the 0/1/2 exit-code contract.
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
