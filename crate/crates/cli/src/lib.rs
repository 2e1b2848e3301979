//! Command-line front end of the spectrometer digital twin: strict TOML
//! configuration, bundled presets, CSV/manifest artifacts, and stable exit
//! codes (0 success, 1 config error, 2 runtime error).

pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod presets;

pub use config::RunConfig;
pub use error::{CliError, Result};
