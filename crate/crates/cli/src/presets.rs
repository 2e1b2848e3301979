//! Bundled presets. Each preset is a data file under `presets/` embedded at
//! compile time, so the runs they describe are auditable as plain TOML.

use crate::config::RunConfig;
use crate::error::{CliError, Result};

/// Name/content pairs of every bundled preset.
pub const PRESETS: &[(&str, &str)] = &[
    ("paper-table1", include_str!("../presets/paper-table1.toml")),
    ("paper-fig3a", include_str!("../presets/paper-fig3a.toml")),
    ("paper-fig3b", include_str!("../presets/paper-fig3b.toml")),
    ("paper-ledger", include_str!("../presets/paper-ledger.toml")),
];

/// Raw TOML text of a bundled preset.
pub fn preset_text(name: &str) -> Result<&'static str> {
    PRESETS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| *text)
        .ok_or_else(|| {
            let known: Vec<&str> = PRESETS.iter().map(|(n, _)| *n).collect();
            CliError::Config(format!(
                "unknown preset '{name}'; bundled presets: {}",
                known.join(", ")
            ))
        })
}

/// Parsed bundled preset.
pub fn load_preset(name: &str) -> Result<RunConfig> {
    RunConfig::from_toml(preset_text(name)?)
}
