//! Error taxonomy of the command-line tool and its stable exit codes.

use std::fmt;

/// Every failure is either a configuration problem (exit 1) or a runtime
/// problem (exit 2); 0 means success. Scripts rely on this contract.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Config(String),
    Runtime(String),
}

pub type Result<T> = std::result::Result<T, CliError>;

impl CliError {
    /// Wrap a simulation-core error found while validating inputs.
    pub fn config(err: esr_core::Error) -> Self {
        CliError::Config(err.to_string())
    }

    /// Wrap a simulation-core error raised while running.
    pub fn runtime(err: esr_core::Error) -> Self {
        CliError::Runtime(err.to_string())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 1,
            CliError::Runtime(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "config error: {msg}"),
            CliError::Runtime(msg) => write!(f, "runtime error: {msg}"),
        }
    }
}

impl std::error::Error for CliError {}
