use thiserror::Error;

/// Errors produced by the simulation core.
#[derive(Debug, Error)]
pub enum Error {
    /// An input lies outside the physical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An input is physically meaningful but outside the instrument's range.
    #[error("range error: {0}")]
    Range(String),

    /// A model parameter combination makes the operation singular.
    #[error("singular model: {0}")]
    Singular(String),

    /// A sweep plan or synthesis setting violates an internal rule.
    #[error("config error: {0}")]
    Config(String),

    /// A trace does not contain the feature an extraction step looks for.
    #[error("no line found: {0}")]
    NoLineFound(String),
}

pub type Result<T> = std::result::Result<T, Error>;
