use thiserror::Error;

/// Errors raised by the analysis pipeline.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// A hypothesis of the requested computation does not hold for the input.
    #[error("domain error: {0}")]
    Domain(String),

    /// Every slack is zero, so the requested minimum positive slack does not exist.
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// A configured enumeration budget or cap was too small.
    #[error("budget exceeded: {0}")]
    Budget(String),

    /// No candidate period reproduced the sequence; carries one line per candidate.
    #[error("no quasi-linear law validated:\n{}", .residuals.join("\n"))]
    Detection { residuals: Vec<String> },

    /// A proven invariant failed on a concrete instance.
    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
