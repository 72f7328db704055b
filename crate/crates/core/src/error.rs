use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A builder was finalized without one of its strategy slots.
    #[error("missing `{0}` slot in builder")]
    MissingSlot(&'static str),

    #[error("invalid configuration for `{field}`: {message}")]
    Config { field: &'static str, message: String },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("objective returned a non-finite value ({value}) at evaluation {fes}")]
    NonFinite { fes: u64, value: f64 },

    #[error("evaluation budget exceeded: {fes} evaluations, limit {limit} (max_fes + one batch)")]
    BudgetExceeded { fes: u64, limit: u64 },

    #[error("internal error: {0}")]
    Internal(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{}:{line}: {message}", path.display())]
    Parse {
        path: PathBuf,
        line: u64,
        message: String,
    },
}

impl Error {
    pub fn config(field: &'static str, message: impl Into<String>) -> Self {
        Error::Config {
            field,
            message: message.into(),
        }
    }

    /// True for errors caused by user input rather than by the run itself.
    pub fn is_config(&self) -> bool {
        matches!(
            self,
            Error::MissingSlot(_) | Error::Config { .. } | Error::DimensionMismatch { .. }
        )
    }
}
