//! Error type shared across the crate.

use std::path::PathBuf;

/// Errors produced by constructors, validators, and I/O helpers.
///
/// Pure numeric routines with total domains return plain values; `Error` is
/// reserved for invalid inputs and file handling.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} entries, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("{name} must be positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },

    #[error("channel gain {gain} is below the deep-fading cutoff {cutoff}; user is excluded")]
    DeepFading { gain: f64, cutoff: f64 },

    #[error("offloader count {n} out of range for {k} users")]
    CardinalityOutOfRange { n: usize, k: usize },

    #[error("exhaustive enumeration is limited to {limit} users, got {k}")]
    TooManyUsers { k: usize, limit: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid scenario: {0}")]
    InvalidScenario(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
