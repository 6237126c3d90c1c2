use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimMismatch { expected: usize, got: usize },

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("too many outliers: requested {requested} of {available} samples")]
    TooManyOutliers { requested: usize, available: usize },

    #[error("invalid block count K={k} for N={n}")]
    InvalidK { k: usize, n: usize },

    #[error("invalid regularization parameter lambda={0} (must be > 0)")]
    InvalidLambda(f64),

    #[error("vector is not unit length: |norm - 1| = {0:e}")]
    NotUnit(f64),

    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },

    #[error("{0}")]
    Format(String),
}

impl Error {
    pub fn io(context: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io { context: context.into(), source }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
