use std::path::PathBuf;

use crate::grid::WaveVector;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("grid size must be odd and at least 3, got {0}")]
    InvalidGridSize(i64),
    #[error("wave vector {0} is not in the truncation grid I_{1}")]
    NotInGrid(WaveVector, i64),
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("reality condition violated: relative residual {residual:e} exceeds {tolerance:e}")]
    RealityViolation { residual: f64, tolerance: f64 },
    #[error("size mismatch: expected {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("the Killing form of the continuum algebra diverges")]
    KillingDiverges,
    #[error("algebra is not semi-simple: Killing form is singular (condition {condition:e})")]
    NotSemiSimple { condition: f64 },
    #[error("invalid structure constants: {0}")]
    InvalidConstants(String),
    #[error(
        "bracket has imaginary residue {residual:e} above tolerance; functionals are not real"
    )]
    NonRealBracket { residual: f64 },
    #[error("internal consistency check failed: {0}")]
    InternalConsistency(String),
    #[error("implicit midpoint iteration did not converge after {iterations} iterations (last update {last_update:e})")]
    NonConvergence { iterations: usize, last_update: f64 },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
