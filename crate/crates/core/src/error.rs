use thiserror::Error;

/// Errors raised by the geometry, variation and analysis layers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("degenerate induced metric at {point:?}: |det g| = {det:e}")]
    DegenerateMetric { point: Vec<f64>, det: f64 },

    #[error("support violation on axis {axis}: {detail}")]
    Support { axis: usize, detail: String },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("unknown catalog id `{0}`")]
    UnknownCatalogId(String),

    #[error("malformed catalog id `{id}`: {reason}")]
    MalformedCatalogId { id: String, reason: String },

    #[error("malformed sweep `{spec}`: {reason}")]
    MalformedSweep { spec: String, reason: String },

    #[error("serialization failed: {0}")]
    Serialization(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, got })
    }
}
