use thiserror::Error;

/// Errors surfaced by every layer of the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("mixed coefficient fields: {0} and {1}")]
    MixedFields(String, String),

    #[error("invalid field characteristic {0}: expected 0 or a prime below 2^31")]
    InvalidField(u64),

    #[error("division by zero in {0}")]
    ZeroDivision(String),

    #[error("parameter {name} must be nonzero")]
    ZeroParameter { name: String },

    #[error("relation {index} is not homogeneous: terms of weights {weights:?}")]
    InhomogeneousRelation { index: usize, weights: Vec<u32> },

    #[error("invalid presentation: {0}")]
    Presentation(String),

    #[error("cutoff {cutoff} is below the required degree {needed}")]
    CutoffTooSmall { cutoff: u32, needed: u32 },

    #[error("window {window} too small: {what} needs {needed}")]
    WindowTooSmall {
        window: String,
        what: String,
        needed: String,
    },

    #[error("empty window: {0}")]
    EmptyWindow(String),

    #[error("hypothesis failed: {0}")]
    Hypothesis(String),

    #[error("dimension mismatch: {0}")]
    Mismatch(String),

    #[error("{file}:{line}:{col}: {msg}")]
    Parse {
        file: String,
        line: usize,
        col: usize,
        msg: String,
    },

    #[error("usage: {0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;
