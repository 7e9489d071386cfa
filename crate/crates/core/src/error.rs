use thiserror::Error;

/// Errors raised anywhere in the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parameter space mismatch: {left:?} vs {right:?}")]
    SpaceMismatch { left: Vec<String>, right: Vec<String> },

    #[error("invalid parameter space: {0}")]
    InvalidSpace(String),

    #[error("no value assigned to parameter `{0}`")]
    MissingAssignment(String),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("index {index:?} out of range for dimension {dim}")]
    IndexOutOfRange { index: Vec<usize>, dim: usize },

    #[error("duplicate entry for index {0:?}")]
    DuplicateEntry(Vec<usize>),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("singular matrix")]
    Singular,

    #[error("entry {index:?} is not constant: {value}")]
    NonConstant { index: Vec<usize>, value: String },

    #[error("matrix is not symmetric at {0:?}")]
    NotSymmetric(Vec<usize>),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("malformed structure tensor: {0}")]
    MalformedStructureTensor(String),

    #[error("connection paths disagree ({path}): {diff}")]
    PathDisagreement { path: String, diff: String },

    #[error("dimension {0} not supported: {1}")]
    Dimension(usize, String),

    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
