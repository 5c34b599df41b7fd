use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("generator index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("unknown algebra {0:?}")]
    UnknownAlgebra(String),
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("algebra {name:?} is not a Malcev algebra: {reason}")]
    NotMalcev { name: String, reason: String },
    #[error("algebra {0:?} is not right alternative")]
    NotRightAlternative(String),
    #[error("coefficient field must have characteristic 0, got {0}")]
    Characteristic(u32),
    #[error("elements belong to different algebras ({0:?} vs {1:?})")]
    ContextMismatch(String, String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
