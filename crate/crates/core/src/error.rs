use thiserror::Error;

/// Errors shared across the engine.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid descriptor: {0}")]
    InvalidDescriptor(String),

    #[error("unsupported context: {0}")]
    UnsupportedContext(String),

    #[error("simple-root index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("weight {0} is not dominant")]
    NonDominant(String),

    #[error("objects live over different contexts or root systems")]
    ContextMismatch,

    #[error("hypothesis violation: {0}")]
    HypothesisViolation(String),

    #[error("cache format error: {0}")]
    CacheFormat(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("internal consistency fault: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
