use thiserror::Error;

/// Crate-wide error type.
///
/// `Verification` marks failures of internal mathematical assertions (a
/// constructed cochain failing its cocycle condition, a covering identity not
/// holding); these map to exit code 2 in the CLI, while `BadInput` maps to 1.
#[derive(Debug, Error)]
pub enum Error {
    #[error("group mismatch: {0}")]
    GroupMismatch(&'static str),
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("unsupported ring combination: {0}")]
    RingMismatch(String),
    #[error("not a cocycle: {0}")]
    NotCocycle(String),
    #[error("not a cycle: {0}")]
    NotCycle(String),
    #[error("size bound exceeded: {0}")]
    SizeBound(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("invalid input: {0}")]
    BadInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
