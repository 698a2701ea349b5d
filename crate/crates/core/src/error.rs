use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Bad argument from the caller (out-of-range id, p < 1, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// An operation was called on a graph that does not meet its entry conditions.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Something the algorithms guarantee did not happen. Always a bug.
    #[error("internal error: {0}")]
    Internal(String),

    /// An invariant check enabled through `KernelConfig::checks` failed.
    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
