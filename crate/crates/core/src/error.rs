//! Error type shared by all engine modules.

use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum CoreError {
    /// A division hit an exactly-zero divisor.
    #[error("division by zero: {0}")]
    DivisionByZero(String),

    /// Input outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A stated precondition of the operation was violated.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Malformed textual input.
    #[error("parse error: {0}")]
    Parse(String),

    /// Request exceeds a hard resource cap.
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type CoreResult<T> = Result<T, CoreError>;
