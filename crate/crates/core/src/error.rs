use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input outside the mathematical domain of the operation (|x|_p too small, s < 2, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Parameters violate a structural precondition (A n < n + 3, p | e, ...).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("division by zero: {0}")]
    DivisionByZero(String),

    #[error("indeterminate Teichmüller character: input is zero to known precision")]
    IndeterminateTeichmuller,

    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),

    /// An internal identity that must hold did not; always a bug, never a user error.
    #[error("internal consistency failure: {0}")]
    Consistency(String),

    /// A certificate was falsified.
    #[error("factorization mismatch: {0}")]
    FactorizationMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),
}
