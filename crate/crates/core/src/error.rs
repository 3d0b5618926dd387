use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("{subset} is not a transversal of {partition}")]
    TransversalityViolation { partition: String, subset: String },
    #[error("not a square: {0}")]
    NotASquare(String),
    #[error("generator {0} cannot be eliminated: no relation defines it")]
    NotEliminable(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),
    #[error("budget exhausted: {0}")]
    BudgetExhausted(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameters(msg.into())
}

pub(crate) fn precondition(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}
