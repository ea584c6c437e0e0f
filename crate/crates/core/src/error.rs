use thiserror::Error;

/// Errors raised by series arithmetic, operator evaluation and the harness.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable mismatch: {0}")]
    VariableMismatch(String),
    #[error("series is not invertible: {0}")]
    NotInvertible(String),
    #[error("exponential does not converge: {0}")]
    Divergent(String),
    #[error("truncation policy error: {0}")]
    Policy(String),
    #[error("expansion does not terminate: {0}")]
    Nontermination(String),
    #[error("arity error: {0}")]
    Arity(String),
    #[error("generator {0} is not defined on this basis")]
    Unsupported(String),
    #[error("invalid operator expression: {0}")]
    InvalidExpr(String),
    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
