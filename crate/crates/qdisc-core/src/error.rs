//! Error types shared across the engine.

use thiserror::Error;

/// Errors raised by exact scalar arithmetic and evaluation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    /// Division by the zero scalar.
    #[error("division by zero scalar")]
    DivisionByZero,
    /// Numeric evaluation hit a zero denominator at the requested point.
    #[error("denominator vanishes at q = {at}")]
    Pole { at: String },
}

/// Errors raised while evaluating expressions over the algebra.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    /// Lexical or syntactic error, with 1-based position info.
    #[error("parse error at {line}:{col}: {message}")]
    Parse { line: usize, col: usize, message: String },
    /// Structurally valid input that is not well-typed in the algebra.
    #[error("{0}")]
    Type(String),
    /// Scalar-level failure surfaced during evaluation.
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

impl EvalError {
    pub fn type_err(msg: impl Into<String>) -> Self {
        EvalError::Type(msg.into())
    }
}
