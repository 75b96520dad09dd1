use thiserror::Error;

/// Errors raised by the exact-arithmetic pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cyclotomic order mismatch: {left} vs {right}")]
    OrderMismatch { left: u32, right: u32 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("element is not a unit: constant term vanishes")]
    NonUnit,

    #[error("element is not divisible by the tangent Euler class e")]
    NotDivisibleByE,

    #[error("element is not rational")]
    NotRational,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// An identity that must hold by construction failed. Always a bug.
    #[error("internal consistency failure: {0}")]
    Inconsistency(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn inconsistency(msg: impl Into<String>) -> Self {
        Error::Inconsistency(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
