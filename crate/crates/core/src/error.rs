use thiserror::Error;

/// Broad classification used by front ends to pick an exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// Malformed or inconsistent input.
    Input,
    /// Well-formed input outside what the algorithms handle.
    Unsupported,
    /// A checked internal invariant failed. Always a bug.
    Internal,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: String, right: String },

    #[error("division by zero")]
    DivisionByZero,

    #[error("modulus {0} is not prime")]
    NotPrime(u64),

    #[error("modulus {0} is out of range (must be a prime below 2^31)")]
    ModulusOutOfRange(u64),

    #[error("{value} cannot be reduced modulo {p}: denominator divisible by {p}")]
    NotReducible { value: String, p: u32 },

    #[error("parse error at position {position} in {input:?}: {message}")]
    Parse {
        input: String,
        position: usize,
        message: String,
    },

    #[error("insufficient data: requested {requested} coefficients, {available} available")]
    InsufficientData { requested: usize, available: usize },

    #[error("invalid branch: {0}")]
    InvalidBranch(String),

    #[error("branch not solvable term by term at index {index}: leading linear coefficient vanishes")]
    UnsolvableBranch { index: usize },

    #[error("no square root: {0}")]
    NoSquareRoot(String),

    #[error("not divisible: {0}")]
    NotDivisible(String),

    #[error("insufficient depth: {0}")]
    InsufficientDepth(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("unknown identifier {0:?}")]
    UnknownId(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Unsupported(_) => ErrorClass::Unsupported,
            Error::Invariant(_) => ErrorClass::Internal,
            _ => ErrorClass::Input,
        }
    }

    pub(crate) fn parse(input: &str, position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            input: input.to_string(),
            position,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
