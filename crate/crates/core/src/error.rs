use thiserror::Error;

/// Errors raised by the library. All variants are recoverable by the caller.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GhostError {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("level must be positive")]
    ZeroLevel,

    #[error("level {level} is not coprime to p = {p}")]
    LevelNotCoprime { p: u64, level: u64 },

    #[error("weight {0} is odd")]
    OddWeight(i64),

    #[error("weight {weight} does not lie on the component {residue} mod {modulus}")]
    WrongComponent { weight: String, residue: i64, modulus: i64 },

    #[error("invalid component residue {residue} for p = {p}")]
    InvalidComponent { p: u64, residue: i64 },

    #[error("factorial of negative integer {0}")]
    NegativeFactorial(i64),

    #[error("{0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("inconsistent data: {0}")]
    InvalidData(String),

    #[error("operation needs more coefficients than the limit {0}")]
    WindowExceeded(usize),
}

pub type Result<T> = std::result::Result<T, GhostError>;
