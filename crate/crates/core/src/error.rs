use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: i64, right: i64 },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("{0} is not a usable prime here")]
    BadPrime(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("polynomial is not in the square of the complete-intersection ideal")]
    NotInIdealSquare,
    #[error("decomposition is degenerate: the coefficient of f_b^2 vanishes")]
    DegenerateDecomposition,
    #[error("lifted branch equation is identically zero")]
    ZeroBranch,
    #[error("divisor is i-invariant or contains the ramification divisor ({0})")]
    ComponentDivisor(&'static str),
    #[error("invalid complete intersection: {0}")]
    InvalidCompleteIntersection(String),
    #[error("no acceptable instance after {attempts} attempts")]
    RetryCapExceeded { attempts: usize },
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    #[error("unknown bundle {0:?}")]
    UnknownBundle(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
