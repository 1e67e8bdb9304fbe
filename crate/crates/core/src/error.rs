//! Error type shared by every module of the crate.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("jump sequence is empty")]
    EmptyJumps,
    #[error("jumps must be positive integers, got {0}")]
    NonPositive(i64),
    #[error("jumps must be strictly increasing: {0:?}")]
    NotStrictlyIncreasing(Vec<u64>),
    #[error("jump {jump} is out of range for a graph on {order} vertices")]
    JumpOutOfRange { jump: u64, order: u64 },
    #[error("graph is disconnected: gcd of jumps and order is {gcd}")]
    Disconnected { gcd: u64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("graph order {order} exceeds the brute-force cap {cap}")]
    TooLarge { order: u64, cap: u64 },
    #[error("precision exhausted at {bits} bits: {context}")]
    PrecisionExhausted { bits: u32, context: String },
    #[error("enclosure {enclosure} does not isolate an integer")]
    NoIntegerEnclosed { enclosure: String },
    #[error("polynomial is constant")]
    ConstantPolynomial,
    #[error("root-location property violated: {0}")]
    LemmaViolation(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("squarefree part of zero is undefined")]
    UndefinedSquarefree,
    #[error("{value} is not a perfect square")]
    NotPerfectSquare { value: String },
    #[error("quadrature did not converge; best estimate {best}")]
    NonConvergent { best: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
