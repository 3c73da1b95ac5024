use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("extension degree must be at least 1")]
    ZeroDegree,

    #[error("{what} {size} exceeds the cap {cap}")]
    CapExceeded { what: &'static str, size: u128, cap: u64 },

    #[error("cannot invert zero")]
    ZeroInverse,

    #[error("invalid element literal `{0}`")]
    BadElement(String),

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unbound parameter `{0}`")]
    UnboundParameter(String),

    #[error("negative exponent at position {0}")]
    NegativeExponent(usize),

    #[error("index is undefined for a constant polynomial")]
    ConstantPolynomial,

    #[error("shift search needs {needed} vectors but the budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },

    #[error("shift vector has length {got}, expected {expected}")]
    ShiftLength { got: usize, expected: usize },

    #[error("inconsistent subfield tower: {0}")]
    Tower(String),

    #[error("point-count methods disagree: kernel {kernel}, characters {characters}")]
    CountMismatch { kernel: i128, characters: i128 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
