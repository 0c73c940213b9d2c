use thiserror::Error;

/// Errors raised by the counting and verification layers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("n = {n} exceeds the brute-force oracle bound {bound}")]
    OracleBound { n: u64, bound: u64 },

    #[error("partition is not a {t}-core")]
    NotCore { t: u32 },

    #[error("partition is not self-conjugate")]
    NotSelfConjugate,

    #[error("residue list entries must sum to zero (got {sum})")]
    ListSum { sum: i64 },

    #[error("{0} is not a fundamental discriminant")]
    NotFundamental(i64),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("form [{a}, {b}, {c}] is not positive definite")]
    NotPositiveDefinite { a: i64, b: i64, c: i64 },

    #[error("vector ({0}, {1}, {2}) is not primitive")]
    NotPrimitive(i64, i64, i64),

    #[error("fractional q-power {num}/{den} left after cancelling eta prefactors")]
    FractionalExponent { num: i64, den: i64 },

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error("no closed form in scope for {0}")]
    NoClosedForm(String),

    #[error("{0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
