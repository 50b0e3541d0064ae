use crate::seq::IndexBase;

/// Errors shared across the library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("index base mismatch: expected {expected}, found {found}")]
    BaseMismatch { expected: IndexBase, found: IndexBase },

    #[error("weight must satisfy |w| > 1, got w = {0}")]
    WeightNotExpanding(String),

    #[error("operation requires a {expected} operator, got {found}")]
    VariantMismatch {
        expected: &'static str,
        found: &'static str,
    },

    #[error("index {index} precedes the first index {first} of the base")]
    IndexBelowBase { index: i64, first: i64 },

    #[error("{lambda} is not an eigenvalue: it lies in the {region} set")]
    NotAnEigenvalue {
        lambda: String,
        region: &'static str,
    },

    #[error("period {period} is too short for the prefix: need at least {needed}")]
    PeriodTooShort { period: u32, needed: u32 },

    #[error("division by zero scalar")]
    DivisionByZero,

    #[error("zero cannot be raised to the negative power {0}")]
    ZeroToNegativePower(i64),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("real scalar required, got {0}")]
    ComplexValueInRealMode(String),
}

pub type Result<T> = std::result::Result<T, Error>;
