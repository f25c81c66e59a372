use thiserror::Error;

/// Failures shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("extension degree must be at least 1, got {0}")]
    InvalidDegree(u32),

    #[error("size bound exceeded: {what} is {requested}, limit {limit}")]
    SizeBound {
        what: &'static str,
        requested: String,
        limit: String,
    },

    #[error("operands belong to different contexts")]
    ContextMismatch,

    #[error("element code {0} is not in the field")]
    ForeignElement(u64),

    #[error("division by zero")]
    DivisionByZero,

    #[error("ring element is not a unit")]
    NonUnit,

    #[error("the Hermitian structure needs an even extension degree, got k = {0}")]
    OddDegree(u32),

    #[error("{what} = {value} is out of range {range}")]
    OutOfRange {
        what: &'static str,
        value: i64,
        range: String,
    },

    #[error("expected a coefficient vector of length {expected}, got {got}")]
    WrongLength { expected: usize, got: usize },

    #[error("generator list is empty")]
    EmptyGenerators,

    #[error("invalid canonical triple: {0}")]
    InvalidTriple(String),

    #[error("group order must be odd: {0}")]
    EvenOrder(u64),

    #[error("{q} and {d} are not coprime")]
    NotCoprime { q: u64, d: u64 },

    #[error("{d} does not divide the group exponent {exponent}")]
    NotADivisor { d: u64, exponent: u64 },

    #[error("profile does not match the class partition: {0}")]
    ProfileShape(String),

    #[error("non-integral exponent {num}/{den} in a count formula")]
    NonIntegralExponent { num: u64, den: u64 },
}

impl Error {
    pub(crate) fn bound(what: &'static str, requested: impl ToString, limit: impl ToString) -> Self {
        Error::SizeBound {
            what,
            requested: requested.to_string(),
            limit: limit.to_string(),
        }
    }

    pub(crate) fn range(what: &'static str, value: impl TryInto<i64>, range: impl ToString) -> Self {
        Error::OutOfRange {
            what,
            value: value.try_into().unwrap_or(i64::MAX),
            range: range.to_string(),
        }
    }

    /// Whether the failure is a size-bound refusal rather than bad input.
    pub fn is_size_bound(&self) -> bool {
        matches!(self, Error::SizeBound { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
