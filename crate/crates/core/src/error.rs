use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("order {order} exceeds the configured cap {cap}")]
    TooLarge { order: u128, cap: usize },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("element {0} does not belong to this field")]
    ForeignElement(u32),

    #[error("field mismatch: {0}")]
    FieldMismatch(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("mixed cyclotomic rings: p = {0} and p = {1}")]
    MixedRing(u32, u32),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("quadratic form is singular")]
    SingularForm,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

impl Error {
    pub(crate) fn params(msg: impl Into<String>) -> Self {
        Error::InvalidParams(msg.into())
    }
}
