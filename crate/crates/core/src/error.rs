use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("{what} exceeds cap: {actual} > {limit}")]
    CapExceeded {
        what: &'static str,
        limit: usize,
        actual: usize,
    },
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("{0} is not a proper monic divisor of the modulus")]
    InvalidDivisor(String),
    #[error("not a spectral vector of any gcd-graph: {0}")]
    NotSpectralVector(String),
    #[error("not a largest eigenvalue for this modulus: {0}")]
    NotLargestEigenvalue(String),
    #[error("construction hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("isomorphism search exhausted its budget of {0} nodes")]
    SearchBudget(u64),
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
