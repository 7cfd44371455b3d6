use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// An accessor was applied outside its domain, e.g. `max2` on a set with
    /// fewer than two elements.
    #[error("undefined: {0}")]
    Undefined(String),

    /// A set operation would produce an element below 1.
    #[error("out of range: {0}")]
    OutOfRange(String),

    /// Family or configuration parameters violate their constraints.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A bijection was applied to a value outside its stated domain.
    #[error("domain violation: {0}")]
    DomainViolation(String),

    /// The requested ground-set size exceeds the enumeration cap.
    #[error("n = {n} exceeds the enumeration cap ({cap})")]
    LimitExceeded { n: u32, cap: u32 },

    /// Difference enumeration was asked for incompatible family ids.
    #[error("parameter mismatch: {0}")]
    ParameterMismatch(String),

    #[error("io failure: {0}")]
    Io(#[from] std::io::Error),

    /// A stored sequence table failed validation on load.
    #[error("corrupt cache: {0}")]
    CorruptCache(String),
}

pub type Result<T> = std::result::Result<T, Error>;
