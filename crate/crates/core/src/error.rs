use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("image {image} at index {index} is outside the domain 0..{n}")]
    DomainClosure { index: usize, image: usize, n: usize },

    #[error("index {index} out of range for a function on {n} elements")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("enumeration of n = {n} would generate {count} functions, above the cap of n = {cap}")]
    EnumerationCap { n: usize, cap: usize, count: String },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("chain violated at x = {x}: {violation}")]
    ChainViolation { x: String, violation: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal invariant failed: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
