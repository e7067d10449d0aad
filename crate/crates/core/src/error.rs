use thiserror::Error;

/// Errors produced by the EMD library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("mass mismatch: member {index} has mass {found}, expected {expected}")]
    MassMismatch {
        index: usize,
        expected: u64,
        found: u64,
    },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("wrong arity: expected {expected} distributions, got {found}")]
    WrongArity { expected: usize, found: usize },

    #[error("degenerate shape: {0}")]
    DegenerateShape(String),

    #[error("capacity exceeded: {what} needs {needed}, cap is {cap}")]
    CapacityExceeded { what: String, needed: u128, cap: u128 },

    #[error("grade table has no sections")]
    EmptyTable,

    #[error("section `{0}` has zero mass")]
    ZeroMass(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
