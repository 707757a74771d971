use thiserror::Error;

/// Errors raised anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("operands belong to different fields")]
    FieldMismatch,

    #[error("division by zero")]
    DivisionByZero,

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("invalid operator: {0}")]
    InvalidOperator(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("graph is not connected; use decide_general for disconnected inputs")]
    NotConnected,

    #[error("matrix is not normal: y*z - x*t != 1 at index {index}")]
    NotNormal { index: usize },

    #[error("determinant is not the all-ones vector")]
    DetNotOne,

    #[error("invalid witness: {0}")]
    InvalidWitness(String),

    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),

    #[error("node limit of {limit} exceeded")]
    LimitExceeded { limit: usize },

    #[error("zero set of the determinant is not a linear subspace")]
    NotLinear,

    #[error("determinant is not constant on the sampled space")]
    DetNotConstant,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
