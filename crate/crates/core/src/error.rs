use num_bigint::BigUint;
use thiserror::Error;

/// Errors raised by the field, code, graph and coloring layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field of size {0} is too large for this representation")]
    FieldTooLarge(String),
    #[error("polynomial {0:?} is not a monic irreducible of the required degree")]
    NotIrreducible(Vec<u64>),
    #[error("inversion of zero")]
    InverseOfZero,
    #[error("element index {index} is out of range for a field of order {order}")]
    ElementOutOfRange { index: u64, order: u64 },
    #[error("shape mismatch: expected {expected}, got {got}")]
    ShapeMismatch { expected: String, got: String },
    #[error("enumeration of {needed} items exceeds the budget of {budget}")]
    BudgetExceeded { needed: BigUint, budget: u64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("elements are not linearly independent over the base field")]
    NotIndependent,
    #[error("matrix is rank deficient (rank {rank}, expected {expected})")]
    RankDeficient { rank: usize, expected: usize },
    #[error("unknown built-in code {0:?}")]
    UnknownCode(String),
    #[error("modulus mismatch: {0}")]
    ModulusMismatch(String),
    #[error("search failed after {restarts} restarts: {detail}")]
    SearchFailed { restarts: u64, detail: String },
    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
