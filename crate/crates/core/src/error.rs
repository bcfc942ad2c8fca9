use thiserror::Error;

use crate::rational::Rational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("degree vector has {beta_edges} edges but the matching has {matching_pairs} pairs")]
    EdgeCountMismatch {
        beta_edges: usize,
        matching_pairs: usize,
    },

    #[error("resource guard: {cells} matrix cells exceeds the ceiling of {limit}")]
    ResourceGuard { cells: u128, limit: u64 },

    #[error("jet of order {available} cannot feed a vertex of degree {required}")]
    InsufficientJetOrder { required: usize, available: usize },

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("verification failed: f = {poly}, x = {point:?}, value = {value}")]
    VerificationFailure {
        poly: String,
        point: Vec<String>,
        value: Rational,
    },

    #[error("no nonzero witness found within {budget} evaluations")]
    WitnessNotFound { budget: usize },
}
