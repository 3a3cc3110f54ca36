use thiserror::Error;

/// Failures raised by the numerical modules. Each variant names the module
/// that produced it so CLI messages can be tagged.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("hilbert: invalid space: {0}")]
    InvalidSpace(String),
    #[error("hilbert: dimension mismatch (expected {expected}, found {found})")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("hilbert: operator is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),
    #[error("states: {0}")]
    InvalidState(String),
    #[error("states: truncation budget {budget:e} not met for |alpha| = {abs_alpha} (need dim >= {required_dim})")]
    Truncation { abs_alpha: f64, budget: f64, required_dim: usize },
    #[error("grid: {0}")]
    Grid(String),
    #[error("dynamics: {0}")]
    Dynamics(String),
    #[error("pulse: {0}")]
    Pulse(String),
    #[error("debate: {0}")]
    Debate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
