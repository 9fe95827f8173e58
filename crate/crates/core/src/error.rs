use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("truncation dimension must be at least 1, got {0}")]
    InvalidDimension(usize),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("measurement outcome must be 1 or 2, got {0}")]
    InvalidOutcome(u8),

    /// The excited branch carries amplitude at the last retained Fock level,
    /// which the interaction would raise past the truncation boundary.
    #[error("excited-branch amplitude {amplitude:e} at n = dim - 1 would leave the truncated space")]
    TruncationOverflow { amplitude: f64 },

    #[error("invalid priors q1 = {q1}, q2 = {q2}: must be nonnegative and sum to 1")]
    InvalidPriors { q1: f64, q2: f64 },

    #[error("expected {expected} parameters, got {got}")]
    ParameterCount { expected: usize, got: usize },

    #[error("non-finite parameter value")]
    NonFiniteParameter,

    #[error("overlap modulus must lie in [0, 1], got {0}")]
    InvalidOverlap(f64),

    #[error("objective returned a non-finite value after {evaluations} evaluations at x = {x:?}")]
    NonFiniteObjective { x: Vec<f64>, evaluations: usize },

    #[error("invalid optimizer options: {0}")]
    InvalidOptions(String),

    #[error("invalid sweep configuration: {0}")]
    InvalidConfig(String),
}
