use thiserror::Error;

/// Errors raised across the exact pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("operation `{0}` is undefined for the zero polynomial")]
    ZeroPolynomial(&'static str),

    #[error("division by zero")]
    DivisionByZero,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid finite simple type {family}{rank}")]
    InvalidType { family: char, rank: usize },

    #[error("index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("not a valid cell: {0}")]
    NotACell(String),

    #[error("coincident coordinates produce a zero denominator: {0}")]
    Collision(String),

    #[error("direction {direction} is not fertile{}", step.map(|s| format!(" (step {s})")).unwrap_or_default())]
    Infertile {
        direction: usize,
        step: Option<usize>,
    },

    #[error("newton iteration failed: {reason}")]
    Newton {
        reason: String,
        last_iterate: Vec<Vec<f64>>,
        residual: f64,
    },

    #[error("population exploration failed: {0}")]
    Exploration(String),

    #[error("not representable in the twisted field: {0}")]
    NotRepresentable(String),

    #[error("representation check failed: {0}")]
    Representation(String),

    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
