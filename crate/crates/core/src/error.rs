use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The input violates a structural invariant (non-admissible graph,
    /// non-boolean interval, `∂∂ ≠ 0`, ...).
    #[error("structural error: {0}")]
    Structural(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("cancellation breaks admissibility: {0}")]
    CancellationBreaksAdmissibility(String),

    /// A scheduled pair failed the dipole test. `step` is 1-based.
    #[error("step {step}: pair ({x}, {y}) is not a dipole")]
    NotADipole { step: usize, x: String, y: String },

    #[error("input too large: {0}")]
    TooLarge(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
