use thiserror::Error;

/// Errors produced by the solver library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("negative fractional power applied to a spectrum with nonzero mean (|c_0| = {c0:e})")]
    NegativePowerOnNonzeroMean { c0: f64 },

    #[error("cutoff constant c = {0} outside (0, 2π)")]
    InvalidCutoff(f64),

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("non-finite coefficient encountered at step {step}")]
    NonFiniteState { step: usize },

    #[error("degenerate random draw: pre-normalization norm {0:e}")]
    DegenerateDraw(f64),

    #[error("sequence is identically zero")]
    ZeroSequence,

    #[error("exponents violate the admissible window: {0}")]
    InvalidExponents(String),

    #[error("reference trajectory failed: {0}")]
    ReferenceUnresolved(Box<Error>),

    #[error("invalid configuration: {0}")]
    ConfigInvalid(String),

    #[error("malformed data: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for failures caused by the numerics rather than by the inputs.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NonFiniteState { .. } | Error::ReferenceUnresolved(_) | Error::DegenerateDraw(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
