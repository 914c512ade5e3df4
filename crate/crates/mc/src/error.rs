pub type Result<T, E = McError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum McError {
    /// The log-det argument was not numerically positive definite. Usually an
    /// overflow at the top of the SNR ladder; lower the ceiling.
    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    #[error("invalid SNR ladder: {0}")]
    InvalidLadder(String),

    #[error("need at least {min} samples per point, got {got}")]
    TooFewSamples { got: usize, min: usize },

    #[error("power exponent A2 must be non-negative, got {0}")]
    NegativeA2(f64),

    #[error(transparent)]
    Core(#[from] gdof_core::Error),
}
