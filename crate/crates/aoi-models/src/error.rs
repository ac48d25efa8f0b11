use thiserror::Error;

/// Errors from parameter handling and the model-level solvers.
#[derive(Debug, Error)]
pub enum ModelError {
    #[error("rate {name} must be positive and finite, got {value}")]
    NonpositiveRate { name: &'static str, value: f64 },

    #[error("alpha must lie in [1, 2], got {value}")]
    AlphaOutOfRange { value: f64 },

    #[error("delta must lie strictly between 0 and 1, got {value}")]
    DeltaOutOfRange { value: f64 },

    #[error("config: {0}")]
    ConfigParse(String),

    #[error("config: mode \"{mode}\" requires field \"{field}\"")]
    MissingField {
        mode: &'static str,
        field: &'static str,
    },

    #[error("config: {0}")]
    ConfigConflict(String),

    #[error("closed-form system is singular at elimination step {step}")]
    SingularSystem { step: usize },

    #[error(transparent)]
    Engine(#[from] shs_core::ShsError),
}
