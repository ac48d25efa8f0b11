use aoi_models::ModelError;
use thiserror::Error;

/// Failure modes of a simulation run. Parameter problems are surfaced
/// verbatim from the model crate; configuration problems are our own.
#[derive(Debug, Error)]
pub enum SimError {
    #[error("invalid simulation config: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}
