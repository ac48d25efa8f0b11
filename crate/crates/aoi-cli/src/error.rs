use std::fmt;

use aoi_models::ModelError;
use aoi_sim::SimError;

/// CLI failure classes, each with its documented exit code: 2 for
/// usage/config problems, 3 for infeasible parameters, 4 for numerical
/// failures (singular or unreliable linear systems).
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Infeasible(String),
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Usage(_) => 2,
            Self::Infeasible(_) => 3,
            Self::Numerical(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Usage(msg) | Self::Infeasible(msg) | Self::Numerical(msg) => f.write_str(msg),
        }
    }
}

impl From<ModelError> for CliError {
    fn from(err: ModelError) -> Self {
        match err {
            // Solver-side failures: the inputs were admissible but the
            // numerics gave up.
            ModelError::SingularSystem { .. } | ModelError::Engine(_) => {
                Self::Numerical(err.to_string())
            }
            // Everything else is a problem with the provided configuration.
            _ => Self::Usage(err.to_string()),
        }
    }
}

impl From<SimError> for CliError {
    fn from(err: SimError) -> Self {
        match err {
            SimError::InvalidConfig(msg) => Self::Usage(msg),
            SimError::Model(inner) => inner.into(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        Self::Usage(format!("i/o error: {err}"))
    }
}
