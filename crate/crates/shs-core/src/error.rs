use thiserror::Error;

use crate::chart::ChartViolation;

/// Errors reported by the analysis engine.
#[derive(Debug, Error)]
pub enum ShsError {
    /// The chart failed validation; every violated invariant is listed.
    #[error("invalid chart: {}", format_violations(.0))]
    InvalidChart(Vec<ChartViolation>),

    /// A linear system had no usable pivot. For the correlation system this
    /// means the chart violates the solvability premise of the age analysis.
    #[error("{context}: singular linear system (pivot {pivot:.3e} at elimination step {step})")]
    SingularSystem {
        context: &'static str,
        step: usize,
        pivot: f64,
    },

    /// A solution satisfied the solver but not the assembled equations.
    #[error("{context}: residual {residual:.3e} exceeds tolerance {tolerance:.3e}")]
    ResidualTooLarge {
        context: &'static str,
        residual: f64,
        tolerance: f64,
    },

    /// A probability or correlation component came out negative beyond the
    /// clamping tolerance.
    #[error("{context}: negative component {value:.3e} at index {index}")]
    NegativeComponent {
        context: &'static str,
        index: usize,
        value: f64,
    },

    /// A caller-supplied object does not match the chart's dimensions.
    #[error("dimension mismatch: {context} has length {found}, chart requires {expected}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },
}

fn format_violations(violations: &[ChartViolation]) -> String {
    let parts: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
    parts.join("; ")
}
