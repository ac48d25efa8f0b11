//! Average-age analysis of piecewise-linear stochastic hybrid systems.
//!
//! A system is described by an [`ShsChart`]: a finite ergodic Markov chain
//! whose states carry a binary drift vector for a continuous age vector
//! `x(t)`, and whose transitions apply binary reset maps `x' = x·A`. For any
//! such chart the engine computes
//!
//! 1. the stationary distribution of the discrete chain
//!    ([`stationary_distribution`]),
//! 2. the limiting state-age correlation vectors v̄_q
//!    ([`correlation_table`]), and
//! 3. time-average ages as sums of selected correlation components
//!    ([`average_age`]).
//!
//! All operations are pure functions; tolerances can be adjusted through
//! [`EngineOptions`].

mod chart;
mod engine;
mod error;
mod linalg;

pub use chart::{validate_chart, ChartViolation, ResetMap, ShsChart, Transition};
pub use engine::{
    average_age, average_age_with, balance_residual, correlation_residual, correlation_system,
    correlation_table, correlation_table_with, stationary_distribution,
    stationary_distribution_with, CorrelationTable, EngineOptions, StationaryDistribution,
};
pub use error::ShsError;
