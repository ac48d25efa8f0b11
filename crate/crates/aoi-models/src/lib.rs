//! Two-user status-update models over a shared server, in two disciplines:
//!
//! - **NOMA**: when both users hold packets they are served simultaneously
//!   at reduced, superposition-coded rates (μ′₁, μ′₂); a user alone in the
//!   system is served at its full solo rate.
//! - **OMA**: users are served one at a time at their solo rates; the other
//!   user's packet, if any, waits and keeps its generation time.
//!
//! Arrivals are Poisson per user and always preempt that user's own packet.
//! The crate provides the parameter model with its feasibility constraints
//! ([`SystemParams`], [`check_noma_constraints`]), chart builders for the
//! generic engine ([`build_noma_chart`], [`build_oma_chart`]), independent
//! hand-derived closed-form solvers used as cross-checks
//! ([`solve_noma_closed_form`], [`solve_oma_closed_form`]), saturated-arrival
//! limit formulas and the NOMA-vs-OMA crossover search ([`crossover_alpha`]).

mod charts;
mod closed_form;
mod error;
mod limits;
mod params;
mod report;

pub use charts::{build_noma_chart, build_oma_chart, Perspective};
pub use closed_form::{
    noma_age_matrix, noma_age_rhs, noma_stationary_system, oma_age_matrix, oma_age_rhs,
    oma_stationary_system, solve_closed_form, solve_noma_closed_form, solve_oma_closed_form,
    NomaAgeMatrixForm,
};
pub use error::ModelError;
pub use limits::{crossover_alpha, noma_limit_total, oma_limit_total};
pub use params::{
    check_noma_constraints, noma_rates_from_alpha, ConstraintFinding, ConstraintReport,
    NomaConstraint, RateDerivation, Scheme, SystemParams,
};
pub use report::{solve_engine, AgeReport, Method};
