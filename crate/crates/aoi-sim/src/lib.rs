//! Event-driven simulator for the two-user preemptive status-update system.
//!
//! This crate estimates time-average information ages by simulating the full
//! continuous-time dynamics: exponential arrival clocks per user, exponential
//! service clocks per discipline, single-packet-per-user buffers with
//! preemptive replacement. It deliberately shares no solver code with the
//! analytical crates — it is the independent ground truth they are checked
//! against.
//!
//! Two service disciplines are covered, selected by [`Scheme`]:
//!
//! * **Noma** — both users' packets are served simultaneously; a user is
//!   served at the full rate μ when alone and at the reduced rate μ′ when
//!   both are in service.
//! * **Oma** — one user is served at a time at full rate; the other user's
//!   packet, if any, waits and keeps its generation timestamp.
//!
//! A run is a single sequential event loop driven by one seeded RNG, so a
//! given `(params, config)` pair always produces a bit-identical
//! [`SimResult`]. Confidence intervals come from batch means over the
//! post-warmup horizon.

mod config;
mod error;
mod sim;
mod stats;

pub use config::SimConfig;
pub use error::SimError;
pub use sim::{
    integrate_age_segment, simulate, simulate_full, EventKind, SimOutput, SimResult, TraceRow,
};
pub use stats::{batch_stats, student_t_975, BatchStats};

pub use aoi_models::Scheme;
