//! Chart builders for the two disciplines.
//!
//! Both charts track a two-component age vector from one user's perspective:
//! component 0 is that user's age at the monitor (always drifting), component
//! 1 the age of their packet in the system (drifting only while present).
//! The other user's perspective is the same construction on role-swapped
//! parameters, so a single transition table serves both.
//!
//! Arrivals of the *other* user that merely replace that user's own packet
//! change nothing about the monitored age process; such self-loops are
//! omitted from the charts (they cancel identically in both solves).

use shs_core::{ResetMap, ShsChart, Transition};

use crate::error::ModelError;
use crate::params::SystemParams;

/// Which user's age the chart tracks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Perspective {
    User1,
    User2,
}

/// Keep the monitor age, reset the packet age to zero: [x₀, x₁] → [x₀, 0].
fn keep_zero() -> ResetMap {
    vec![vec![1, 0], vec![0, 0]]
}

/// Deliver: monitor age drops to the packet age, system empties:
/// [x₀, x₁] → [x₁, 0].
fn drop_to_packet() -> ResetMap {
    vec![vec![0, 0], vec![1, 0]]
}

/// Both ages carry over unchanged.
fn ident() -> ResetMap {
    vec![vec![1, 0], vec![0, 1]]
}

fn perspective_names(perspective: Perspective) -> (&'static str, &'static str) {
    match perspective {
        Perspective::User1 => ("u1", "u2"),
        Perspective::User2 => ("u2", "u1"),
    }
}

fn oriented(params: &SystemParams, perspective: Perspective) -> SystemParams {
    match perspective {
        Perspective::User1 => params.clone(),
        Perspective::User2 => params.swapped(),
    }
}

/// Builds the 4-state NOMA chart from the given user's perspective.
///
/// States: 0 idle, 1 monitored user alone in service, 2 both in service
/// (superposed rates), 3 other user alone. Ten transitions; the other user's
/// packet-replacing arrivals in states 2 and 3 are omitted self-loops.
pub fn build_noma_chart(
    params: &SystemParams,
    perspective: Perspective,
) -> Result<ShsChart, ModelError> {
    params.validate()?;
    let p = oriented(params, perspective);
    let (me, other) = perspective_names(perspective);
    // From here on, rates are in the monitored user's frame: lambda1/mu1/mu1p
    // belong to the monitored user.
    let chart = ShsChart {
        states: vec![
            "idle".into(),
            format!("{me}-alone"),
            "both".into(),
            format!("{other}-alone"),
        ],
        age_dim: 2,
        drift: vec![vec![1, 0], vec![1, 1], vec![1, 1], vec![1, 0]],
        transitions: vec![
            // Arrival to the empty system.
            Transition::new(0, 1, p.lambda1, keep_zero()),
            Transition::new(0, 3, p.lambda2, keep_zero()),
            // Own arrival preempts the packet in solo service.
            Transition::new(1, 1, p.lambda1, keep_zero()),
            // Solo delivery.
            Transition::new(1, 0, p.mu1, drop_to_packet()),
            // Other user joins: both served, ages carry over.
            Transition::new(1, 2, p.lambda2, ident()),
            // Other user's delivery leaves the monitored user alone.
            Transition::new(2, 1, p.mu2p, ident()),
            // Own arrival preempts the packet in superposed service.
            Transition::new(2, 2, p.lambda1, keep_zero()),
            // Superposed delivery of the monitored user's packet.
            Transition::new(2, 3, p.mu1p, drop_to_packet()),
            // Own arrival while only the other user is served.
            Transition::new(3, 2, p.lambda1, keep_zero()),
            // Other user's solo delivery empties the system.
            Transition::new(3, 0, p.mu2, keep_zero()),
        ],
    };
    debug_assert!(chart.validate().is_ok());
    Ok(chart)
}

/// Builds the 5-state OMA chart from the given user's perspective.
///
/// States: 0 idle, 1 monitored user served (other empty), 2 other served
/// (monitored empty), 3 other served while the monitored user's packet
/// waits, 4 monitored served while the other's packet waits. A waiting
/// packet enters service with its generation time intact, hence the
/// identity reset on transitions out of waiting states.
pub fn build_oma_chart(
    params: &SystemParams,
    perspective: Perspective,
) -> Result<ShsChart, ModelError> {
    params.validate()?;
    let p = oriented(params, perspective);
    let (me, other) = perspective_names(perspective);
    let chart = ShsChart {
        states: vec![
            "idle".into(),
            format!("{me}-served"),
            format!("{other}-served-{me}-empty"),
            format!("{other}-served-{me}-waiting"),
            format!("{me}-served-{other}-waiting"),
        ],
        age_dim: 2,
        drift: vec![vec![1, 0], vec![1, 1], vec![1, 0], vec![1, 1], vec![1, 1]],
        transitions: vec![
            // Arrival to the empty system starts service immediately.
            Transition::new(0, 1, p.lambda1, keep_zero()),
            Transition::new(0, 2, p.lambda2, keep_zero()),
            // Delivery of the monitored user's packet.
            Transition::new(1, 0, p.mu1, drop_to_packet()),
            // Own arrival preempts own packet in service.
            Transition::new(1, 1, p.lambda1, keep_zero()),
            // Other user's arrival waits behind the ongoing service.
            Transition::new(1, 4, p.lambda2, ident()),
            // Other user's delivery from the states without a monitored packet.
            Transition::new(2, 0, p.mu2, ident()),
            // Own arrival waits while the other user is served.
            Transition::new(2, 3, p.lambda1, keep_zero()),
            // Own arrival replaces the own waiting packet.
            Transition::new(3, 3, p.lambda1, keep_zero()),
            // Other user's delivery promotes the waiting packet, age intact.
            Transition::new(3, 1, p.mu2, ident()),
            // Own arrival preempts own packet in service, other still waits.
            Transition::new(4, 4, p.lambda1, keep_zero()),
            // Delivery of the monitored user's packet, other user enters service.
            Transition::new(4, 2, p.mu1, drop_to_packet()),
        ],
    };
    debug_assert!(chart.validate().is_ok());
    Ok(chart)
}
