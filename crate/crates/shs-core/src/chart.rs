//! Chart description and validation.
//!
//! A chart couples a finite directed transition graph (the discrete chain)
//! with per-state binary drift vectors and per-transition binary reset maps
//! acting on a continuous age vector. [`validate_chart`] checks every
//! structural invariant the engine relies on and returns all violations at
//! once rather than stopping at the first.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Binary reset map, applied to a row age vector as `x' = x · A`.
///
/// Entry `A[i][j] = 1` copies input component `i` into output component `j`;
/// a zero column resets that output component to 0.
pub type ResetMap = Vec<Vec<u8>>;

/// One directed transition of the chart.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Transition {
    pub source: usize,
    pub target: usize,
    pub rate: f64,
    pub reset: ResetMap,
}

impl Transition {
    pub fn new(source: usize, target: usize, rate: f64, reset: ResetMap) -> Self {
        Self {
            source,
            target,
            rate,
            reset,
        }
    }

    pub fn is_self_loop(&self) -> bool {
        self.source == self.target
    }
}

/// A piecewise-linear stochastic hybrid system chart.
///
/// The canonical serialized form is a JSON object with `states`, `age_dim`,
/// `drift` and `transitions` keys, so fixtures can live in files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShsChart {
    /// Human-readable state labels; the chart has one discrete state per label.
    pub states: Vec<String>,
    /// Dimension of the continuous age vector.
    pub age_dim: usize,
    /// Per-state drift: 1 where the component grows at unit rate, 0 where it
    /// is pinned at zero.
    pub drift: Vec<Vec<u8>>,
    pub transitions: Vec<Transition>,
}

impl ShsChart {
    pub fn n_states(&self) -> usize {
        self.states.len()
    }

    /// Convenience wrapper over [`validate_chart`].
    pub fn validate(&self) -> Result<(), Vec<ChartViolation>> {
        let violations = validate_chart(self);
        if violations.is_empty() {
            Ok(())
        } else {
            Err(violations)
        }
    }
}

/// One violated chart invariant, with the offending index where applicable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChartViolation {
    NoStates,
    ZeroAgeDim,
    DriftCountMismatch { expected: usize, found: usize },
    DriftWrongLength { state: usize },
    DriftEntryNotBinary { state: usize, component: usize },
    EndpointOutOfRange { transition: usize },
    NonpositiveRate { transition: usize },
    ResetWrongShape { transition: usize },
    ResetEntryNotBinary { transition: usize, row: usize, col: usize },
    ResetColumnNotSelection { transition: usize, col: usize },
    NotStronglyConnected,
}

impl fmt::Display for ChartViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NoStates => write!(f, "chart has no states"),
            Self::ZeroAgeDim => write!(f, "age vector dimension is zero"),
            Self::DriftCountMismatch { expected, found } => {
                write!(f, "expected {expected} drift vectors, found {found}")
            }
            Self::DriftWrongLength { state } => {
                write!(f, "drift vector of state {state} has wrong length")
            }
            Self::DriftEntryNotBinary { state, component } => write!(
                f,
                "drift entry of state {state}, component {component} is not 0/1"
            ),
            Self::EndpointOutOfRange { transition } => {
                write!(f, "endpoint out of range at transition {transition}")
            }
            Self::NonpositiveRate { transition } => {
                write!(f, "nonpositive rate at transition {transition}")
            }
            Self::ResetWrongShape { transition } => {
                write!(f, "reset map of transition {transition} is not age_dim × age_dim")
            }
            Self::ResetEntryNotBinary { transition, row, col } => write!(
                f,
                "reset entry ({row},{col}) of transition {transition} is not 0/1"
            ),
            Self::ResetColumnNotSelection { transition, col } => write!(
                f,
                "reset column {col} of transition {transition} mixes several input components"
            ),
            Self::NotStronglyConnected => write!(f, "not strongly connected"),
        }
    }
}

/// Checks every structural invariant of a chart and returns all violations.
///
/// An empty result means the chart is safe to hand to the engine: endpoints
/// in range, rates strictly positive and finite, drift and reset entries
/// binary, each reset column selecting at most one input component (so a
/// nonnegative age vector stays nonnegative, without amplification), and the
/// non-self transition graph strongly connected (ergodicity prerequisite).
pub fn validate_chart(chart: &ShsChart) -> Vec<ChartViolation> {
    let mut violations = Vec::new();
    let n = chart.n_states();
    let d = chart.age_dim;

    if n == 0 {
        violations.push(ChartViolation::NoStates);
    }
    if d == 0 {
        violations.push(ChartViolation::ZeroAgeDim);
    }

    if chart.drift.len() != n {
        violations.push(ChartViolation::DriftCountMismatch {
            expected: n,
            found: chart.drift.len(),
        });
    }
    for (state, b) in chart.drift.iter().enumerate() {
        if b.len() != d {
            violations.push(ChartViolation::DriftWrongLength { state });
            continue;
        }
        for (component, &entry) in b.iter().enumerate() {
            if entry > 1 {
                violations.push(ChartViolation::DriftEntryNotBinary { state, component });
            }
        }
    }

    for (idx, t) in chart.transitions.iter().enumerate() {
        if t.source >= n || t.target >= n {
            violations.push(ChartViolation::EndpointOutOfRange { transition: idx });
        }
        if !(t.rate > 0.0 && t.rate.is_finite()) {
            violations.push(ChartViolation::NonpositiveRate { transition: idx });
        }
        if t.reset.len() != d || t.reset.iter().any(|row| row.len() != d) {
            violations.push(ChartViolation::ResetWrongShape { transition: idx });
            continue;
        }
        for (row, r) in t.reset.iter().enumerate() {
            for (col, &entry) in r.iter().enumerate() {
                if entry > 1 {
                    violations.push(ChartViolation::ResetEntryNotBinary {
                        transition: idx,
                        row,
                        col,
                    });
                }
            }
        }
        for col in 0..d {
            let nonzeros = (0..d).filter(|&row| t.reset[row][col] != 0).count();
            if nonzeros > 1 {
                violations.push(ChartViolation::ResetColumnNotSelection {
                    transition: idx,
                    col,
                });
            }
        }
    }

    // Strong connectivity over well-formed non-self edges; only meaningful
    // once the graph itself is well-formed.
    if n > 0 && !violations.iter().any(|v| matches!(v, ChartViolation::EndpointOutOfRange { .. })) {
        let edges: Vec<(usize, usize)> = chart
            .transitions
            .iter()
            .filter(|t| !t.is_self_loop())
            .map(|t| (t.source, t.target))
            .collect();
        if !strongly_connected(n, &edges) {
            violations.push(ChartViolation::NotStronglyConnected);
        }
    }

    violations
}

/// Strong connectivity by forward and backward reachability from state 0.
fn strongly_connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let reach = |forward: bool| {
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(q) = stack.pop() {
            for &(s, t) in edges {
                let (from, to) = if forward { (s, t) } else { (t, s) };
                if from == q && !seen[to] {
                    seen[to] = true;
                    stack.push(to);
                }
            }
        }
        seen
    };
    reach(true).iter().all(|&s| s) && reach(false).iter().all(|&s| s)
}
