//! Stationary distribution, age correlations and average age for a chart.
//!
//! For an ergodic chart the discrete chain has a stationary distribution π̄
//! solving the global balance equations. The limiting state-age correlation
//! vectors v̄_q then solve one linear equation per (state, component):
//!
//! ```text
//! v̄_q · (Σ_{l out of q} λ_l)  =  b_q·π̄_q  +  Σ_{l into q} λ_l · (v̄_source(l) · A_l)
//! ```
//!
//! with self-transitions included on both sides (they cancel only in
//! components whose reset column is the identity column). The average age
//! seen by a monitor is the sum over states of the monitored component of v̄.
//!
//! Both solves normalize all rates by the largest one first — a pure time
//! rescaling that leaves π̄ bit-identical and scales v̄ by the same factor,
//! applied so residual diagnostics are scale-free and meaningful for rates
//! spanning many orders of magnitude. Solutions are mapped back to the
//! caller's time unit before being returned.

use crate::chart::{ShsChart, Transition};
use crate::error::ShsError;
use crate::linalg::{residual_inf, solve_dense};

/// Tolerances for the engine's internal self-checks.
#[derive(Debug, Clone, Copy)]
pub struct EngineOptions {
    /// Max-norm bound on the balance residual of π̄ (rate-normalized assembly).
    pub balance_tol: f64,
    /// Bound on the correlation residual, relative to `1 + ‖solution‖∞`.
    pub correlation_tol: f64,
    /// Negative components within this tolerance (relative to the solution
    /// scale) are clamped to zero; anything more negative is an error.
    pub nonneg_tol: f64,
}

impl Default for EngineOptions {
    fn default() -> Self {
        Self {
            balance_tol: 1e-12,
            correlation_tol: 1e-10,
            nonneg_tol: 1e-12,
        }
    }
}

/// Stationary distribution of the discrete chain.
#[derive(Debug, Clone, PartialEq)]
pub struct StationaryDistribution {
    /// One probability per state; nonnegative, summing to 1.
    pub probabilities: Vec<f64>,
}

/// Limiting state-age correlation vectors, one row per state.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationTable {
    /// `v[q][c]` is the stationary correlation of age component `c` with
    /// occupancy of state `q`; summing a column over states yields the
    /// time-average of that component.
    pub v: Vec<Vec<f64>>,
}

impl CorrelationTable {
    /// Sum of one age component over all states.
    pub fn component_sum(&self, component: usize) -> f64 {
        self.v.iter().map(|row| row[component]).sum()
    }
}

/// Largest rate among the given transitions, used as the normalization
/// scale; 1 when there are none (nothing to normalize). The stationary solve
/// passes only non-self transitions so that adding a self-transition cannot
/// perturb its scale (self-loops never enter the balance assembly).
fn rate_scale<'a>(transitions: impl Iterator<Item = &'a Transition>) -> f64 {
    let max = transitions.map(|t| t.rate).fold(f64::NEG_INFINITY, f64::max);
    if max.is_finite() && max > 0.0 {
        max
    } else {
        1.0
    }
}

/// Balance operator `M` with rates multiplied by `rate_factor`:
/// `(M π̄)_q = π̄_q·(outflow of q) − Σ inflows to q`. Self-transitions cancel
/// identically and are skipped.
fn assemble_balance(chart: &ShsChart, rate_factor: f64) -> Vec<Vec<f64>> {
    let n = chart.n_states();
    let mut m = vec![vec![0.0; n]; n];
    for t in chart.transitions.iter().filter(|t| !t.is_self_loop()) {
        let rate = t.rate * rate_factor;
        m[t.source][t.source] += rate;
        m[t.target][t.source] -= rate;
    }
    m
}

/// Correlation system `(M, rhs)` over unknowns indexed `q·age_dim + c`,
/// with rates multiplied by `rate_factor`. Self-transitions are included on
/// both sides.
fn assemble_correlation(
    chart: &ShsChart,
    pi: &[f64],
    rate_factor: f64,
) -> (Vec<Vec<f64>>, Vec<f64>) {
    let n = chart.n_states();
    let d = chart.age_dim;
    let size = n * d;
    let mut m = vec![vec![0.0; size]; size];
    let mut rhs = vec![0.0; size];

    for t in &chart.transitions {
        let rate = t.rate * rate_factor;
        for c in 0..d {
            // Outflow of every component of the source state.
            m[t.source * d + c][t.source * d + c] += rate;
            // Inflow into the target state through the reset map.
            for i in 0..d {
                if t.reset[i][c] != 0 {
                    m[t.target * d + c][t.source * d + i] -= rate;
                }
            }
        }
    }
    for q in 0..n {
        for c in 0..d {
            rhs[q * d + c] = f64::from(chart.drift[q][c]) * pi[q];
        }
    }
    (m, rhs)
}

fn validated(chart: &ShsChart) -> Result<(), ShsError> {
    chart.validate().map_err(ShsError::InvalidChart)
}

fn check_pi_len(chart: &ShsChart, pi: &StationaryDistribution) -> Result<(), ShsError> {
    if pi.probabilities.len() != chart.n_states() {
        return Err(ShsError::DimensionMismatch {
            context: "stationary distribution",
            expected: chart.n_states(),
            found: pi.probabilities.len(),
        });
    }
    Ok(())
}

fn clamp_nonnegative(
    xs: &mut [f64],
    threshold: f64,
    context: &'static str,
) -> Result<(), ShsError> {
    for (index, x) in xs.iter_mut().enumerate() {
        if *x < 0.0 {
            if *x >= -threshold {
                *x = 0.0;
            } else {
                return Err(ShsError::NegativeComponent {
                    context,
                    index,
                    value: *x,
                });
            }
        }
    }
    Ok(())
}

fn max_abs(xs: &[f64]) -> f64 {
    xs.iter().fold(0.0_f64, |m, &x| m.max(x.abs()))
}

/// Stationary distribution with default tolerances.
pub fn stationary_distribution(chart: &ShsChart) -> Result<StationaryDistribution, ShsError> {
    stationary_distribution_with(chart, &EngineOptions::default())
}

/// Solves the global balance equations plus normalization.
///
/// One balance row is redundant for a connected chain and is replaced by the
/// normalization row Σπ̄ = 1; the residual check afterwards covers all
/// balance rows, so the dropped one is still verified.
pub fn stationary_distribution_with(
    chart: &ShsChart,
    options: &EngineOptions,
) -> Result<StationaryDistribution, ShsError> {
    validated(chart)?;
    let n = chart.n_states();
    let scale = rate_scale(chart.transitions.iter().filter(|t| !t.is_self_loop()));
    let balance = assemble_balance(chart, 1.0 / scale);

    let mut system: Vec<Vec<f64>> = balance[..n - 1].to_vec();
    system.push(vec![1.0; n]);
    let mut rhs = vec![0.0; n];
    rhs[n - 1] = 1.0;

    let mut pi = solve_dense(system, rhs).map_err(|info| ShsError::SingularSystem {
        context: "stationary distribution",
        step: info.step,
        pivot: info.pivot,
    })?;
    clamp_nonnegative(&mut pi, options.nonneg_tol, "stationary distribution")?;

    let residual = balance_residual_of(&balance, &pi);
    if residual > options.balance_tol {
        return Err(ShsError::ResidualTooLarge {
            context: "stationary distribution",
            residual,
            tolerance: options.balance_tol,
        });
    }
    Ok(StationaryDistribution { probabilities: pi })
}

fn balance_residual_of(balance: &[Vec<f64>], pi: &[f64]) -> f64 {
    let zero = vec![0.0; pi.len()];
    let balance_part = residual_inf(balance, pi, &zero);
    let normalization = (pi.iter().sum::<f64>() - 1.0).abs();
    balance_part.max(normalization)
}

/// Max-norm residual of π̄ against the rate-normalized balance equations
/// (including the normalization row). Diagnostic counterpart of the check
/// performed inside [`stationary_distribution`].
pub fn balance_residual(chart: &ShsChart, pi: &StationaryDistribution) -> f64 {
    let scale = rate_scale(chart.transitions.iter().filter(|t| !t.is_self_loop()));
    let balance = assemble_balance(chart, 1.0 / scale);
    balance_residual_of(&balance, &pi.probabilities)
}

/// Correlation table with default tolerances.
pub fn correlation_table(
    chart: &ShsChart,
    pi: &StationaryDistribution,
) -> Result<CorrelationTable, ShsError> {
    correlation_table_with(chart, pi, &EngineOptions::default())
}

/// Solves the full `n_states · age_dim` correlation system.
///
/// No reduction is applied: components that are structurally zero (no drift
/// and no inbound reset feeding them) emerge as zero from the solve rather
/// than being assumed away.
pub fn correlation_table_with(
    chart: &ShsChart,
    pi: &StationaryDistribution,
    options: &EngineOptions,
) -> Result<CorrelationTable, ShsError> {
    validated(chart)?;
    check_pi_len(chart, pi)?;
    let d = chart.age_dim;
    let scale = rate_scale(chart.transitions.iter());

    let (m, rhs) = assemble_correlation(chart, &pi.probabilities, 1.0 / scale);
    let mut w = solve_dense(m.clone(), rhs.clone()).map_err(|info| ShsError::SingularSystem {
        context: "correlation system (the chart admits no finite stationary age, \
                  violating the solvability premise of the age analysis)",
        step: info.step,
        pivot: info.pivot,
    })?;

    let solution_scale = max_abs(&w).max(1.0);
    let residual = residual_inf(&m, &w, &rhs);
    let tolerance = options.correlation_tol * solution_scale;
    if residual > tolerance {
        return Err(ShsError::ResidualTooLarge {
            context: "correlation system",
            residual,
            tolerance,
        });
    }
    clamp_nonnegative(&mut w, options.nonneg_tol * solution_scale, "correlation table")?;

    // Undo the rate normalization: ages in the caller's time unit.
    let v = w
        .chunks(d)
        .map(|row| row.iter().map(|&x| x / scale).collect())
        .collect();
    Ok(CorrelationTable { v })
}

/// Correlation system `(matrix, rhs)` assembled in the chart's original rate
/// units, unknowns indexed `q·age_dim + c`. Exposed so alternative solvers
/// and hand-derived systems can be compared entry by entry.
pub fn correlation_system(
    chart: &ShsChart,
    pi: &StationaryDistribution,
) -> Result<(Vec<Vec<f64>>, Vec<f64>), ShsError> {
    validated(chart)?;
    check_pi_len(chart, pi)?;
    Ok(assemble_correlation(chart, &pi.probabilities, 1.0))
}

/// Max-norm residual of a correlation table against the rate-normalized
/// correlation system. Diagnostic counterpart of the internal solve check.
pub fn correlation_residual(
    chart: &ShsChart,
    pi: &StationaryDistribution,
    table: &CorrelationTable,
) -> f64 {
    let scale = rate_scale(chart.transitions.iter());
    let (m, rhs) = assemble_correlation(chart, &pi.probabilities, 1.0 / scale);
    let w: Vec<f64> = table
        .v
        .iter()
        .flat_map(|row| row.iter().map(|&x| x * scale))
        .collect();
    residual_inf(&m, &w, &rhs)
}

/// Average age with default tolerances.
pub fn average_age(chart: &ShsChart, components: &[usize]) -> Result<f64, ShsError> {
    average_age_with(chart, components, &EngineOptions::default())
}

/// Time-average of the selected age components: the full pipeline
/// (stationary distribution, correlation table, component sums).
pub fn average_age_with(
    chart: &ShsChart,
    components: &[usize],
    options: &EngineOptions,
) -> Result<f64, ShsError> {
    for &c in components {
        if c >= chart.age_dim {
            return Err(ShsError::DimensionMismatch {
                context: "age component selection",
                expected: chart.age_dim,
                found: c,
            });
        }
    }
    let pi = stationary_distribution_with(chart, options)?;
    let table = correlation_table_with(chart, &pi, options)?;
    Ok(components.iter().map(|&c| table.component_sum(c)).sum())
}
