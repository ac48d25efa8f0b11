//! Helpers shared by the subcommands: config loading, the feasibility gate,
//! canonical parameter rendering, and the winner rule.

use std::fs;
use std::path::Path;

use aoi_models::{check_noma_constraints, AgeReport, RateDerivation, SystemParams};

use crate::error::CliError;
use crate::json::JsonValue;

/// Reads and parses the canonical JSON parameter file.
pub fn load_params(path: &Path) -> Result<SystemParams, CliError> {
    let text = fs::read_to_string(path).map_err(|e| {
        CliError::Usage(format!("cannot read config {}: {e}", path.display()))
    })?;
    Ok(SystemParams::from_json_str(&text)?)
}

/// Prints constraint findings to stderr and enforces the feasibility gate:
/// a strict solo-rate-cap violation aborts with the infeasible-parameters
/// exit code unless `allow_infeasible` is set. Boundary equalities and
/// sum-rate findings are warnings only.
///
/// The gate guards the shared-service (NOMA) model; commands that analyze
/// the exclusive discipline alone skip it, since those parameters never use
/// the superposed rates.
pub fn enforce_feasibility(
    params: &SystemParams,
    context: &str,
    allow_infeasible: bool,
) -> Result<(), CliError> {
    let delta = params.recorded_delta().unwrap_or(0.5);
    let report = check_noma_constraints(params, delta);
    for finding in &report.warnings {
        eprintln!("warning: {context}: {}", finding.detail);
    }
    for finding in &report.violations {
        eprintln!("warning: {context}: constraint violated: {}", finding.detail);
    }
    if report.solo_cap_violated() && !allow_infeasible {
        return Err(CliError::Infeasible(format!(
            "{context}: a superposed service rate exceeds its solo rate \
             (rerun with --allow-infeasible to analyze anyway)"
        )));
    }
    Ok(())
}

/// Canonical parameter JSON: `lambda1, lambda2, mu1, mu2, noma{...}` with
/// the noma object spelling out the derivation mode. Round-trips through
/// the config parser.
pub fn params_json(params: &SystemParams) -> JsonValue {
    let noma = match params.derivation {
        RateDerivation::AlphaDelta { alpha, delta } => JsonValue::Obj(vec![
            ("mode", JsonValue::Str("alpha".into())),
            ("alpha", JsonValue::Num(alpha)),
            ("delta", JsonValue::Num(delta)),
            ("mu1p", JsonValue::Num(params.mu1p)),
            ("mu2p", JsonValue::Num(params.mu2p)),
        ]),
        RateDerivation::Explicit => JsonValue::Obj(vec![
            ("mode", JsonValue::Str("explicit".into())),
            ("mu1p", JsonValue::Num(params.mu1p)),
            ("mu2p", JsonValue::Num(params.mu2p)),
        ]),
    };
    JsonValue::Obj(vec![
        ("lambda1", JsonValue::Num(params.lambda1)),
        ("lambda2", JsonValue::Num(params.lambda2)),
        ("mu1", JsonValue::Num(params.mu1)),
        ("mu2", JsonValue::Num(params.mu2)),
        ("noma", noma),
    ])
}

/// Flat age-report object: the three ages plus the method tag.
pub fn report_json(report: &AgeReport) -> JsonValue {
    JsonValue::Obj(vec![
        ("age_user1", JsonValue::Num(report.age_user1)),
        ("age_user2", JsonValue::Num(report.age_user2)),
        ("age_total", JsonValue::Num(report.age_total)),
        ("method", JsonValue::Str(report.method.as_str().into())),
    ])
}

/// Largest relative disagreement between two reports across the three age
/// figures.
pub fn agreement_delta(a: &AgeReport, b: &AgeReport) -> f64 {
    [
        (a.age_user1, b.age_user1),
        (a.age_user2, b.age_user2),
        (a.age_total, b.age_total),
    ]
    .into_iter()
    .map(|(x, y)| (x - y).abs() / x.abs().max(y.abs()).max(f64::MIN_POSITIVE))
    .fold(0.0, f64::max)
}

/// Winner rule shared by every comparison output: the scheme with the
/// smaller total age wins; totals within 1e-9 (relative to scale, absolute
/// near zero) are a tie. Deterministically recomputable from the two totals.
pub fn winner(oma_total: f64, noma_total: f64) -> &'static str {
    let band = 1e-9 * oma_total.abs().max(noma_total.abs()).max(1.0);
    if (oma_total - noma_total).abs() <= band {
        "tie"
    } else if oma_total < noma_total {
        "oma"
    } else {
        "noma"
    }
}

/// The high-arrival-rate proxy: both arrival rates set to
/// `scale · max(μ₁, μ₂)`.
pub fn lambda_inf_proxy(params: &SystemParams, scale: f64) -> SystemParams {
    let lambda = scale * params.mu1.max(params.mu2);
    params.with_arrival_rates(lambda, lambda)
}
