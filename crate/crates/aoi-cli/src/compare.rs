//! The compare subcommand: one parameter set, both disciplines, the
//! high-rate limit references, and — when the parameters are α-derived —
//! the crossover factor at which the two limits meet.

use std::path::PathBuf;

use aoi_models::{crossover_alpha, noma_limit_total, oma_limit_total, solve_engine, Scheme};
use clap::Args;

use crate::common::{
    enforce_feasibility, lambda_inf_proxy, load_params, params_json, report_json, winner,
};
use crate::error::CliError;
use crate::json::{fmt_sig12, JsonValue};

#[derive(Args, Debug)]
pub struct CompareArgs {
    /// Parameter file (canonical JSON schema)
    #[arg(long, value_name = "PATH")]
    pub config: PathBuf,
    /// Replace both arrival rates with the high-rate proxy
    /// (lambda-inf-scale times the larger solo service rate)
    #[arg(long)]
    pub lambda_inf: bool,
    /// Multiplier used by --lambda-inf
    #[arg(long, default_value_t = 1e4, value_name = "FACTOR")]
    pub lambda_inf_scale: f64,
    /// Keep going when a superposed rate exceeds its solo cap
    #[arg(long)]
    pub allow_infeasible: bool,
}

/// Winner verdict over totals as they will be printed, so the judgment is
/// recomputable from the emitted numbers.
fn printed_winner(oma_total: f64, noma_total: f64) -> &'static str {
    let oma = fmt_sig12(oma_total).parse().unwrap_or(oma_total);
    let noma = fmt_sig12(noma_total).parse().unwrap_or(noma_total);
    winner(oma, noma)
}

pub fn run(args: &CompareArgs) -> Result<(), CliError> {
    let mut params = load_params(&args.config)?;
    if args.lambda_inf {
        params = lambda_inf_proxy(&params, args.lambda_inf_scale);
    }
    enforce_feasibility(&params, "config", args.allow_infeasible)?;

    let oma = solve_engine(&params, Scheme::Oma)?;
    let noma = solve_engine(&params, Scheme::Noma)?;

    let oma_limit = oma_limit_total(params.mu1, params.mu2);
    let noma_limit = noma_limit_total(params.mu1p, params.mu2p);

    let mut fields = vec![
        ("params", params_json(&params)),
        ("oma", report_json(&oma)),
        ("noma", report_json(&noma)),
        (
            "winner",
            JsonValue::Str(printed_winner(oma.age_total, noma.age_total).into()),
        ),
        (
            "limits",
            JsonValue::Obj(vec![
                ("oma_limit_total", JsonValue::Num(oma_limit)),
                ("noma_limit_total", JsonValue::Num(noma_limit)),
                (
                    "winner",
                    JsonValue::Str(printed_winner(oma_limit, noma_limit).into()),
                ),
            ]),
        ),
    ];
    if let Some(delta) = params.recorded_delta() {
        let star = crossover_alpha(params.mu1, params.mu2, delta);
        fields.push((
            "crossover_alpha",
            star.map_or(JsonValue::Null, JsonValue::Num),
        ));
    }
    println!("{}", JsonValue::Obj(fields).render());
    Ok(())
}
