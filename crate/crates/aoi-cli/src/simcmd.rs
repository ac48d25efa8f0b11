//! The simulate subcommand: runs the discrete-event simulator and reports
//! point estimates with confidence intervals; `--check` adds the analytical
//! reference and per-user z-scores, `--trace` dumps the first events as CSV.

use std::fs;
use std::path::PathBuf;

use aoi_models::{solve_engine, Scheme, SystemParams};
use aoi_sim::{simulate_full, SimConfig, SimOutput, TraceRow};
use clap::Args;

use crate::analyze::SchemeArg;
use crate::common::{enforce_feasibility, load_params, params_json};
use crate::error::CliError;
use crate::json::{fmt_sig12, JsonValue};

#[derive(Args, Debug)]
pub struct SimulateArgs {
    /// Parameter file (canonical JSON schema)
    #[arg(long, value_name = "PATH")]
    pub config: PathBuf,
    /// Which discipline(s) to simulate
    #[arg(long, value_enum, default_value_t = SchemeArg::Noma)]
    pub scheme: SchemeArg,
    /// RNG seed; identical seeds reproduce identical output bytes
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of simulated events
    #[arg(long, default_value_t = 1_000_000)]
    pub events: u64,
    /// Batch count for the batch-means confidence interval
    #[arg(long, default_value_t = SimConfig::DEFAULT_BATCHES)]
    pub batches: usize,
    /// Fraction of events discarded as transient
    #[arg(long, default_value_t = SimConfig::DEFAULT_WARMUP_FRACTION)]
    pub warmup_fraction: f64,
    /// Also solve analytically and report per-user z-scores
    #[arg(long)]
    pub check: bool,
    /// Dump the first events as CSV to this path
    #[arg(long, value_name = "PATH")]
    pub trace: Option<PathBuf>,
    /// Maximum number of trace rows
    #[arg(long, default_value_t = 10_000)]
    pub trace_limit: usize,
    /// Keep going when a superposed rate exceeds its solo cap
    #[arg(long)]
    pub allow_infeasible: bool,
}

fn result_json(out: &SimOutput) -> JsonValue {
    let r = &out.result;
    JsonValue::Obj(vec![
        ("age_user1", JsonValue::Num(r.age_user1)),
        ("age_user2", JsonValue::Num(r.age_user2)),
        ("age_total", JsonValue::Num(r.age_total)),
        ("ci_half_width_user1", JsonValue::Num(r.ci_half_width_user1)),
        ("ci_half_width_user2", JsonValue::Num(r.ci_half_width_user2)),
        ("events_processed", JsonValue::Int(r.events_processed)),
        ("sim_time", JsonValue::Num(r.sim_time)),
        ("seed", JsonValue::Int(r.seed)),
    ])
}

fn check_json(
    params: &SystemParams,
    scheme: Scheme,
    out: &SimOutput,
) -> Result<JsonValue, CliError> {
    let exact = solve_engine(params, scheme)?;
    let z1 = (out.result.age_user1 - exact.age_user1) / out.std_error_user1;
    let z2 = (out.result.age_user2 - exact.age_user2) / out.std_error_user2;
    Ok(JsonValue::Obj(vec![
        ("engine_age_user1", JsonValue::Num(exact.age_user1)),
        ("engine_age_user2", JsonValue::Num(exact.age_user2)),
        ("std_error_user1", JsonValue::Num(out.std_error_user1)),
        ("std_error_user2", JsonValue::Num(out.std_error_user2)),
        ("z_user1", JsonValue::Num(z1)),
        ("z_user2", JsonValue::Num(z2)),
    ]))
}

fn run_one(
    params: &SystemParams,
    scheme: Scheme,
    args: &SimulateArgs,
    trace_csv: Option<&mut String>,
) -> Result<(SimOutput, JsonValue), CliError> {
    let config = SimConfig::new(scheme, args.seed, args.events)
        .with_batches(args.batches)
        .with_warmup_fraction(args.warmup_fraction);

    let out = match trace_csv {
        Some(buf) => {
            let limit = args.trace_limit;
            let mut rows = 0usize;
            let mut sink = |row: &TraceRow| {
                if rows < limit {
                    buf.push_str(&format!(
                        "{},{},{},{},{},{},{}\n",
                        fmt_sig12(row.time),
                        row.kind.as_str(),
                        row.user,
                        row.state_before,
                        row.state_after,
                        fmt_sig12(row.age1),
                        fmt_sig12(row.age2),
                    ));
                    rows += 1;
                }
            };
            simulate_full(params, &config, Some(&mut sink))?
        }
        None => simulate_full(params, &config, None)?,
    };

    let mut fields = vec![("result", result_json(&out))];
    if args.check {
        fields.push(("check", check_json(params, scheme, &out)?));
    }
    Ok((out, JsonValue::Obj(fields)))
}

pub fn run(args: &SimulateArgs) -> Result<(), CliError> {
    let params = load_params(&args.config)?;
    if args.scheme.touches_noma() {
        enforce_feasibility(&params, "config", args.allow_infeasible)?;
    }

    let schemes = args.scheme.schemes();
    let mut trace_csv = args
        .trace
        .as_ref()
        .map(|_| String::from("time,event,user,state_before,state_after,age1,age2\n"));

    let output = if schemes.len() == 1 {
        let scheme = schemes[0];
        let (_, body) = run_one(&params, scheme, args, trace_csv.as_mut())?;
        let mut fields = vec![
            ("scheme", JsonValue::Str(scheme.as_str().into())),
            ("params", params_json(&params)),
        ];
        match body {
            JsonValue::Obj(inner) => fields.extend(inner),
            _ => unreachable!("run_one always returns an object"),
        }
        JsonValue::Obj(fields)
    } else {
        // Both disciplines in one call; the trace, when requested, records
        // the first discipline's events only (one file, one header).
        let mut fields = vec![("params", params_json(&params))];
        let mut first = true;
        for &scheme in schemes {
            let sink = if first { trace_csv.as_mut() } else { None };
            let (_, body) = run_one(&params, scheme, args, sink)?;
            fields.push((scheme.as_str(), body));
            first = false;
        }
        JsonValue::Obj(fields)
    };
    println!("{}", output.render());

    if let (Some(path), Some(csv)) = (&args.trace, &trace_csv) {
        fs::write(path, csv)?;
        eprintln!("wrote event trace to {}", path.display());
    }
    Ok(())
}
