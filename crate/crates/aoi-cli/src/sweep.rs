//! The sweep subcommand: evaluates both disciplines over a parameter grid,
//! emits a comparison CSV, and optionally renders the two-series chart.

use std::fs;
use std::path::PathBuf;

use aoi_models::{crossover_alpha, solve_engine, AgeReport, Scheme, SystemParams};
use aoi_sim::{simulate, SimConfig, SimResult};
use clap::{Args, ValueEnum};

use crate::common::{enforce_feasibility, lambda_inf_proxy, load_params, winner};
use crate::error::CliError;
use crate::json::fmt_sig12;
use crate::svg::{render_chart, ChartSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepVar {
    /// Spectral-efficiency factor of the shared discipline; the parameter
    /// file must use the alpha derivation mode.
    Alpha,
    /// Common arrival rate λ₁ = λ₂.
    Lambda,
}

impl SweepVar {
    fn label(self) -> &'static str {
        match self {
            Self::Alpha => "alpha",
            Self::Lambda => "lambda",
        }
    }
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    /// Parameter file (canonical JSON schema)
    #[arg(long, value_name = "PATH")]
    pub config: PathBuf,
    /// Sweep variable
    #[arg(long, value_enum, default_value_t = SweepVar::Alpha)]
    pub param: SweepVar,
    /// Grid start (defaults: alpha 1, lambda 1e-3)
    #[arg(long)]
    pub from: Option<f64>,
    /// Grid end (defaults: alpha 2, lambda 10)
    #[arg(long)]
    pub to: Option<f64>,
    /// Grid size, endpoints included
    #[arg(long, default_value_t = 101)]
    pub steps: usize,
    /// Logarithmic grid; implied for lambda sweeps with a fully default range
    #[arg(long)]
    pub log: bool,
    /// Add simulated columns (per-point seeds derived as seed + index)
    #[arg(long)]
    pub simulate: bool,
    /// Events per simulated point
    #[arg(long, default_value_t = 1_000_000)]
    pub events: u64,
    /// Base RNG seed for --simulate
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write the comparison table here instead of standard output
    #[arg(long, value_name = "PATH")]
    pub csv: Option<PathBuf>,
    /// Also render a two-series chart
    #[arg(long, value_name = "PATH")]
    pub svg: Option<PathBuf>,
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

/// Evenly spaced grid over [from, to], endpoints exact; geometric spacing
/// when `log` is set.
pub fn build_grid(from: f64, to: f64, steps: usize, log: bool) -> Result<Vec<f64>, CliError> {
    if !(from.is_finite() && to.is_finite() && from < to) {
        return Err(CliError::Usage(format!(
            "sweep range must satisfy from < to, got {from}..{to}"
        )));
    }
    if steps < 2 {
        return Err(CliError::Usage(format!(
            "sweep needs at least 2 steps, got {steps}"
        )));
    }
    if log && from <= 0.0 {
        return Err(CliError::Usage(format!(
            "logarithmic grids need a positive start, got {from}"
        )));
    }
    let n = steps - 1;
    Ok((0..=n)
        .map(|i| {
            if i == 0 {
                from
            } else if i == n {
                to
            } else if log {
                (from.ln() + (to.ln() - from.ln()) * i as f64 / n as f64).exp()
            } else {
                from + (to - from) * i as f64 / n as f64
            }
        })
        .collect())
}

pub struct SweepRow {
    pub value: f64,
    pub oma: AgeReport,
    pub noma: AgeReport,
    pub sim: Option<(SimResult, SimResult)>,
}

const CSV_HEADER: &str =
    "value,oma_total,noma_total,oma_user1,oma_user2,noma_user1,noma_user2,winner";
const CSV_SIM_HEADER: &str = ",sim_oma_user1,sim_oma_user2,sim_oma_total,\
    sim_oma_ci_user1,sim_oma_ci_user2,sim_noma_user1,sim_noma_user2,\
    sim_noma_total,sim_noma_ci_user1,sim_noma_ci_user2";

/// Renders the comparison table. The winner column is computed from the
/// *printed* totals, so it is always recomputable from the row itself.
pub fn render_csv(rows: &[SweepRow]) -> String {
    let simulated = rows.iter().any(|r| r.sim.is_some());
    let mut out = String::from(CSV_HEADER);
    if simulated {
        out.push_str(CSV_SIM_HEADER);
    }
    out.push('\n');
    for row in rows {
        let oma_total = fmt_sig12(row.oma.age_total);
        let noma_total = fmt_sig12(row.noma.age_total);
        let verdict = winner(
            oma_total.parse().unwrap_or(row.oma.age_total),
            noma_total.parse().unwrap_or(row.noma.age_total),
        );
        out.push_str(&format!(
            "{},{oma_total},{noma_total},{},{},{},{},{verdict}",
            fmt_sig12(row.value),
            fmt_sig12(row.oma.age_user1),
            fmt_sig12(row.oma.age_user2),
            fmt_sig12(row.noma.age_user1),
            fmt_sig12(row.noma.age_user2),
        ));
        if let Some((oma_sim, noma_sim)) = &row.sim {
            for v in [
                oma_sim.age_user1,
                oma_sim.age_user2,
                oma_sim.age_total,
                oma_sim.ci_half_width_user1,
                oma_sim.ci_half_width_user2,
                noma_sim.age_user1,
                noma_sim.age_user2,
                noma_sim.age_total,
                noma_sim.ci_half_width_user1,
                noma_sim.ci_half_width_user2,
            ] {
                out.push(',');
                out.push_str(&fmt_sig12(v));
            }
        } else if simulated {
            // Defensive: mixed rows never happen (one flag governs all).
            out.push_str(&",".repeat(10));
        }
        out.push('\n');
    }
    out
}

/// Materializes the parameter set for one grid point.
fn point_params(
    base: &SystemParams,
    var: SweepVar,
    value: f64,
) -> Result<SystemParams, CliError> {
    match var {
        SweepVar::Lambda => Ok(base.with_arrival_rates(value, value)),
        SweepVar::Alpha => {
            let delta = base.recorded_delta().ok_or_else(|| {
                CliError::Usage(
                    "alpha sweeps need a config in alpha derivation mode \
                     (the sharing factor delta is required to re-derive the superposed rates)"
                        .to_string(),
                )
            })?;
            Ok(SystemParams::from_alpha(
                base.lambda1,
                base.lambda2,
                base.mu1,
                base.mu2,
                value,
                delta,
            )?)
        }
    }
}

pub fn run(args: &SweepArgs) -> Result<(), CliError> {
    let mut base = load_params(&args.config)?;
    if args.lambda_inf {
        base = lambda_inf_proxy(&base, args.lambda_inf_scale);
    }

    let (default_from, default_to) = match args.param {
        SweepVar::Alpha => (1.0, 2.0),
        SweepVar::Lambda => (1e-3, 10.0),
    };
    // A fully default lambda range means the documented log grid over
    // 1e-3..10; any explicit range choice switches to plain --log control.
    let log = args.log
        || (args.param == SweepVar::Lambda && args.from.is_none() && args.to.is_none());
    let from = args.from.unwrap_or(default_from);
    let to = args.to.unwrap_or(default_to);
    if args.param == SweepVar::Alpha && !(from >= 1.0 && to <= 2.0) {
        return Err(CliError::Usage(format!(
            "alpha sweeps are constrained to [1, 2], got {from}..{to}"
        )));
    }
    let grid = build_grid(from, to, args.steps, log)?;

    let mut rows = Vec::with_capacity(grid.len());
    for (index, &value) in grid.iter().enumerate() {
        let params = point_params(&base, args.param, value)?;
        enforce_feasibility(
            &params,
            &format!("{} = {}", args.param.label(), fmt_sig12(value)),
            args.allow_infeasible,
        )?;
        let oma = solve_engine(&params, Scheme::Oma)?;
        let noma = solve_engine(&params, Scheme::Noma)?;
        let sim = if args.simulate {
            // Documented stream-splitting rule: point i uses seed + i.
            let seed = args.seed.wrapping_add(index as u64);
            let oma_sim = simulate(&params, &SimConfig::new(Scheme::Oma, seed, args.events))?;
            let noma_sim = simulate(&params, &SimConfig::new(Scheme::Noma, seed, args.events))?;
            Some((oma_sim, noma_sim))
        } else {
            None
        };
        rows.push(SweepRow {
            value,
            oma,
            noma,
            sim,
        });
    }

    let csv = render_csv(&rows);
    match &args.csv {
        Some(path) => {
            fs::write(path, &csv)?;
            eprintln!("wrote {} rows to {}", rows.len(), path.display());
        }
        None => print!("{csv}"),
    }

    if let Some(path) = &args.svg {
        let x: Vec<f64> = rows.iter().map(|r| r.value).collect();
        let oma: Vec<f64> = rows.iter().map(|r| r.oma.age_total).collect();
        let noma: Vec<f64> = rows.iter().map(|r| r.noma.age_total).collect();
        let crossover = marker_position(args.param, &base, &x, &noma);
        let svg = render_chart(&ChartSpec {
            x_label: args.param.label(),
            y_label: "total average age",
            x: &x,
            oma: &oma,
            noma: &noma,
            log_x: log,
            crossover,
        });
        fs::write(path, svg)?;
        eprintln!("wrote chart to {}", path.display());
    }
    Ok(())
}

/// Marker for the chart: the high-rate crossover α*, placed on the shared-
/// discipline curve by interpolation, when it falls inside the plotted range.
fn marker_position(
    var: SweepVar,
    base: &SystemParams,
    x: &[f64],
    noma_totals: &[f64],
) -> Option<(f64, f64)> {
    if var != SweepVar::Alpha {
        return None;
    }
    let delta = base.recorded_delta()?;
    let star = crossover_alpha(base.mu1, base.mu2, delta)?;
    let (lo, hi) = (x[0], x[x.len() - 1]);
    if !(lo..=hi).contains(&star) {
        return None;
    }
    let pos = x.iter().position(|&v| v >= star).unwrap_or(x.len() - 1);
    let y = if pos == 0 {
        noma_totals[0]
    } else {
        let (x0, x1) = (x[pos - 1], x[pos]);
        let (y0, y1) = (noma_totals[pos - 1], noma_totals[pos]);
        y0 + (y1 - y0) * (star - x0) / (x1 - x0)
    };
    Some((star, y))
}
