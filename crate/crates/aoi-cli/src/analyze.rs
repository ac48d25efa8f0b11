//! The analyze subcommand: solves one parameter set along both independent
//! analytical routes (generic engine and explicit closed-form matrices) and
//! reports their agreement.

use std::fs;
use std::path::PathBuf;

use aoi_models::{solve_closed_form, solve_engine, AgeReport, Scheme, SystemParams};
use clap::{Args, ValueEnum};

use crate::common::{agreement_delta, enforce_feasibility, load_params, params_json, report_json};
use crate::error::CliError;
use crate::json::{fmt_sig12, JsonValue};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SchemeArg {
    Noma,
    Oma,
    Both,
}

impl SchemeArg {
    pub fn schemes(self) -> &'static [Scheme] {
        match self {
            Self::Noma => &[Scheme::Noma],
            Self::Oma => &[Scheme::Oma],
            Self::Both => &[Scheme::Noma, Scheme::Oma],
        }
    }

    /// Whether the shared-service model is analyzed at all; if not, its
    /// feasibility constraints are irrelevant.
    pub fn touches_noma(self) -> bool {
        !matches!(self, Self::Oma)
    }
}

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    /// Parameter file (canonical JSON schema)
    #[arg(long, value_name = "PATH")]
    pub config: PathBuf,
    /// Which discipline(s) to analyze
    #[arg(long, value_enum, default_value_t = SchemeArg::Both)]
    pub scheme: SchemeArg,
    /// Also write a per-method CSV summary to this path
    #[arg(long, value_name = "PATH")]
    pub csv: Option<PathBuf>,
    /// Keep going when a superposed rate exceeds its solo cap
    #[arg(long)]
    pub allow_infeasible: bool,
}

struct SchemeAnalysis {
    scheme: Scheme,
    engine: AgeReport,
    theorem: AgeReport,
    delta: f64,
}

fn analyze_scheme(params: &SystemParams, scheme: Scheme) -> Result<SchemeAnalysis, CliError> {
    let engine = solve_engine(params, scheme)?;
    let theorem = solve_closed_form(params, scheme)?;
    let delta = agreement_delta(&engine, &theorem);
    Ok(SchemeAnalysis {
        scheme,
        engine,
        theorem,
        delta,
    })
}

fn scheme_json(analysis: &SchemeAnalysis) -> JsonValue {
    JsonValue::Obj(vec![
        ("engine", report_json(&analysis.engine)),
        ("theorem", report_json(&analysis.theorem)),
        ("agreement_delta", JsonValue::Num(analysis.delta)),
    ])
}

pub fn run(args: &AnalyzeArgs) -> Result<(), CliError> {
    let params = load_params(&args.config)?;
    if args.scheme.touches_noma() {
        enforce_feasibility(&params, "config", args.allow_infeasible)?;
    }

    let analyses: Vec<SchemeAnalysis> = args
        .scheme
        .schemes()
        .iter()
        .map(|&s| analyze_scheme(&params, s))
        .collect::<Result<_, _>>()?;

    let output = if analyses.len() == 1 {
        let a = &analyses[0];
        JsonValue::Obj(vec![
            ("scheme", JsonValue::Str(a.scheme.as_str().into())),
            ("params", params_json(&params)),
            ("engine", report_json(&a.engine)),
            ("theorem", report_json(&a.theorem)),
            ("agreement_delta", JsonValue::Num(a.delta)),
        ])
    } else {
        let mut fields = vec![("params", params_json(&params))];
        for a in &analyses {
            fields.push((a.scheme.as_str(), scheme_json(a)));
        }
        JsonValue::Obj(fields)
    };
    println!("{}", output.render());

    if let Some(path) = &args.csv {
        let mut csv = String::from("scheme,method,age_user1,age_user2,age_total\n");
        for a in &analyses {
            for report in [&a.engine, &a.theorem] {
                csv.push_str(&format!(
                    "{},{},{},{},{}\n",
                    a.scheme,
                    report.method.as_str(),
                    fmt_sig12(report.age_user1),
                    fmt_sig12(report.age_user2),
                    fmt_sig12(report.age_total),
                ));
            }
        }
        fs::write(path, csv)?;
        eprintln!("wrote method summary to {}", path.display());
    }
    Ok(())
}
