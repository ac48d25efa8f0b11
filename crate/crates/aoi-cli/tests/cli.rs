//! End-to-end tests of the compiled binary: output shapes, exit codes,
//! determinism, and the documented examples.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

const ANCHOR_ALL_ONES: &str = r#"{"lambda1": 1, "lambda2": 1, "mu1": 1, "mu2": 1,
    "noma": {"mode": "explicit", "mu1p": 0.5, "mu2p": 0.5}}"#;
const ALPHA_12: &str = r#"{"lambda1": 1, "lambda2": 1, "mu1": 1, "mu2": 2,
    "noma": {"mode": "alpha", "alpha": 1.2, "delta": 0.5}}"#;
const INFEASIBLE: &str = r#"{"lambda1": 1, "lambda2": 1, "mu1": 1, "mu2": 2,
    "noma": {"mode": "explicit", "mu1p": 1.5, "mu2p": 1.0}}"#;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_aoi-cli"))
}

fn write_config(dir: &Path, name: &str, contents: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn run_ok(cmd: &mut Command) -> Output {
    let out = cmd.output().unwrap();
    assert!(
        out.status.success(),
        "command failed: {:?}\nstderr: {}",
        cmd,
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON document")
}

#[test]
fn analyze_reproduces_both_anchor_values() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "p.json", ANCHOR_ALL_ONES);
    let out = run_ok(bin().args(["analyze", "--config"]).arg(&config));
    let v = stdout_json(&out);

    let noma = v["noma"]["engine"]["age_user1"].as_f64().unwrap();
    let oma = v["oma"]["engine"]["age_user1"].as_f64().unwrap();
    assert!((noma - 2.525253).abs() < 1e-5, "noma anchor: {noma}");
    assert!((oma - 2.433333).abs() < 1e-5, "oma anchor: {oma}");
    for scheme in ["noma", "oma"] {
        assert!(v[scheme]["agreement_delta"].as_f64().unwrap() < 1e-10);
        assert_eq!(v[scheme]["engine"]["method"], "engine");
        assert_eq!(v[scheme]["theorem"]["method"], "theorem-matrices");
        let total = v[scheme]["engine"]["age_total"].as_f64().unwrap();
        let u1 = v[scheme]["engine"]["age_user1"].as_f64().unwrap();
        let u2 = v[scheme]["engine"]["age_user2"].as_f64().unwrap();
        assert!((total - (u1 + u2)).abs() < 1e-9);
    }
}

#[test]
fn analyze_single_scheme_shape_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "p.json", ANCHOR_ALL_ONES);
    let csv_path = dir.path().join("methods.csv");
    let out = run_ok(
        bin()
            .args(["analyze", "--scheme", "oma", "--config"])
            .arg(&config)
            .arg("--csv")
            .arg(&csv_path),
    );
    let v = stdout_json(&out);
    assert_eq!(v["scheme"], "oma");
    assert!(v["engine"]["age_user1"].is_f64());
    assert!(v.get("noma").is_none());

    let csv = std::fs::read_to_string(&csv_path).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "scheme,method,age_user1,age_user2,age_total");
    assert_eq!(lines.len(), 3); // header + engine row + theorem row
    assert!(lines[1].starts_with("oma,engine,"));
    assert!(lines[2].starts_with("oma,theorem-matrices,"));
}

#[test]
fn exit_codes_for_config_problems() {
    let dir = tempfile::tempdir().unwrap();

    // Missing file.
    let out = bin()
        .args(["analyze", "--config", "/nonexistent/nope.json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    // Malformed JSON.
    let bad = write_config(dir.path(), "bad.json", "{not json");
    let out = bin().args(["analyze", "--config"]).arg(&bad).output().unwrap();
    assert_eq!(out.status.code(), Some(2));

    // Nonpositive rate.
    let zero = write_config(
        dir.path(),
        "zero.json",
        r#"{"lambda1": 0, "lambda2": 1, "mu1": 1, "mu2": 1,
            "noma": {"mode": "explicit", "mu1p": 0.5, "mu2p": 0.5}}"#,
    );
    let out = bin().args(["analyze", "--config"]).arg(&zero).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn infeasible_parameters_exit_three_unless_allowed() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "inf.json", INFEASIBLE);

    let out = bin().args(["analyze", "--config"]).arg(&config).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("exceeds solo rate"), "stderr: {stderr}");

    let out = bin()
        .args(["analyze", "--allow-infeasible", "--config"])
        .arg(&config)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));

    // The gate guards the shared-service model only; an exclusive-service
    // analysis of the same parameters does not trip it.
    let out = bin()
        .args(["analyze", "--scheme", "oma", "--config"])
        .arg(&config)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn sweep_degenerate_grid_has_exactly_the_endpoints() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "p.json", ALPHA_12);
    let out = run_ok(
        bin()
            .args(["sweep", "--param", "alpha", "--steps", "2", "--config"])
            .arg(&config),
    );
    let stdout = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines.len(), 3, "header + 2 rows: {stdout}");
    assert!(lines[0].starts_with("value,oma_total,noma_total,"));
    assert!(lines[1].starts_with("1,"));
    assert!(lines[2].starts_with("2,"));
}

#[test]
fn sweep_alpha_requires_the_alpha_derivation_mode() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "p.json", ANCHOR_ALL_ONES);
    let out = bin()
        .args(["sweep", "--param", "alpha", "--config"])
        .arg(&config)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("alpha derivation mode"));
}

#[test]
fn sweep_rejects_bad_ranges() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "p.json", ALPHA_12);
    for args in [
        vec!["--from", "2", "--to", "1"],
        vec!["--steps", "1"],
        vec!["--from", "0.5"],          // below the alpha domain
        vec!["--to", "2.5"],            // above the alpha domain
        vec!["--param", "lambda", "--from", "-1", "--to", "1", "--log"],
    ] {
        let out = bin()
            .args(["sweep", "--param", "alpha", "--config"])
            .arg(&config)
            .args(&args)
            .output()
            .unwrap();
        // The lambda case overrides --param alpha by appearing later; clap
        // keeps the last occurrence.
        assert_eq!(out.status.code(), Some(2), "args: {args:?}");
    }
}

#[test]
fn sweep_writes_csv_file_and_svg_chart() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "p.json", ALPHA_12);
    let csv_path = dir.path().join("sweep.csv");
    let svg_path = dir.path().join("sweep.svg");
    let out = run_ok(
        bin()
            .args(["sweep", "--param", "alpha", "--steps", "21", "--lambda-inf", "--config"])
            .arg(&config)
            .arg("--csv")
            .arg(&csv_path)
            .arg("--svg")
            .arg(&svg_path),
    );
    // With --csv the table goes to the file, not stdout.
    assert!(out.stdout.is_empty());

    let csv = std::fs::read_to_string(&csv_path).unwrap();
    assert_eq!(csv.lines().count(), 22);

    let svg = std::fs::read_to_string(&svg_path).unwrap();
    assert_eq!(svg.matches("<polyline").count(), 2);
    assert_eq!(svg.matches(r#"class="series-oma""#).count(), 1);
    assert_eq!(svg.matches(r#"class="series-noma""#).count(), 1);
    // The crossover 9/7 lies inside [1,2], so the marker is present.
    assert_eq!(svg.matches(r#"class="crossover""#).count(), 1);
    assert!(svg.contains(">alpha<") && svg.contains("total average age"));
}

#[test]
fn sweep_winner_column_matches_the_totals_on_every_row() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "p.json", ALPHA_12);
    let out = run_ok(
        bin()
            .args(["sweep", "--param", "alpha", "--steps", "11", "--lambda-inf", "--config"])
            .arg(&config),
    );
    let stdout = String::from_utf8(out.stdout).unwrap();
    let mut flips = 0;
    let mut last_winner: Option<String> = None;
    for line in stdout.lines().skip(1) {
        let fields: Vec<&str> = line.split(',').collect();
        let oma: f64 = fields[1].parse().unwrap();
        let noma: f64 = fields[2].parse().unwrap();
        let expected = if (oma - noma).abs() <= 1e-9 * oma.abs().max(noma.abs()).max(1.0) {
            "tie"
        } else if oma < noma {
            "oma"
        } else {
            "noma"
        };
        assert_eq!(fields[7], expected, "row: {line}");
        if let Some(prev) = &last_winner {
            if prev != fields[7] {
                flips += 1;
            }
        }
        last_winner = Some(fields[7].to_string());
    }
    assert_eq!(flips, 1, "exactly one winner flip across [1,2]");
}

#[test]
fn simulate_is_deterministic_and_validates_the_event_budget() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "p.json", ANCHOR_ALL_ONES);

    let run = || {
        bin()
            .args(["simulate", "--seed", "42", "--events", "100000", "--config"])
            .arg(&config)
            .output()
            .unwrap()
    };
    let a = run();
    let b = run();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "same seed must give identical bytes");

    let c = bin()
        .args(["simulate", "--seed", "43", "--events", "100000", "--config"])
        .arg(&config)
        .output()
        .unwrap();
    assert_ne!(a.stdout, c.stdout);

    // Fewer events than 10 per batch is a config error.
    let out = bin()
        .args(["simulate", "--events", "150", "--config"])
        .arg(&config)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("10*batches"));
}

#[test]
fn simulate_check_reports_small_z_scores() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "p.json", ANCHOR_ALL_ONES);
    let out = run_ok(
        bin()
            .args([
                "simulate", "--scheme", "noma", "--seed", "42", "--events", "1000000",
                "--check", "--config",
            ])
            .arg(&config),
    );
    let v = stdout_json(&out);
    assert_eq!(v["scheme"], "noma");
    for user in ["z_user1", "z_user2"] {
        let z = v["check"][user].as_f64().unwrap();
        assert!(z.abs() < 3.0, "{user} = {z}");
    }
    let exact = v["check"]["engine_age_user1"].as_f64().unwrap();
    assert!((exact - 2.525253).abs() < 1e-5);
}

#[test]
fn simulate_trace_is_capped_and_well_formed() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "p.json", ANCHOR_ALL_ONES);
    let trace_path = dir.path().join("trace.csv");
    run_ok(
        bin()
            .args([
                "simulate", "--events", "10000", "--trace-limit", "50", "--config",
            ])
            .arg(&config)
            .arg("--trace")
            .arg(&trace_path),
    );
    let trace = std::fs::read_to_string(&trace_path).unwrap();
    let lines: Vec<&str> = trace.lines().collect();
    assert_eq!(
        lines[0],
        "time,event,user,state_before,state_after,age1,age2"
    );
    assert_eq!(lines.len(), 51); // header + capped rows
    for line in &lines[1..] {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), 7);
        assert!(matches!(fields[1], "arrival" | "completion"));
        assert!(matches!(fields[2], "1" | "2"));
    }
}

#[test]
fn simulate_both_schemes_in_one_call() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "p.json", ANCHOR_ALL_ONES);
    let out = run_ok(
        bin()
            .args(["simulate", "--scheme", "both", "--events", "100000", "--config"])
            .arg(&config),
    );
    let v = stdout_json(&out);
    assert!(v["noma"]["result"]["age_user1"].is_f64());
    assert!(v["oma"]["result"]["age_user1"].is_f64());
}

#[test]
fn compare_matches_the_documented_examples() {
    let dir = tempfile::tempdir().unwrap();

    // α = 1.2, μ = (1, 2), δ = 0.5 at the high-rate proxy: the exclusive
    // discipline still wins and the crossover sits at 9/7.
    let config = write_config(dir.path(), "a12.json", ALPHA_12);
    let out = run_ok(bin().args(["compare", "--lambda-inf", "--config"]).arg(&config));
    let v = stdout_json(&out);
    assert_eq!(v["winner"], "oma");
    let star = v["crossover_alpha"].as_f64().unwrap();
    assert!((star - 9.0 / 7.0).abs() < 1e-6, "crossover: {star}");
    assert!((v["limits"]["oma_limit_total"].as_f64().unwrap() - 7.0 / 3.0).abs() < 1e-10);
    assert!((v["limits"]["noma_limit_total"].as_f64().unwrap() - 2.5).abs() < 1e-10);

    // Same setup at α = 1.5: the shared discipline wins (limit 2 < 7/3).
    let a15 = write_config(
        dir.path(),
        "a15.json",
        r#"{"lambda1": 1, "lambda2": 1, "mu1": 1, "mu2": 2,
            "noma": {"mode": "alpha", "alpha": 1.5, "delta": 0.5}}"#,
    );
    let out = run_ok(bin().args(["compare", "--lambda-inf", "--config"]).arg(&a15));
    let v = stdout_json(&out);
    assert_eq!(v["winner"], "noma");

    // Symmetric rates at α = 4/3: the two high-rate limits coincide.
    let sym = write_config(
        dir.path(),
        "sym.json",
        r#"{"lambda1": 1, "lambda2": 1, "mu1": 1, "mu2": 1,
            "noma": {"mode": "alpha", "alpha": 1.3333333333333333, "delta": 0.5}}"#,
    );
    let out = run_ok(bin().args(["compare", "--lambda-inf", "--config"]).arg(&sym));
    let v = stdout_json(&out);
    assert_eq!(v["limits"]["winner"], "tie");
    let star = v["crossover_alpha"].as_f64().unwrap();
    assert!((star - 4.0 / 3.0).abs() < 1e-6);
}

#[test]
fn explicit_mode_compare_omits_the_crossover() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "p.json", ANCHOR_ALL_ONES);
    let out = run_ok(bin().args(["compare", "--config"]).arg(&config));
    let v = stdout_json(&out);
    assert!(v.get("crossover_alpha").is_none());
    assert_eq!(v["winner"], "oma"); // 4.8667 < 5.0505 at these rates
}
