//! Integration tests of the command-line binary: output shape,
//! reproducibility, config layering and exit codes.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_s2landau"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn data_rows(csv: &str) -> Vec<&str> {
    csv.lines()
        .filter(|l| !l.starts_with('#') && !l.is_empty())
        .skip(1)
        .collect()
}

#[test]
fn spectrum_json_is_reproducible_and_complete() {
    let args = [
        "spectrum",
        "--branch",
        "zero",
        "--field",
        "0",
        "--n-max",
        "2",
        "--m-min",
        "-2",
        "--m-max",
        "2",
        "--no-timestamp",
    ];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout, "output must be byte-identical");

    let parsed: serde_json::Value = serde_json::from_str(&stdout(&first)).unwrap();
    assert_eq!(parsed["count"], 15);
    assert_eq!(parsed["lines"].as_array().unwrap().len(), 15);
    assert_eq!(parsed["header"]["parameters"]["field"], 0.0);
    assert_eq!(parsed["header"]["provenance"]["field"], "flag");
    assert_eq!(parsed["header"]["provenance"]["mass"], "default");
    assert!(parsed["header"]["timestamp"].is_null());
    assert!(parsed["header"]["conventions"]["normalization"]
        .as_str()
        .unwrap()
        .contains("sin(r)"));
    // The lowest field-free level sits at zero energy.
    assert_eq!(parsed["lines"][0]["energy"], 0.0);
    assert_eq!(parsed["lines"][0]["n"], 0);
    assert_eq!(parsed["lines"][0]["m"], 0);
}

#[test]
fn spectrum_csv_has_meta_lines_and_fifteen_rows() {
    let out = run(&[
        "spectrum",
        "--branch",
        "zero",
        "--field",
        "0",
        "--n-max",
        "2",
        "--format",
        "csv",
        "--no-timestamp",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.lines().any(|l| l == "# field = 0"));
    assert!(text.lines().any(|l| l.starts_with("# provenance = ") && l.contains("field:flag")));
    let rows = data_rows(&text);
    assert_eq!(rows.len(), 15);
    assert!(rows.iter().all(|r| r.starts_with("zero,false,")));
    let header = text
        .lines()
        .find(|l| l.starts_with("branch,"))
        .expect("column header present");
    assert_eq!(header.split(',').count(), 16);
}

#[test]
fn timestamps_appear_unless_suppressed() {
    let with = run(&["algebra"]);
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&with)).unwrap();
    assert!(parsed["header"]["timestamp"].is_string());
    let without = run(&["algebra", "--no-timestamp"]);
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&without)).unwrap();
    assert!(parsed["header"]["timestamp"].is_null());
}

#[test]
fn config_file_layers_under_flags() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.conf");
    std::fs::write(&path, "# run settings\nfield = 0.25\nmass = 2\nn-max = 1\n").unwrap();
    let out = run(&[
        "spectrum",
        "--config",
        path.to_str().unwrap(),
        "--field",
        "1.0",
        "--branch",
        "zero",
        "--no-timestamp",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(parsed["header"]["parameters"]["field"], 1.0);
    assert_eq!(parsed["header"]["parameters"]["mass"], 2.0);
    assert_eq!(parsed["header"]["parameters"]["n-max"], 1);
    assert_eq!(parsed["header"]["provenance"]["field"], "flag");
    assert_eq!(parsed["header"]["provenance"]["mass"], "file");
    assert_eq!(parsed["header"]["provenance"]["n-max"], "file");
    assert_eq!(parsed["header"]["provenance"]["seed"], "default");
}

#[test]
fn malformed_config_reports_line_and_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.conf");
    std::fs::write(&path, "field = 1\nfield = 2\n").unwrap();
    let out = run(&["spectrum", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 2"), "stderr: {err}");
    assert!(err.contains("duplicate"), "stderr: {err}");

    std::fs::write(&path, "unknown-key = 1\n").unwrap();
    let out = run(&["spectrum", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_one_help_exits_zero() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["spectrum", "--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(run(&["spectrum", "--field", "abc"]).status.code(), Some(1));
}

#[test]
fn wavefunction_reports_profile_and_residual() {
    let out = run(&[
        "wavefunction",
        "--branch",
        "zero",
        "--n",
        "0",
        "--m",
        "1",
        "--field",
        "0",
        "--points",
        "5",
        "--no-timestamp",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(parsed["samples"].as_array().unwrap().len(), 5);
    assert_eq!(parsed["residual_pass"], true);
    // This profile is sqrt(3) sin(r) / 2; its midpoint sample is the peak.
    let mid = &parsed["samples"][2];
    let psi = mid["psi"].as_f64().unwrap();
    assert!((psi - 3.0f64.sqrt() / 2.0).abs() < 1e-12);
    assert!(parsed["normalization"].as_f64().unwrap() > 0.0);
}

#[test]
fn oracle_passes_admissible_sector_and_rejects_borderline() {
    let out = run(&[
        "oracle",
        "--branch",
        "zero",
        "--n",
        "1",
        "--m",
        "1",
        "--field",
        "0",
        "--grids",
        "400,800,1600",
        "--no-timestamp",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(parsed["pass"], true);
    let err = parsed["comparison"]["energy_abs_err"].as_f64().unwrap();
    assert!(err < 1e-6, "energy error {err}");

    // m = 0 in the s = 0 sector: the profile does not vanish at the pole,
    // so the Dirichlet oracle refuses the comparison.
    let out = run(&["oracle", "--m", "0", "--field", "0"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("invalid boundary"), "stderr: {err}");
}

#[test]
fn oracle_exit_code_two_when_tolerance_not_met() {
    // An unattainably tight user tolerance: the comparison runs, reports
    // honestly and signals the miss through the exit code.
    let out = run(&[
        "oracle",
        "--branch",
        "zero",
        "--n",
        "0",
        "--m",
        "1",
        "--field",
        "0",
        "--grids",
        "400,800,1600",
        "--tolerance",
        "1e-18",
        "--no-timestamp",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(parsed["pass"], false);
}

#[test]
fn verify_runs_all_suites_quickly() {
    let out = run(&[
        "verify",
        "--grids",
        "200,400,800",
        "--samples",
        "8",
        "--tolerance",
        "1e-5",
        "--no-timestamp",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(parsed["all_pass"], true);
    let suites = parsed["suites"].as_array().unwrap();
    assert_eq!(suites.len(), 7);
    for suite in suites {
        assert_eq!(suite["pass"], true, "suite {}", suite["name"]);
    }
}

#[test]
fn verify_csv_lists_one_row_per_suite() {
    let out = run(&[
        "verify",
        "--grids",
        "200,400,800",
        "--samples",
        "8",
        "--tolerance",
        "1e-5",
        "--format",
        "csv",
        "--no-timestamp",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let rows = data_rows(&text);
    assert_eq!(rows.len(), 7);
    assert!(rows.iter().all(|r| r.ends_with(",true")));
}
