//! Command-line interface: spectra, wavefunction tables, the
//! finite-difference cross-check and the verification suites.
//!
//! Parameters resolve in three layers: built-in defaults, then a
//! `key = value` config file, then command-line flags. Every output header
//! records the resolved value and the layer it came from, so a result can
//! be reproduced from its own header.
//!
//! Exit codes: 0 on success, 1 for usage or input errors, 2 when a
//! verification or cross-check ran but failed its tolerance.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::PI;
use std::path::Path;

use chrono::{SecondsFormat, Utc};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::error::{Error, Result};
use crate::model::{Branch, ParameterSet};
use crate::operators::default_grid;
use crate::oracle::compare;
use crate::spectra::{enumerate_spectrum, line, Energy, SpectralLine};
use crate::tol;
use crate::verify::{suite_algebra, verify_all, VerifyConfig};
use crate::wavefunctions::{build_profile, residual_ode};

/// Output serialization formats.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
}

/// Every key accepted in config files, in canonical order.
pub const CONFIG_KEYS: [&str; 15] = [
    "field",
    "mass",
    "m",
    "n",
    "n-max",
    "m-min",
    "m-max",
    "branch",
    "relativistic",
    "grids",
    "seed",
    "samples",
    "tolerance",
    "points",
    "format",
];

/// Fully resolved run parameters plus the layer each came from.
#[derive(Debug, Clone)]
pub struct RunConfig {
    /// Magnetic field strength B.
    pub field: f64,
    /// Mass M.
    pub mass: f64,
    /// Azimuthal index m.
    pub m: i64,
    /// Level index n for single-level commands.
    pub n: u32,
    pub n_max: u32,
    pub m_min: i64,
    pub m_max: i64,
    /// None means all three sectors.
    pub branch: Option<Branch>,
    pub relativistic: bool,
    /// Oracle grids, coarse to fine in the ratio 1 : 2 : 4.
    pub grids: [usize; 3],
    pub seed: u64,
    pub samples: usize,
    /// Pass threshold of the oracle cross-check, on the energy scale.
    pub tolerance: f64,
    /// Sample count of the wavefunction table.
    pub points: usize,
    pub format: OutputFormat,
    /// Per-key source: "default", "file" or "flag".
    pub provenance: BTreeMap<String, String>,
}

impl Default for RunConfig {
    fn default() -> Self {
        let provenance = CONFIG_KEYS
            .iter()
            .map(|k| (k.to_string(), "default".to_string()))
            .collect();
        RunConfig {
            field: 1.0,
            mass: 1.0,
            m: 1,
            n: 0,
            n_max: 3,
            m_min: -2,
            m_max: 2,
            branch: None,
            relativistic: false,
            grids: [1000, 2000, 4000],
            seed: 0,
            samples: 200,
            tolerance: tol::ORACLE_AGREEMENT,
            points: 9,
            format: OutputFormat::Json,
            provenance,
        }
    }
}

/// Split config text into (line number, key, value) triples. Blank lines
/// and `#` comments are skipped; everything else must be `key = value`.
pub fn parse_config_text(text: &str) -> Result<Vec<(usize, String, String)>> {
    let mut entries = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let Some((key, value)) = trimmed.split_once('=') else {
            return Err(Error::MalformedConfig {
                line: line_no,
                message: format!("expected key = value, got {trimmed:?}"),
            });
        };
        let key = key.trim().to_string();
        let value = value.trim().to_string();
        if key.is_empty() || value.is_empty() {
            return Err(Error::MalformedConfig {
                line: line_no,
                message: "empty key or value".to_string(),
            });
        }
        entries.push((line_no, key, value));
    }
    Ok(entries)
}

fn parse_grid_list(value: &str) -> Option<[usize; 3]> {
    let parts: Vec<usize> = value
        .split(',')
        .map(|p| p.trim().parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .ok()?;
    <[usize; 3]>::try_from(parts).ok()
}

impl RunConfig {
    pub fn apply_config_file(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            Error::InvalidParameter(format!("cannot read config file {}: {e}", path.display()))
        })?;
        self.apply_config_text(&text)
    }

    /// Apply `key = value` lines, rejecting unknown and duplicate keys.
    pub fn apply_config_text(&mut self, text: &str) -> Result<()> {
        let mut seen = BTreeSet::new();
        for (line_no, key, value) in parse_config_text(text)? {
            if !seen.insert(key.clone()) {
                return Err(Error::MalformedConfig {
                    line: line_no,
                    message: format!("duplicate key {key:?}"),
                });
            }
            self.apply_entry(&key, &value, line_no)?;
        }
        Ok(())
    }

    fn apply_entry(&mut self, key: &str, value: &str, line_no: usize) -> Result<()> {
        let bad = |message: String| Error::MalformedConfig { line: line_no, message };
        let num = |what: &str| bad(format!("cannot parse {value:?} as {what} for key {key:?}"));
        match key {
            "field" => self.field = value.parse().map_err(|_| num("a number"))?,
            "mass" => self.mass = value.parse().map_err(|_| num("a number"))?,
            "m" => self.m = value.parse().map_err(|_| num("an integer"))?,
            "n" => self.n = value.parse().map_err(|_| num("a non-negative integer"))?,
            "n-max" => self.n_max = value.parse().map_err(|_| num("a non-negative integer"))?,
            "m-min" => self.m_min = value.parse().map_err(|_| num("an integer"))?,
            "m-max" => self.m_max = value.parse().map_err(|_| num("an integer"))?,
            "branch" => {
                self.branch = if value == "all" {
                    None
                } else {
                    Some(value.parse().map_err(|e: Error| bad(e.to_string()))?)
                }
            }
            "relativistic" => {
                self.relativistic = match value {
                    "true" => true,
                    "false" => false,
                    _ => return Err(num("true or false")),
                }
            }
            "grids" => {
                self.grids = parse_grid_list(value)
                    .ok_or_else(|| num("three comma-separated grid counts"))?
            }
            "seed" => self.seed = value.parse().map_err(|_| num("a non-negative integer"))?,
            "samples" => self.samples = value.parse().map_err(|_| num("a non-negative integer"))?,
            "tolerance" => self.tolerance = value.parse().map_err(|_| num("a number"))?,
            "points" => self.points = value.parse().map_err(|_| num("a positive integer"))?,
            "format" => {
                self.format = match value {
                    "json" => OutputFormat::Json,
                    "csv" => OutputFormat::Csv,
                    _ => return Err(num("json or csv")),
                }
            }
            _ => return Err(bad(format!("unknown key {key:?}"))),
        }
        self.provenance.insert(key.to_string(), "file".to_string());
        Ok(())
    }

    fn mark_flag(&mut self, key: &str) {
        self.provenance.insert(key.to_string(), "flag".to_string());
    }

    fn apply_flags(&mut self, a: &ParamArgs) -> Result<()> {
        if let Some(v) = a.field {
            self.field = v;
            self.mark_flag("field");
        }
        if let Some(v) = a.mass {
            self.mass = v;
            self.mark_flag("mass");
        }
        if let Some(v) = a.m {
            self.m = v;
            self.mark_flag("m");
        }
        if let Some(v) = a.n {
            self.n = v;
            self.mark_flag("n");
        }
        if let Some(v) = a.n_max {
            self.n_max = v;
            self.mark_flag("n-max");
        }
        if let Some(v) = a.m_min {
            self.m_min = v;
            self.mark_flag("m-min");
        }
        if let Some(v) = a.m_max {
            self.m_max = v;
            self.mark_flag("m-max");
        }
        if let Some(v) = a.branch {
            self.branch = Some(v);
            self.mark_flag("branch");
        }
        if a.relativistic {
            self.relativistic = true;
            self.mark_flag("relativistic");
        }
        if let Some(v) = &a.grids {
            self.grids = <[usize; 3]>::try_from(v.clone()).map_err(|_| {
                Error::InvalidParameter(format!(
                    "--grids needs exactly three comma-separated counts, got {}",
                    v.len()
                ))
            })?;
            self.mark_flag("grids");
        }
        if let Some(v) = a.seed {
            self.seed = v;
            self.mark_flag("seed");
        }
        if let Some(v) = a.samples {
            self.samples = v;
            self.mark_flag("samples");
        }
        if let Some(v) = a.tolerance {
            self.tolerance = v;
            self.mark_flag("tolerance");
        }
        if let Some(v) = a.points {
            self.points = v;
            self.mark_flag("points");
        }
        Ok(())
    }

    fn branch_label(&self) -> String {
        self.branch.map_or_else(|| "all".to_string(), |b| b.to_string())
    }

    fn parameters_json(&self) -> serde_json::Value {
        json!({
            "field": self.field,
            "mass": self.mass,
            "m": self.m,
            "n": self.n,
            "n-max": self.n_max,
            "m-min": self.m_min,
            "m-max": self.m_max,
            "branch": self.branch_label(),
            "relativistic": self.relativistic,
            "grids": self.grids,
            "seed": self.seed,
            "samples": self.samples,
            "tolerance": self.tolerance,
            "points": self.points,
            "format": self.format,
        })
    }

    fn parameter_pairs(&self) -> Vec<(&'static str, String)> {
        vec![
            ("field", self.field.to_string()),
            ("mass", self.mass.to_string()),
            ("m", self.m.to_string()),
            ("n", self.n.to_string()),
            ("n-max", self.n_max.to_string()),
            ("m-min", self.m_min.to_string()),
            ("m-max", self.m_max.to_string()),
            ("branch", self.branch_label()),
            ("relativistic", self.relativistic.to_string()),
            (
                "grids",
                format!("{},{},{}", self.grids[0], self.grids[1], self.grids[2]),
            ),
            ("seed", self.seed.to_string()),
            ("samples", self.samples.to_string()),
            ("tolerance", self.tolerance.to_string()),
            ("points", self.points.to_string()),
            (
                "format",
                match self.format {
                    OutputFormat::Json => "json".to_string(),
                    OutputFormat::Csv => "csv".to_string(),
                },
            ),
        ]
    }
}

fn conventions_json() -> serde_json::Value {
    json!({
        "units": "hbar = c = 1, sphere radius 1; r is the polar angle in radians",
        "normalization": "int_0^pi psi(r)^2 sin(r) dr = 1",
        "phase": "psi real and positive as r -> 0+",
        "eigenvalue-scale":
            "radial operator eigenvalue: 2*e*M nonrelativistic, e^2 - M^2 + 2*s*e*B/M relativistic",
    })
}

fn header(command: &str, cfg: &RunConfig, no_timestamp: bool) -> serde_json::Value {
    let mut h = serde_json::Map::new();
    h.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    h.insert("command".into(), json!(command));
    if !no_timestamp {
        h.insert(
            "timestamp".into(),
            json!(Utc::now().to_rfc3339_opts(SecondsFormat::Secs, true)),
        );
    }
    h.insert("parameters".into(), cfg.parameters_json());
    h.insert("provenance".into(), json!(cfg.provenance));
    h.insert("conventions".into(), conventions_json());
    serde_json::Value::Object(h)
}

fn csv_prelude(command: &str, cfg: &RunConfig, no_timestamp: bool) -> Vec<String> {
    let mut out = vec![
        format!("# version = {}", env!("CARGO_PKG_VERSION")),
        format!("# command = {command}"),
    ];
    if !no_timestamp {
        out.push(format!(
            "# timestamp = {}",
            Utc::now().to_rfc3339_opts(SecondsFormat::Secs, true)
        ));
    }
    for (key, value) in cfg.parameter_pairs() {
        out.push(format!("# {key} = {value}"));
    }
    let provenance = cfg
        .provenance
        .iter()
        .map(|(k, v)| format!("{k}:{v}"))
        .collect::<Vec<_>>()
        .join(",");
    out.push(format!("# provenance = {provenance}"));
    if let serde_json::Value::Object(map) = conventions_json() {
        for (key, value) in map {
            out.push(format!("# {key} = {}", value.as_str().unwrap_or_default()));
        }
    }
    out
}

fn print_json(value: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("value serializes"));
}

#[derive(Args, Debug, Clone, Default)]
struct ParamArgs {
    /// Magnetic field strength B.
    #[arg(long, allow_negative_numbers = true)]
    field: Option<f64>,
    /// Mass M.
    #[arg(long)]
    mass: Option<f64>,
    /// Azimuthal index m.
    #[arg(long, allow_negative_numbers = true)]
    m: Option<i64>,
    /// Level index n.
    #[arg(long)]
    n: Option<u32>,
    /// Largest level index of a sweep.
    #[arg(long)]
    n_max: Option<u32>,
    /// Lower end of the azimuthal sweep.
    #[arg(long, allow_negative_numbers = true)]
    m_min: Option<i64>,
    /// Upper end of the azimuthal sweep.
    #[arg(long, allow_negative_numbers = true)]
    m_max: Option<i64>,
    /// Spin sector: plus, zero or minus (default: all where applicable).
    #[arg(long, value_parser = parse_branch_flag)]
    branch: Option<Branch>,
    /// Use the relativistic level condition.
    #[arg(long)]
    relativistic: bool,
    /// Three oracle grid counts, coarse to fine in the ratio 1 : 2 : 4.
    #[arg(long, value_delimiter = ',')]
    grids: Option<Vec<usize>>,
    /// Seed of the randomized operator corpus.
    #[arg(long)]
    seed: Option<u64>,
    /// Size of the randomized operator corpus.
    #[arg(long)]
    samples: Option<usize>,
    /// Energy-scale pass threshold of the oracle cross-check.
    #[arg(long)]
    tolerance: Option<f64>,
    /// Number of radial sample points in wavefunction tables.
    #[arg(long)]
    points: Option<usize>,
}

fn parse_branch_flag(s: &str) -> std::result::Result<Branch, String> {
    s.parse::<Branch>().map_err(|e| e.to_string())
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List energy levels over a range of quantum numbers.
    Spectrum(ParamArgs),
    /// Evaluate one normalized radial profile on a grid.
    Wavefunction(ParamArgs),
    /// Run every verification suite.
    Verify(ParamArgs),
    /// Cross-check one level against the finite-difference solver.
    Oracle(ParamArgs),
    /// Check the matrix algebra of the ten-dimensional representation.
    Algebra(ParamArgs),
}

#[derive(Parser, Debug)]
#[command(
    name = "s2landau",
    version,
    about = "Spin-1 Landau levels on the two-sphere: closed forms with independent verification"
)]
struct Cli {
    /// Path to a key = value config file.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<std::path::PathBuf>,
    /// Output format.
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,
    /// Omit the timestamp from output headers (for reproducible output).
    #[arg(long, global = true)]
    no_timestamp: bool,
    #[command(subcommand)]
    command: Command,
}

/// Parse the given arguments, run the selected command and return the
/// process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            1
        }
    }
}

fn execute(cli: Cli) -> Result<i32> {
    let (name, args) = match &cli.command {
        Command::Spectrum(a) => ("spectrum", a),
        Command::Wavefunction(a) => ("wavefunction", a),
        Command::Verify(a) => ("verify", a),
        Command::Oracle(a) => ("oracle", a),
        Command::Algebra(a) => ("algebra", a),
    };
    let mut cfg = RunConfig::default();
    if let Some(path) = &cli.config {
        cfg.apply_config_file(path)?;
    }
    cfg.apply_flags(args)?;
    if let Some(format) = cli.format {
        cfg.format = format;
        cfg.mark_flag("format");
    }
    match name {
        "spectrum" => run_spectrum(&cfg, cli.no_timestamp),
        "wavefunction" => run_wavefunction(&cfg, cli.no_timestamp),
        "verify" => run_verify(&cfg, cli.no_timestamp),
        "oracle" => run_oracle(&cfg, cli.no_timestamp),
        "algebra" => run_algebra(&cfg, cli.no_timestamp),
        _ => unreachable!("all commands dispatched"),
    }
}

fn spectrum_csv_row(l: &SpectralLine) -> String {
    let (energy, energy_minus) = match l.energy {
        Energy::NonRelativistic { energy } => (energy.to_string(), String::new()),
        Energy::Relativistic { energy_plus, energy_minus } => {
            (energy_plus.to_string(), energy_minus.to_string())
        }
        Energy::ComplexRoots { .. } => (String::new(), String::new()),
    };
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
        l.branch,
        l.relativistic,
        l.n,
        l.m,
        l.b,
        l.mass,
        l.big_n,
        l.exp_a,
        l.exp_c,
        l.alpha,
        l.beta,
        l.gamma,
        energy,
        energy_minus,
        l.borderline,
        l.negative_energy
    )
}

fn run_spectrum(cfg: &RunConfig, no_timestamp: bool) -> Result<i32> {
    let p = ParameterSet::new(cfg.field, cfg.mass, cfg.m)?;
    let branches: Vec<Branch> = match cfg.branch {
        Some(b) => vec![b],
        None => Branch::ALL.to_vec(),
    };
    let mut lines = Vec::new();
    for branch in branches {
        lines.extend(enumerate_spectrum(
            &p,
            branch,
            cfg.relativistic,
            cfg.n_max,
            cfg.m_min..=cfg.m_max,
        ));
    }
    lines.sort_by(|x, y| {
        x.energy
            .sort_value()
            .total_cmp(&y.energy.sort_value())
            .then(x.n.cmp(&y.n))
            .then(x.m.cmp(&y.m))
            .then(x.branch.sign().total_cmp(&y.branch.sign()))
    });
    match cfg.format {
        OutputFormat::Json => print_json(&json!({
            "header": header("spectrum", cfg, no_timestamp),
            "count": lines.len(),
            "lines": lines,
        })),
        OutputFormat::Csv => {
            for meta in csv_prelude("spectrum", cfg, no_timestamp) {
                println!("{meta}");
            }
            println!(
                "branch,relativistic,n,m,B,M,N,A,C,alpha,beta,gamma,energy,energy_minus,\
                 borderline,negative_energy"
            );
            for l in &lines {
                println!("{}", spectrum_csv_row(l));
            }
        }
    }
    Ok(0)
}

fn run_wavefunction(cfg: &RunConfig, no_timestamp: bool) -> Result<i32> {
    if cfg.points == 0 {
        return Err(Error::InvalidParameter("points must be at least 1".into()));
    }
    let branch = cfg.branch.unwrap_or(Branch::Zero);
    let l = line(branch, cfg.relativistic, cfg.n, cfg.m, cfg.field, cfg.mass);
    let profile = build_profile(&l)?;
    let p = ParameterSet::new(cfg.field, cfg.mass, cfg.m)?;
    let eps = match l.energy {
        Energy::NonRelativistic { energy } => energy,
        _ => {
            l.condition_value().ok_or(Error::ComplexRoots {
                discriminant: f64::NEG_INFINITY,
            })? / (2.0 * cfg.mass)
        }
    };
    let residual = residual_ode(&profile, eps, &p, &default_grid())?;
    let table: Vec<(f64, f64, f64, f64)> = (1..=cfg.points)
        .map(|j| {
            let r = PI * j as f64 / (cfg.points as f64 + 1.0);
            let jet = profile.jet_r(r);
            (r, (1.0 - r.cos()) / 2.0, jet.f, jet.df)
        })
        .collect();
    let ok = residual.max() <= tol::ODE_RESIDUAL;
    match cfg.format {
        OutputFormat::Json => {
            let samples: Vec<serde_json::Value> = table
                .iter()
                .map(|(r, y, psi, dpsi)| json!({ "r": r, "y": y, "psi": psi, "dpsi_dr": dpsi }))
                .collect();
            print_json(&json!({
                "header": header("wavefunction", cfg, no_timestamp),
                "line": l,
                "normalization": profile.normalization,
                "residual": residual,
                "residual_pass": ok,
                "samples": samples,
            }));
        }
        OutputFormat::Csv => {
            for meta in csv_prelude("wavefunction", cfg, no_timestamp) {
                println!("{meta}");
            }
            println!("# normalization = {}", profile.normalization);
            println!("# residual-r = {}", residual.r_form);
            println!("# residual-y = {}", residual.y_form);
            println!("r,y,psi,dpsi_dr");
            for (r, y, psi, dpsi) in &table {
                println!("{r},{y},{psi},{dpsi}");
            }
        }
    }
    Ok(if ok { 0 } else { 2 })
}

fn run_verify(cfg: &RunConfig, no_timestamp: bool) -> Result<i32> {
    let vcfg = VerifyConfig {
        b: cfg.field,
        mass: cfg.mass,
        m: cfg.m,
        n_max: cfg.n_max,
        grids: cfg.grids,
        seed: cfg.seed,
        samples: cfg.samples,
        oracle_tolerance: cfg.tolerance,
    };
    let outcomes = verify_all(&vcfg)?;
    let all_pass = outcomes.iter().all(|o| o.pass);
    match cfg.format {
        OutputFormat::Json => print_json(&json!({
            "header": header("verify", cfg, no_timestamp),
            "suites": outcomes,
            "all_pass": all_pass,
        })),
        OutputFormat::Csv => {
            for meta in csv_prelude("verify", cfg, no_timestamp) {
                println!("{meta}");
            }
            println!("suite,max_deviation,tolerance,pass");
            for o in &outcomes {
                println!("{},{},{},{}", o.name, o.max_deviation, o.tolerance, o.pass);
            }
        }
    }
    Ok(if all_pass { 0 } else { 2 })
}

fn run_oracle(cfg: &RunConfig, no_timestamp: bool) -> Result<i32> {
    let branch = cfg.branch.unwrap_or(Branch::Zero);
    let l = line(branch, cfg.relativistic, cfg.n, cfg.m, cfg.field, cfg.mass);
    let cmp = compare(&l, cfg.grids)?;
    let ok = cmp.energy_abs_err <= cfg.tolerance;
    match cfg.format {
        OutputFormat::Json => print_json(&json!({
            "header": header("oracle", cfg, no_timestamp),
            "line": l,
            "comparison": cmp,
            "pass": ok,
        })),
        OutputFormat::Csv => {
            for meta in csv_prelude("oracle", cfg, no_timestamp) {
                println!("{meta}");
            }
            println!(
                "closed_form,oracle,abs_err,energy_abs_err,convergence_order,error_estimate,pass"
            );
            println!(
                "{},{},{},{},{},{},{}",
                cmp.closed_form,
                cmp.oracle,
                cmp.abs_err,
                cmp.energy_abs_err,
                cmp.convergence_order,
                cmp.error_estimate,
                ok
            );
        }
    }
    Ok(if ok { 0 } else { 2 })
}

fn run_algebra(cfg: &RunConfig, no_timestamp: bool) -> Result<i32> {
    let outcome = suite_algebra();
    match cfg.format {
        OutputFormat::Json => print_json(&json!({
            "header": header("algebra", cfg, no_timestamp),
            "suite": outcome,
        })),
        OutputFormat::Csv => {
            for meta in csv_prelude("algebra", cfg, no_timestamp) {
                println!("{meta}");
            }
            println!("suite,max_deviation,tolerance,pass");
            println!(
                "{},{},{},{}",
                outcome.name, outcome.max_deviation, outcome.tolerance, outcome.pass
            );
        }
    }
    Ok(if outcome.pass { 0 } else { 2 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_text_splits_into_entries() {
        let text = "# a comment\n\nfield = 2.5\n  branch= minus\n";
        let entries = parse_config_text(text).unwrap();
        assert_eq!(
            entries,
            vec![
                (3, "field".to_string(), "2.5".to_string()),
                (4, "branch".to_string(), "minus".to_string()),
            ]
        );
    }

    #[test]
    fn config_without_equals_is_rejected_with_line() {
        let err = parse_config_text("field = 1\nnonsense\n").unwrap_err();
        assert!(matches!(err, Error::MalformedConfig { line: 2, .. }));
    }

    #[test]
    fn duplicate_keys_are_rejected() {
        let mut cfg = RunConfig::default();
        let err = cfg.apply_config_text("field = 1\nfield = 2\n").unwrap_err();
        assert!(
            matches!(err, Error::MalformedConfig { line: 2, ref message } if message.contains("duplicate"))
        );
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let mut cfg = RunConfig::default();
        let err = cfg.apply_config_text("fields = 1\n").unwrap_err();
        assert!(
            matches!(err, Error::MalformedConfig { line: 1, ref message } if message.contains("unknown"))
        );
    }

    #[test]
    fn bad_values_name_the_key_and_line() {
        let mut cfg = RunConfig::default();
        let err = cfg.apply_config_text("\n\nmass = heavy\n").unwrap_err();
        assert!(
            matches!(err, Error::MalformedConfig { line: 3, ref message } if message.contains("mass"))
        );
        let err = cfg.apply_config_text("grids = 100,200\n").unwrap_err();
        assert!(matches!(err, Error::MalformedConfig { line: 1, .. }));
        let err = cfg.apply_config_text("relativistic = yes\n").unwrap_err();
        assert!(matches!(err, Error::MalformedConfig { line: 1, .. }));
    }

    #[test]
    fn file_values_override_defaults_and_record_provenance() {
        let mut cfg = RunConfig::default();
        cfg.apply_config_text("field = 0.5\nbranch = all\nformat = csv\ngrids = 100, 200, 400\n")
            .unwrap();
        assert_eq!(cfg.field, 0.5);
        assert_eq!(cfg.branch, None);
        assert_eq!(cfg.format, OutputFormat::Csv);
        assert_eq!(cfg.grids, [100, 200, 400]);
        assert_eq!(cfg.provenance["field"], "file");
        assert_eq!(cfg.provenance["grids"], "file");
        assert_eq!(cfg.provenance["mass"], "default");
    }

    #[test]
    fn flags_override_file_values() {
        let mut cfg = RunConfig::default();
        cfg.apply_config_text("field = 0.5\nmass = 3\n").unwrap();
        let args = ParamArgs { field: Some(2.0), ..ParamArgs::default() };
        cfg.apply_flags(&args).unwrap();
        assert_eq!(cfg.field, 2.0);
        assert_eq!(cfg.mass, 3.0);
        assert_eq!(cfg.provenance["field"], "flag");
        assert_eq!(cfg.provenance["mass"], "file");
    }

    #[test]
    fn grid_flag_requires_exactly_three_values() {
        let mut cfg = RunConfig::default();
        let args = ParamArgs { grids: Some(vec![100, 200]), ..ParamArgs::default() };
        assert!(matches!(cfg.apply_flags(&args), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn spectrum_rows_cover_both_energy_layouts() {
        let nonrel = line(Branch::Zero, false, 0, 1, 0.0, 1.0);
        let row = spectrum_csv_row(&nonrel);
        assert!(row.starts_with("zero,false,0,1,0,1,"));
        assert!(row.contains(",1,,"), "nonrelativistic row leaves energy_minus empty: {row}");
        let rel = line(Branch::Zero, true, 0, 1, 0.0, 1.0);
        let row = spectrum_csv_row(&rel);
        assert!(row.starts_with("zero,true,"));
        let fields: Vec<&str> = row.split(',').collect();
        assert_eq!(fields.len(), 16);
        assert!(!fields[13].is_empty(), "relativistic row fills energy_minus: {row}");
    }

    #[test]
    fn help_and_version_exit_zero_bad_flags_exit_one() {
        assert_eq!(run(["s2landau", "--help"]), 0);
        assert_eq!(run(["s2landau", "--version"]), 0);
        assert_eq!(run(["s2landau", "spectrum", "--no-such-flag"]), 1);
        assert_eq!(run(["s2landau"]), 1);
    }

    #[test]
    fn algebra_command_passes() {
        assert_eq!(run(["s2landau", "algebra", "--no-timestamp"]), 0);
    }

    #[test]
    fn oracle_command_rejects_borderline_sector() {
        // m = 0 in the s = 0 sector has C = 0; the comparison refuses to
        // run rather than comparing against the wrong boundary problem.
        assert_eq!(run(["s2landau", "oracle", "--m", "0", "--field", "0"]), 1);
    }

    #[test]
    fn config_precedence_end_to_end() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.conf");
        std::fs::write(&path, "field = 0.5\nn-max = 1\nformat = csv\n").unwrap();
        let code = run([
            "s2landau",
            "spectrum",
            "--config",
            path.to_str().unwrap(),
            "--field",
            "1.0",
            "--branch",
            "zero",
            "--no-timestamp",
        ]);
        assert_eq!(code, 0);
    }
}
