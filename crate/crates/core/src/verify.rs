//! Aggregated self-checks: every structural identity and cross-check in
//! the crate, bundled into named suites with one outcome each.
//!
//! The suites are what the command-line `verify` subcommand runs. Each
//! suite measures a worst-case deviation, compares it against a pinned
//! tolerance and attaches a small JSON detail blob for reporting.

use serde::Serialize;
use serde_json::json;

use crate::dkp::{build_basis, entry_lattice_deviation, verify_j12};
use crate::error::{Error, Result};
use crate::model::{Branch, ParameterSet};
use crate::operators::{
    check_identities, compose2, default_grid, random_cos_polynomials, standard_test_functions,
    verify_first_order_system, LadderKind, LadderOp,
};
use crate::oracle::compare;
use crate::spectra::line;
use crate::tol;
use crate::wavefunctions::{
    build_profile, build_simple_relativistic_branch, diagonalize_coupling, residual_ode,
};

/// Outcome of one named verification suite.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteOutcome {
    pub name: String,
    /// Worst measured deviation across the suite's sweep.
    pub max_deviation: f64,
    /// Pinned pass threshold the deviation is compared against.
    pub tolerance: f64,
    pub pass: bool,
    pub details: serde_json::Value,
}

impl SuiteOutcome {
    fn new(name: &str, max_deviation: f64, tolerance: f64, details: serde_json::Value) -> Self {
        SuiteOutcome {
            name: name.to_string(),
            max_deviation,
            tolerance,
            pass: max_deviation <= tolerance,
            details,
        }
    }
}

/// Parameters the suites sweep over.
#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub b: f64,
    pub mass: f64,
    pub m: i64,
    pub n_max: u32,
    /// Oracle grid triple, coarse to fine in the ratio 1 : 2 : 4.
    pub grids: [usize; 3],
    /// Seed of the randomized part of the operator corpus.
    pub seed: u64,
    /// Number of randomized corpus functions.
    pub samples: usize,
    /// Agreement threshold for the finite-difference cross-check.
    pub oracle_tolerance: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            b: 1.0,
            mass: 1.0,
            m: 1,
            n_max: 3,
            grids: [1000, 2000, 4000],
            seed: 0,
            samples: 200,
            oracle_tolerance: tol::ORACLE_AGREEMENT,
        }
    }
}

impl VerifyConfig {
    fn params(&self) -> Result<ParameterSet> {
        ParameterSet::new(self.b, self.mass, self.m)
    }
}

/// Matrix algebra of the ten-dimensional representation: the rotation
/// generator identity and the entry lattice.
#[must_use]
pub fn suite_algebra() -> SuiteOutcome {
    let basis = build_basis();
    let rotation = verify_j12(&basis);
    let lattice = entry_lattice_deviation(&basis);
    SuiteOutcome::new(
        "algebra",
        rotation.max(lattice),
        tol::MATRIX_IDENTITY,
        json!({ "rotation_generator": rotation, "entry_lattice": lattice }),
    )
}

/// Ladder operator identities on the mixed closed-form and seeded corpus.
pub fn suite_operator_identities(cfg: &VerifyConfig) -> Result<SuiteOutcome> {
    let p = cfg.params()?;
    let mut corpus = standard_test_functions(cfg.m);
    corpus.extend(random_cos_polynomials(cfg.seed, cfg.samples));
    let report = check_identities(&p, &corpus, &default_grid())?;
    let deviation = if report.is_constant {
        report.delta_laplacian
    } else {
        report.delta_laplacian.max(report.shift_spread)
    };
    Ok(SuiteOutcome::new(
        "operator-identities",
        deviation,
        tol::OPERATOR_IDENTITY,
        serde_json::to_value(&report).expect("report serializes"),
    ))
}

/// Pairwise ladder compositions against the three explicit second-order
/// sector operators.
pub fn suite_compositions(cfg: &VerifyConfig) -> Result<SuiteOutcome> {
    let p = cfg.params()?;
    let grid = default_grid();
    let a = LadderOp::new(LadderKind::A, p);
    let b_op = LadderOp::new(LadderKind::B, p);
    let a_plus = LadderOp::new(LadderKind::APlus, p);
    let b_minus = LadderOp::new(LadderKind::BMinus, p);
    let mut worst = 0.0f64;
    for f in standard_test_functions(cfg.m) {
        for &r in &grid {
            let s = f.sample(r);
            let explicit = |branch: Branch| -> Result<f64> {
                Ok(s.ddf + (r.cos() / r.sin()) * s.df - p.potential(branch, r)? * s.f)
            };
            let plus = -2.0 * compose2(&a, &b_minus, &s)?;
            let zero = -compose2(&b_minus, &a, &s)? - compose2(&a_plus, &b_op, &s)?;
            let minus = -2.0 * compose2(&b_op, &a_plus, &s)?;
            worst = worst
                .max((plus - explicit(Branch::Plus)?).abs())
                .max((zero - explicit(Branch::Zero)?).abs())
                .max((minus - explicit(Branch::Minus)?).abs());
        }
    }
    Ok(SuiteOutcome::new(
        "compositions",
        worst,
        tol::OPERATOR_IDENTITY,
        json!({ "B": cfg.b, "m": cfg.m }),
    ))
}

/// Closed-form profiles against their second-order equations, in both the
/// angular and the algebraic variable.
pub fn suite_residuals(cfg: &VerifyConfig) -> Result<SuiteOutcome> {
    let p = cfg.params()?;
    let grid = default_grid();
    let mut worst = 0.0f64;
    let mut checked = 0usize;
    for n in 0..=cfg.n_max {
        for branch in Branch::ALL {
            let l = line(branch, false, n, cfg.m, cfg.b, cfg.mass);
            let profile = build_profile(&l)?;
            let eps = l.energy.non_rel().expect("nonrelativistic line");
            worst = worst.max(residual_ode(&profile, eps, &p, &grid)?.max());
            checked += 1;
        }
        let l = line(Branch::Zero, true, n, cfg.m, cfg.b, cfg.mass);
        if let Some(k) = l.condition_value() {
            let profile = build_profile(&l)?;
            let equivalent = k / (2.0 * cfg.mass);
            worst = worst.max(residual_ode(&profile, equivalent, &p, &grid)?.max());
            checked += 1;
        }
    }
    Ok(SuiteOutcome::new(
        "ode-residuals",
        worst,
        tol::ODE_RESIDUAL,
        json!({ "levels_checked": checked, "n_max": cfg.n_max }),
    ))
}

/// The explicit ten-component branch against all ten coupled equations,
/// at both energy roots.
pub fn suite_first_order(cfg: &VerifyConfig) -> Result<SuiteOutcome> {
    let p = cfg.params()?;
    let grid = default_grid();
    let n = cfg.n_max.min(2);
    let l = line(Branch::Zero, true, n, cfg.m, cfg.b, cfg.mass);
    let (plus, minus) = l.energy.roots().ok_or(Error::ComplexRoots {
        discriminant: f64::NEG_INFINITY,
    })?;
    let mut worst = 0.0f64;
    for eps in [plus, minus] {
        let set = build_simple_relativistic_branch(&l, eps)?;
        worst = worst.max(verify_first_order_system(&set, eps, &p, &grid)?);
    }
    let detuned = {
        let eps = plus + 1e-3;
        let set = build_simple_relativistic_branch(&l, eps)?;
        verify_first_order_system(&set, eps, &p, &grid)?
    };
    Ok(SuiteOutcome::new(
        "first-order-system",
        worst,
        tol::FIRST_ORDER,
        json!({
            "energy_plus": plus,
            "energy_minus": minus,
            "detuned_residual": detuned,
        }),
    ))
}

/// Eigendecomposition of the 2x2 magnetic coupling block over a range of
/// energies, plus detection of the zero-energy degeneracy.
pub fn suite_diagonalization(cfg: &VerifyConfig) -> Result<SuiteOutcome> {
    let mut worst = 0.0f64;
    let mut energies = vec![0.5, 1.0, 2.5];
    let l = line(Branch::Zero, true, 0, cfg.m, cfg.b, cfg.mass);
    if let Some((plus, _)) = l.energy.roots() {
        energies.push(plus);
    }
    for &eps in &energies {
        worst = worst.max(diagonalize_coupling(cfg.b, cfg.mass, eps)?.deviation);
    }
    let degenerate_detected = matches!(
        diagonalize_coupling(cfg.b, cfg.mass, 0.0),
        Err(Error::SingularTransform)
    );
    let mut outcome = SuiteOutcome::new(
        "coupling-diagonalization",
        worst,
        tol::MATRIX_IDENTITY,
        json!({
            "energies": energies,
            "zero_energy_rejected": degenerate_detected,
        }),
    );
    outcome.pass = outcome.pass && degenerate_detected;
    Ok(outcome)
}

/// Closed-form levels against the finite-difference solver over the
/// default admissible sweep.
pub fn suite_oracle(cfg: &VerifyConfig) -> Result<SuiteOutcome> {
    let mut worst = 0.0f64;
    let mut worst_case = json!(null);
    let mut checked = 0usize;
    let mut skipped = 0usize;
    for branch in Branch::ALL {
        for m in [-2i64, -1, 1, 2] {
            for n in 0..=1u32 {
                let l = line(branch, false, n, m, cfg.b, cfg.mass);
                match compare(&l, cfg.grids) {
                    Ok(cmp) => {
                        if cmp.energy_abs_err > worst {
                            worst = cmp.energy_abs_err;
                            worst_case = json!({
                                "branch": branch.to_string(),
                                "m": m,
                                "n": n,
                                "closed_form": cmp.closed_form,
                                "oracle": cmp.oracle,
                                "order": cmp.convergence_order,
                            });
                        }
                        checked += 1;
                    }
                    Err(Error::InvalidBoundary { .. }) => skipped += 1,
                    Err(other) => return Err(other),
                }
            }
        }
    }
    Ok(SuiteOutcome::new(
        "finite-difference-oracle",
        worst,
        cfg.oracle_tolerance,
        json!({ "checked": checked, "skipped": skipped, "worst_case": worst_case }),
    ))
}

/// Run every suite in order.
pub fn verify_all(cfg: &VerifyConfig) -> Result<Vec<SuiteOutcome>> {
    Ok(vec![
        suite_algebra(),
        suite_operator_identities(cfg)?,
        suite_compositions(cfg)?,
        suite_residuals(cfg)?,
        suite_first_order(cfg)?,
        suite_diagonalization(cfg)?,
        suite_oracle(cfg)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick_config() -> VerifyConfig {
        VerifyConfig {
            grids: [200, 400, 800],
            samples: 12,
            oracle_tolerance: 1e-5,
            ..VerifyConfig::default()
        }
    }

    #[test]
    fn algebra_suite_passes() {
        let outcome = suite_algebra();
        assert!(outcome.pass, "deviation {}", outcome.max_deviation);
        assert_eq!(outcome.name, "algebra");
    }

    #[test]
    fn all_suites_pass_on_a_quick_sweep() {
        let outcomes = verify_all(&quick_config()).unwrap();
        assert_eq!(outcomes.len(), 7);
        for outcome in &outcomes {
            assert!(
                outcome.pass,
                "suite {} deviated by {} against {}",
                outcome.name, outcome.max_deviation, outcome.tolerance
            );
        }
    }

    #[test]
    fn oracle_suite_skips_borderline_sectors() {
        // At B = 1/2 the sector (s = -1, m = 1) has A = |1 + 1 - 1|/2 and
        // C = |1 + 1|/2 both positive, but (s = +1, m = -2) has A = 0.
        let cfg = VerifyConfig { b: 0.5, ..quick_config() };
        let outcome = suite_oracle(&cfg).unwrap();
        assert!(outcome.details["skipped"].as_u64().unwrap() > 0);
        assert!(outcome.details["checked"].as_u64().unwrap() > 0);
        assert!(outcome.pass, "deviation {}", outcome.max_deviation);
    }

    #[test]
    fn suites_carry_their_tolerances() {
        let cfg = quick_config();
        let outcome = suite_residuals(&cfg).unwrap();
        assert_eq!(outcome.tolerance, crate::tol::ODE_RESIDUAL);
        let outcome = suite_first_order(&cfg).unwrap();
        assert_eq!(outcome.tolerance, crate::tol::FIRST_ORDER);
    }
}
