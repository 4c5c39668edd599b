//! Closed-form energy levels of the three radial spin sectors.
//!
//! Substituting the profile `psi = y^C (1-y)^A F(y)` with `y = (1-cos r)/2`
//! into the radial equation turns it into the Gauss hypergeometric equation.
//! The series terminates at degree n exactly when
//!
//! ```text
//! sqrt(B^2 + s B + 2 e M + 1/4) = n + 1/2 + (|2B + m + s| + |m - s|) / 2  =: N
//! ```
//!
//! with s = +1, 0, -1 the spin sector sign, so the level structure is
//!
//! ```text
//! 2 e M = N^2 - 1/4 - B^2 - s B .
//! ```
//!
//! In the relativistic second-order system the three decoupled functions all
//! obey the s = 0 radial operator, and the level condition is obtained from
//! the s = 0 form by the replacement `2 e M -> e^2 - M^2 + 2 s e B / M`,
//! which turns the condition into a quadratic in the energy with two real
//! roots (particle- and antiparticle-like).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{Branch, ParameterSet};

/// Endpoint exponents (C, A) of the sector profile `y^C (1-y)^A F(y)`.
///
/// The non-negative determinations C = |m - s|/2 and A = |2B + m + s|/2 are
/// used, which select the solution bounded at both poles of the sphere.
#[must_use]
pub fn sector_exponents(branch: Branch, m: i64, b: f64) -> (f64, f64) {
    let s = branch.sign();
    let c = (m as f64 - s).abs() / 2.0;
    let a = (2.0 * b + m as f64 + s).abs() / 2.0;
    (c, a)
}

/// Right-hand side N of the termination condition.
#[must_use]
pub fn quantization_rhs(branch: Branch, n: u32, m: i64, b: f64) -> f64 {
    let (c, a) = sector_exponents(branch, m, b);
    n as f64 + 0.5 + a + c
}

/// Nonrelativistic energy e = (N^2 - 1/4 - B^2 - s B) / (2 M).
#[must_use]
pub fn energy_nonrel(branch: Branch, n: u32, m: i64, b: f64, mass: f64) -> f64 {
    let big_n = quantization_rhs(branch, n, m, b);
    (big_n * big_n - 0.25 - b * b - branch.sign() * b) / (2.0 * mass)
}

/// Back-substitute a supplied energy into the termination condition and
/// return |sqrt(B^2 + s B + 2 e M + 1/4) - N|.
///
/// Rejects energies that drive the radicand negative; for energies produced
/// by [`energy_nonrel`] the radicand is N^2 and the deviation is roundoff.
pub fn back_substitution(branch: Branch, n: u32, m: i64, b: f64, mass: f64, eps: f64) -> Result<f64> {
    let radicand = b * b + branch.sign() * b + 2.0 * eps * mass + 0.25;
    if radicand < 0.0 {
        return Err(Error::NegativeRadicand { value: radicand });
    }
    Ok((radicand.sqrt() - quantization_rhs(branch, n, m, b)).abs())
}

/// Solve the relativistic quadratic e^2 + 2 s (B/M) e - (M^2 + K) = 0 for a
/// given condition value K, returning (plus root, minus root).
pub fn rel_roots_from_condition(shift_sign: f64, b: f64, mass: f64, k: f64) -> Result<(f64, f64)> {
    let half_shift = shift_sign * b / mass;
    let discriminant = half_shift * half_shift + mass * mass + k;
    if discriminant < 0.0 {
        return Err(Error::ComplexRoots { discriminant });
    }
    let root = discriminant.sqrt();
    Ok((-half_shift + root, -half_shift - root))
}

/// Both real energies of the relativistic level.
///
/// All three sector tags share the s = 0 quantization value
/// K = N^2 - 1/4 - B^2; the tag only selects the eigenvalue shift
/// `+2 s e B / M` of its decoupled second-order equation.
pub fn energy_rel(branch: Branch, n: u32, m: i64, b: f64, mass: f64) -> Result<(f64, f64)> {
    rel_roots_from_condition(branch.sign(), b, mass, rel_condition_value(n, m, b))
}

/// K = N^2 - 1/4 - B^2 with N in its s = 0 form.
#[must_use]
pub fn rel_condition_value(n: u32, m: i64, b: f64) -> f64 {
    let big_n = quantization_rhs(Branch::Zero, n, m, b);
    big_n * big_n - 0.25 - b * b
}

/// Energy content of a spectral line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Energy {
    NonRelativistic {
        energy: f64,
    },
    Relativistic {
        energy_plus: f64,
        energy_minus: f64,
    },
    /// Defensive variant: the quadratic had no real roots. Cannot arise
    /// from quantized levels, but is carried through sweeps rather than
    /// aborting them.
    ComplexRoots {
        discriminant: f64,
    },
}

impl Energy {
    /// Sort key: the nonrelativistic energy or the upper root.
    #[must_use]
    pub fn sort_value(&self) -> f64 {
        match self {
            Energy::NonRelativistic { energy } => *energy,
            Energy::Relativistic { energy_plus, .. } => *energy_plus,
            Energy::ComplexRoots { .. } => f64::INFINITY,
        }
    }

    #[must_use]
    pub fn non_rel(&self) -> Option<f64> {
        match self {
            Energy::NonRelativistic { energy } => Some(*energy),
            _ => None,
        }
    }

    #[must_use]
    pub fn roots(&self) -> Option<(f64, f64)> {
        match self {
            Energy::Relativistic { energy_plus, energy_minus } => Some((*energy_plus, *energy_minus)),
            _ => None,
        }
    }
}

/// One fully resolved level: quantum numbers, profile parameters and energy.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralLine {
    pub branch: Branch,
    pub relativistic: bool,
    pub n: u32,
    pub m: i64,
    #[serde(rename = "B")]
    pub b: f64,
    #[serde(rename = "M")]
    pub mass: f64,
    /// Termination value N = n + 1/2 + A + C.
    #[serde(rename = "N")]
    pub big_n: f64,
    /// Exponent of (1 - y) in the profile.
    #[serde(rename = "A")]
    pub exp_a: f64,
    /// Exponent of y in the profile.
    #[serde(rename = "C")]
    pub exp_c: f64,
    /// Upper hypergeometric parameter -n (termination).
    pub alpha: f64,
    /// Upper hypergeometric parameter A + C + 1/2 + N.
    pub beta: f64,
    /// Lower hypergeometric parameter 2C + 1.
    pub gamma: f64,
    #[serde(flatten)]
    pub energy: Energy,
    /// Set when C = 0 or A = 0: the second solution is bounded there too,
    /// so Dirichlet-based numerics cannot isolate this level.
    pub borderline: bool,
    /// Set when a nonrelativistic energy comes out negative.
    pub negative_energy: bool,
}

impl SpectralLine {
    /// Eigenvalue of the second-order radial operator for this line:
    /// 2 e M nonrelativistically, e^2 - M^2 + 2 s e B / M relativistically.
    /// None when the energies are complex.
    #[must_use]
    pub fn condition_value(&self) -> Option<f64> {
        match self.energy {
            Energy::NonRelativistic { energy } => Some(2.0 * energy * self.mass),
            Energy::Relativistic { energy_plus, .. } => {
                let e = energy_plus;
                Some(e * e - self.mass * self.mass + 2.0 * self.branch.sign() * e * self.b / self.mass)
            }
            Energy::ComplexRoots { .. } => None,
        }
    }

    /// Sector the second-order equation of this line lives in: the line's
    /// own sector nonrelativistically, always the s = 0 sector
    /// relativistically.
    #[must_use]
    pub fn equation_branch(&self) -> Branch {
        if self.relativistic {
            Branch::Zero
        } else {
            self.branch
        }
    }
}

/// Resolve a single level.
#[must_use]
pub fn line(branch: Branch, relativistic: bool, n: u32, m: i64, b: f64, mass: f64) -> SpectralLine {
    let exponent_branch = if relativistic { Branch::Zero } else { branch };
    let (exp_c, exp_a) = sector_exponents(exponent_branch, m, b);
    let big_n = n as f64 + 0.5 + exp_a + exp_c;
    let energy = if relativistic {
        match energy_rel(branch, n, m, b, mass) {
            Ok((plus, minus)) => Energy::Relativistic { energy_plus: plus, energy_minus: minus },
            Err(Error::ComplexRoots { discriminant }) => Energy::ComplexRoots { discriminant },
            Err(_) => unreachable!("relativistic roots only fail through the discriminant"),
        }
    } else {
        Energy::NonRelativistic { energy: energy_nonrel(branch, n, m, b, mass) }
    };
    let negative_energy = matches!(energy, Energy::NonRelativistic { energy } if energy < 0.0);
    SpectralLine {
        branch,
        relativistic,
        n,
        m,
        b,
        mass,
        big_n,
        exp_a,
        exp_c,
        alpha: -(n as f64),
        beta: exp_a + exp_c + 0.5 + big_n,
        gamma: 2.0 * exp_c + 1.0,
        energy,
        borderline: exp_c == 0.0 || exp_a == 0.0,
        negative_energy,
    }
}

/// All levels with n <= n_max and m in the given interval, sorted by
/// energy, then n, then m. An empty m interval yields an empty list.
#[must_use]
pub fn enumerate_spectrum(
    p: &ParameterSet,
    branch: Branch,
    relativistic: bool,
    n_max: u32,
    m_range: std::ops::RangeInclusive<i64>,
) -> Vec<SpectralLine> {
    let mut lines = Vec::new();
    for n in 0..=n_max {
        for m in m_range.clone() {
            lines.push(line(branch, relativistic, n, m, p.b, p.mass));
        }
    }
    lines.sort_by(|x, y| {
        x.energy
            .sort_value()
            .total_cmp(&y.energy.sort_value())
            .then(x.n.cmp(&y.n))
            .then(x.m.cmp(&y.m))
    });
    lines
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use proptest::prelude::*;

    #[test]
    fn termination_value_examples() {
        // s = +1, n = 0, m = 1, B = 1: N = 1/2 + (|4| + |0|)/2 = 5/2.
        assert_relative_eq!(quantization_rhs(Branch::Plus, 0, 1, 1.0), 2.5);
        // s = 0, n = 1, m = 2, B = 0: N = 3/2 + (2 + 2)/2 = 7/2.
        assert_relative_eq!(quantization_rhs(Branch::Zero, 1, 2, 0.0), 3.5);
    }

    #[test]
    fn nonrelativistic_energy_examples() {
        // N = 5/2, B = 1, s = +1: 2e = 25/4 - 1/4 - 1 - 1 = 4.
        assert_relative_eq!(energy_nonrel(Branch::Plus, 0, 1, 1.0, 1.0), 2.0);
        // Free sphere: 2e = l(l+1) with l = n + |m| = 3.
        assert_relative_eq!(energy_nonrel(Branch::Zero, 1, 2, 0.0, 1.0), 6.0);
        // Half-integer field: N = 1, 2e = 1 - 1/4 - 1/4 = 1/2.
        assert_relative_eq!(energy_nonrel(Branch::Zero, 0, 0, 0.5, 1.0), 0.25);
        // Lowest free s = 0 level sits at zero energy.
        assert_abs_diff_eq!(energy_nonrel(Branch::Zero, 0, 0, 0.0, 1.0), 0.0);
    }

    #[test]
    fn free_sphere_levels_are_l_l_plus_1() {
        for n in 0..=10u32 {
            for m in -5i64..=5 {
                let l = n as f64 + m.unsigned_abs() as f64;
                let want = l * (l + 1.0) / 2.0;
                assert_abs_diff_eq!(
                    energy_nonrel(Branch::Zero, n, m, 0.0, 1.0),
                    want,
                    epsilon = 1e-12
                );
            }
        }
    }

    #[test]
    fn relativistic_roots_symmetric_without_field() {
        // B = 0, n = 1, m = 0: N = 3/2, K = 2, e = +-sqrt(3).
        let (plus, minus) = energy_rel(Branch::Zero, 1, 0, 0.0, 1.0).unwrap();
        assert_relative_eq!(plus, 3.0f64.sqrt(), max_relative = 1e-15);
        assert_relative_eq!(minus, -(3.0f64.sqrt()), max_relative = 1e-15);
        // All three tags coincide at B = 0.
        let (p2, m2) = energy_rel(Branch::Plus, 1, 0, 0.0, 1.0).unwrap();
        assert_relative_eq!(plus, p2);
        assert_relative_eq!(minus, m2);
    }

    #[test]
    fn heavy_mass_limit_reduces_to_shifted_nonrelativistic_level() {
        // For M >> 1 the upper root of the s = -1 sector approaches
        // M + (K + 2B)/(2M) up to terms of order 1/M^2.
        let (b, mass, n, m) = (1.0, 10.0, 0u32, 0i64);
        let (plus, _) = energy_rel(Branch::Minus, n, m, b, mass).unwrap();
        let k = rel_condition_value(n, m, b);
        let shifted = (k + 2.0 * b) / (2.0 * mass);
        let big_n = quantization_rhs(Branch::Zero, n, m, b);
        let tol = 10.0 * (b * b + big_n * big_n) / (mass * mass);
        assert!(
            (plus - mass - shifted).abs() <= tol,
            "rest-frame offset {} differs from {} beyond {}",
            plus - mass,
            shifted,
            tol
        );
    }

    #[test]
    fn complex_roots_reported_for_impossible_condition() {
        let err = rel_roots_from_condition(0.0, 0.0, 1.0, -2.0).unwrap_err();
        assert!(matches!(err, Error::ComplexRoots { discriminant } if discriminant < 0.0));
    }

    #[test]
    fn back_substitution_rejects_deep_negative_energy() {
        let err = back_substitution(Branch::Zero, 0, 0, 0.0, 1.0, -10.0).unwrap_err();
        assert!(matches!(err, Error::NegativeRadicand { .. }));
    }

    #[test]
    fn line_carries_profile_parameters() {
        let l = line(Branch::Plus, false, 0, 1, 1.0, 1.0);
        assert_relative_eq!(l.exp_c, 0.0);
        assert_relative_eq!(l.exp_a, 2.0);
        assert_relative_eq!(l.big_n, 2.5);
        assert_relative_eq!(l.alpha, 0.0);
        assert_relative_eq!(l.beta, 5.0);
        assert_relative_eq!(l.gamma, 1.0);
        assert!(l.borderline, "C = 0 must be flagged");
        assert!(!l.negative_energy);
    }

    #[test]
    fn relativistic_line_uses_zero_sector_exponents() {
        let l = line(Branch::Minus, true, 2, 1, 1.0, 1.0);
        let (c, a) = sector_exponents(Branch::Zero, 1, 1.0);
        assert_relative_eq!(l.exp_c, c);
        assert_relative_eq!(l.exp_a, a);
        assert_eq!(l.equation_branch(), Branch::Zero);
        // Condition value equals K for both roots.
        let k = rel_condition_value(2, 1, 1.0);
        assert_relative_eq!(l.condition_value().unwrap(), k, max_relative = 1e-12);
    }

    #[test]
    fn enumerate_free_sphere_multiset() {
        // At B = 0 the s = 0 energies reproduce the rigid-rotor multiset
        // {l(l+1)/2 : l = n + |m|} with its degeneracy pattern.
        let p = ParameterSet::new(0.0, 1.0, 0).unwrap();
        let lines = enumerate_spectrum(&p, Branch::Zero, false, 2, -2..=2);
        assert_eq!(lines.len(), 15);
        let mut got: Vec<f64> = lines.iter().map(|l| l.energy.sort_value()).collect();
        let mut want: Vec<f64> = (0..=2u32)
            .flat_map(|n| (-2i64..=2).map(move |m| (n, m)))
            .map(|(n, m)| {
                let l = n as f64 + m.unsigned_abs() as f64;
                l * (l + 1.0) / 2.0
            })
            .collect();
        got.sort_by(f64::total_cmp);
        want.sort_by(f64::total_cmp);
        for (g, w) in got.iter().zip(&want) {
            assert_abs_diff_eq!(g, w, epsilon = 1e-12);
        }
        // Sorted by energy, then n, then m.
        for pair in lines.windows(2) {
            let key = |l: &SpectralLine| (l.energy.sort_value(), l.n, l.m);
            assert!(key(&pair[0]) <= key(&pair[1]));
        }
    }

    #[test]
    fn empty_m_interval_yields_no_lines() {
        let p = ParameterSet::new(1.0, 1.0, 0).unwrap();
        assert!(enumerate_spectrum(&p, Branch::Zero, false, 3, 1..=0).is_empty());
    }

    proptest! {
        #[test]
        fn back_substitution_round_trips(
            b in -3.0f64..3.0,
            mass in 0.2f64..5.0,
            n in 0u32..8,
            m in -6i64..=6,
        ) {
            for branch in Branch::ALL {
                let eps = energy_nonrel(branch, n, m, b, mass);
                let dev = back_substitution(branch, n, m, b, mass, eps).unwrap();
                prop_assert!(dev <= 1e-12, "branch {branch}: deviation {dev}");
            }
        }

        #[test]
        fn energies_increase_strictly_in_n(
            b in -3.0f64..3.0,
            m in -6i64..=6,
            n in 0u32..8,
        ) {
            for branch in Branch::ALL {
                let lo = energy_nonrel(branch, n, m, b, 1.0);
                let hi = energy_nonrel(branch, n + 1, m, b, 1.0);
                prop_assert!(hi > lo);
            }
        }

        #[test]
        fn nonrelativistic_energies_are_never_negative(
            b in -4.0f64..4.0,
            m in -6i64..=6,
            n in 0u32..6,
        ) {
            for branch in Branch::ALL {
                let eps = energy_nonrel(branch, n, m, b, 1.0);
                prop_assert!(eps >= -1e-15, "branch {branch}: {eps}");
            }
        }

        #[test]
        fn relativistic_roots_solve_their_quadratic(
            b in -3.0f64..3.0,
            mass in 0.2f64..5.0,
            n in 0u32..6,
            m in -5i64..=5,
        ) {
            for branch in Branch::ALL {
                let (plus, minus) = energy_rel(branch, n, m, b, mass).unwrap();
                let k = rel_condition_value(n, m, b);
                let s = branch.sign();
                for e in [plus, minus] {
                    let resid = e * e + 2.0 * s * (b / mass) * e - (mass * mass + k);
                    prop_assert!(resid.abs() <= 1e-10 * (mass * mass + k.abs()).max(1.0));
                }
                // Vieta: product of roots.
                let product = plus * minus + (mass * mass + k);
                prop_assert!(product.abs() <= 1e-10 * (mass * mass + k.abs()).max(1.0));
            }
        }

        #[test]
        fn plus_minus_sectors_mirror_exactly(
            b in -3.0f64..3.0,
            m in -6i64..=6,
            n in 0u32..8,
        ) {
            let lhs = energy_nonrel(Branch::Plus, n, m, b, 1.0);
            let rhs = energy_nonrel(Branch::Minus, n, -m, -b, 1.0);
            prop_assert!((lhs - rhs).abs() <= 1e-12 * lhs.abs().max(1.0));
        }

        #[test]
        fn alpha_is_minus_n(
            b in -3.0f64..3.0,
            m in -5i64..=5,
            n in 0u32..8,
        ) {
            for branch in Branch::ALL {
                let l = line(branch, false, n, m, b, 1.0);
                prop_assert_eq!(l.alpha, -(n as f64));
                // N - 1/2 = n + A + C ties the exponents to the level index.
                prop_assert!((l.big_n - 0.5 - (n as f64 + l.exp_a + l.exp_c)).abs() < 1e-12);
            }
        }
    }
}
