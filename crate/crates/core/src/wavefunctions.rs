//! Radial profiles: terminating hypergeometric series, normalization,
//! residual checks, and the explicit ten-component relativistic branch.
//!
//! In the variable y = (1 - cos r)/2 every bound radial solution has the
//! form `psi = y^C (1-y)^A F(-n, beta; gamma; y)` with F a terminating
//! Gauss hypergeometric series of degree n. Profiles are normalized to
//! unit norm against the surface measure, `int_0^pi psi^2 sin r dr = 1`,
//! which transforms to `int_0^1 psi^2 * 2 dy = 1`, and their phase is fixed
//! real and positive as y -> 0+.

use num_complex::Complex64;

use crate::dkp::ComplexMatrix;
use crate::error::{Error, Result};
use crate::jets::{DualSample, Jet2};
use crate::model::{Branch, ParameterSet, SIN_SINGULAR_THRESHOLD};
use crate::operators::{ComponentSet, LadderKind, LadderOp};
use crate::quadrature::integrate_adaptive;
use crate::spectra::SpectralLine;

/// Terminating Gauss hypergeometric series F(-n, beta; gamma; y) stored by
/// its monomial coefficients.
///
/// Two evaluation paths exist. [`HypergeometricPoly::eval`] runs the
/// three-term degree recurrence of the orthogonal family the series
/// belongs to, which keeps roundoff proportional to the local value.
/// [`HypergeometricPoly::eval_series`] sums the stored coefficients
/// directly; its roundoff grows with the largest coefficient, which for
/// degree 10 can cost eight digits, so it serves as an independent
/// cross-check rather than the production path.
#[derive(Debug, Clone, PartialEq)]
pub struct HypergeometricPoly {
    pub degree: u32,
    pub beta: f64,
    pub gamma: f64,
    /// Monomial coefficients, constant term first; length degree + 1.
    pub coefficients: Vec<f64>,
}

impl HypergeometricPoly {
    /// Build the coefficient list c_{k+1} = c_k (k - n)(beta + k) /
    /// ((gamma + k)(k + 1)) with c_0 = 1.
    ///
    /// Rejects gamma that is a non-positive integer greater than -n, since
    /// a series denominator then vanishes before termination.
    pub fn new(degree: u32, beta: f64, gamma: f64) -> Result<Self> {
        let n = degree as f64;
        if gamma <= 0.0 && gamma.fract() == 0.0 && gamma > -n {
            return Err(Error::GammaPole { gamma, degree });
        }
        let mut coefficients = Vec::with_capacity(degree as usize + 1);
        let mut c = 1.0;
        coefficients.push(c);
        for k in 0..degree {
            let kf = k as f64;
            c *= (kf - n) * (beta + kf) / ((gamma + kf) * (kf + 1.0));
            coefficients.push(c);
        }
        Ok(HypergeometricPoly { degree, beta, gamma, coefficients })
    }

    /// Value at y, stable at every degree this crate constructs.
    #[must_use]
    pub fn eval(&self, y: f64) -> f64 {
        self.eval_jet(Jet2::constant(y)).f
    }

    /// Value and y-derivatives, same evaluation strategy as
    /// [`HypergeometricPoly::eval`].
    #[must_use]
    pub fn eval_jet(&self, y: Jet2) -> Jet2 {
        match self.recurrence_weights() {
            Some((a, b)) => self.eval_recurrence_jet(y, a, b),
            None => self.eval_series_jet(y),
        }
    }

    /// Direct Horner summation of the stored coefficients.
    #[must_use]
    pub fn eval_series(&self, y: f64) -> f64 {
        self.coefficients.iter().rev().fold(0.0, |acc, c| acc * y + c)
    }

    fn eval_series_jet(&self, y: Jet2) -> Jet2 {
        self.coefficients
            .iter()
            .rev()
            .fold(Jet2::constant(0.0), |acc, &c| acc * y + c)
    }

    /// Weight exponents (a, b) of the orthogonal family this series belongs
    /// to, provided the degree recurrence is well posed there. Every
    /// bound-state series has a = 2C >= 0 and b = 2A >= 0, so profiles
    /// always take the recurrence path; the direct summation fallback
    /// covers hand-built parameter combinations outside that region.
    fn recurrence_weights(&self) -> Option<(f64, f64)> {
        let a = self.gamma - 1.0;
        let b = self.beta - self.gamma - f64::from(self.degree);
        (a > -1.0 && b > -1.0).then_some((a, b))
    }

    /// Three-term recurrence in the degree, run in jet arithmetic over
    /// x = 1 - 2y, then rescaled so the constant term is 1.
    fn eval_recurrence_jet(&self, y: Jet2, a: f64, b: f64) -> Jet2 {
        let n = self.degree as usize;
        let mut scale = 1.0;
        for k in 1..=n {
            scale *= k as f64 / (self.gamma + k as f64 - 1.0);
        }
        if n == 0 {
            return Jet2::constant(scale);
        }
        let x = 1.0 - y * 2.0;
        let mut prev = Jet2::constant(1.0);
        let mut cur = x * (1.0 + (a + b) / 2.0) + (a - b) / 2.0;
        for k in 2..=n {
            let kf = k as f64;
            let t = 2.0 * kf + a + b;
            let next = ((x * (t * (t - 2.0)) + (a * a - b * b)) * (t - 1.0) * cur
                - prev * (2.0 * (kf + a - 1.0) * (kf + b - 1.0) * t))
                / (2.0 * kf * (kf + a + b) * (t - 2.0));
            prev = cur;
            cur = next;
        }
        cur * scale
    }
}

/// Evaluate a terminating series at a point of [0, 1] by direct summation
/// of its coefficients.
#[must_use]
pub fn hyp_eval(poly: &HypergeometricPoly, y: f64) -> f64 {
    poly.eval_series(y)
}

/// A normalized bound-state radial profile.
#[derive(Debug, Clone)]
pub struct RadialProfile {
    /// Sector of the second-order equation this profile solves. For
    /// profiles built from relativistic lines this is the s = 0 sector
    /// regardless of the line's tag.
    pub branch: Branch,
    /// Exponent of (1 - y).
    pub exp_a: f64,
    /// Exponent of y.
    pub exp_c: f64,
    pub poly: HypergeometricPoly,
    /// Scale factor fixing unit norm, positive.
    pub normalization: f64,
}

impl RadialProfile {
    fn shape_jet(&self, y: Jet2) -> Jet2 {
        let pow_c = if self.exp_c == 0.0 { Jet2::constant(1.0) } else { y.powf(self.exp_c) };
        let one_minus = 1.0 - y;
        let pow_a = if self.exp_a == 0.0 { Jet2::constant(1.0) } else { one_minus.powf(self.exp_a) };
        pow_c * pow_a * self.poly.eval_jet(y) * self.normalization
    }

    /// Value at a point of the open interval (0, 1).
    #[must_use]
    pub fn value_y(&self, y: f64) -> f64 {
        let pow_c = if self.exp_c == 0.0 { 1.0 } else { y.powf(self.exp_c) };
        let pow_a = if self.exp_a == 0.0 { 1.0 } else { (1.0 - y).powf(self.exp_a) };
        self.normalization * pow_c * pow_a * self.poly.eval(y)
    }

    /// Value, dpsi/dy and d^2psi/dy^2 at y.
    #[must_use]
    pub fn jet_y(&self, y: f64) -> Jet2 {
        self.shape_jet(Jet2::variable(y))
    }

    #[must_use]
    pub fn value_r(&self, r: f64) -> f64 {
        self.value_y((1.0 - r.cos()) / 2.0)
    }

    /// Value, dpsi/dr and d^2psi/dr^2 at r, through the chain rule on
    /// y = (1 - cos r)/2.
    #[must_use]
    pub fn jet_r(&self, r: f64) -> Jet2 {
        let y = (1.0 - Jet2::variable(r).cos()) / 2.0;
        self.shape_jet(y)
    }

    /// The profile as an operator input sample at r.
    #[must_use]
    pub fn sample_r(&self, r: f64) -> DualSample {
        let j = self.jet_r(r);
        DualSample { r, f: j.f, df: j.df, ddf: j.ddf }
    }
}

/// Relative settling tolerance of the normalization quadrature.
const NORM_QUADRATURE_TOL: f64 = 1e-12;

fn normalization_nodes(degree_sum: u32, exp_total: f64) -> usize {
    degree_sum as usize + (2.0 * exp_total).ceil().max(0.0) as usize + 4
}

/// Build and normalize the profile of a spectral line.
///
/// The node count n + ceil(2A + 2C) + 4 makes the quadrature exact whenever
/// the twice-exponents are integers (every half-integer field strength);
/// otherwise panel refinement runs until the integral settles.
pub fn build_profile(line: &SpectralLine) -> Result<RadialProfile> {
    let poly = HypergeometricPoly::new(line.n, line.beta, line.gamma)?;
    let mut profile = RadialProfile {
        branch: line.equation_branch(),
        exp_a: line.exp_a,
        exp_c: line.exp_c,
        poly,
        normalization: 1.0,
    };
    let nodes = normalization_nodes(line.n, line.exp_a + line.exp_c);
    let (norm_sq, _, converged) = integrate_adaptive(
        |y| {
            let v = profile.value_y(y);
            2.0 * v * v
        },
        nodes,
        NORM_QUADRATURE_TOL,
        14,
    );
    if !converged || !norm_sq.is_finite() || norm_sq <= 1e-300 {
        return Err(Error::NonNormalizable { value: norm_sq });
    }
    profile.normalization = 1.0 / norm_sq.sqrt();
    Ok(profile)
}

/// Overlap of two same-sector profiles against the surface measure,
/// `int_0^1 psi_1 psi_2 * 2 dy`.
#[must_use]
pub fn profile_overlap(p1: &RadialProfile, p2: &RadialProfile) -> f64 {
    let nodes = normalization_nodes(
        p1.poly.degree + p2.poly.degree,
        (p1.exp_a + p1.exp_c + p2.exp_a + p2.exp_c) / 2.0,
    );
    let (value, _, _) = integrate_adaptive(
        |y| 2.0 * p1.value_y(y) * p2.value_y(y),
        nodes,
        NORM_QUADRATURE_TOL,
        14,
    );
    value
}

/// Residuals of the second-order equation in both variables, normalized by
/// the largest profile amplitude on the grid.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct OdeResidual {
    /// max |psi'' + cot r psi' - V psi + 2 e M psi| / max |psi| in r.
    pub r_form: f64,
    /// Residual of the series factor F in the transported equation, after
    /// peeling y^C (1-y)^A off the profile. Its singular coefficients
    /// (4C^2 - q_C^2)/4y and (4A^2 - q_A^2)/4(1-y) vanish identically for
    /// the chosen exponents and are evaluated as written.
    pub y_form: f64,
}

impl OdeResidual {
    #[must_use]
    pub fn max(&self) -> f64 {
        self.r_form.max(self.y_form)
    }
}

/// Check the profile against its radial equation at energy eps on a grid.
///
/// The parameter set must carry the same m and B the profile was built
/// from. Derivatives come from the closed form through jet arithmetic.
pub fn residual_ode(
    profile: &RadialProfile,
    eps: f64,
    p: &ParameterSet,
    grid: &[f64],
) -> Result<OdeResidual> {
    let branch = profile.branch;
    let lambda = 2.0 * eps * p.mass;
    let s = branch.sign();
    let (exp_c, exp_a) = (profile.exp_c, profile.exp_a);
    let gamma = profile.poly.gamma;
    let q_a = 2.0 * p.b + p.m as f64 + s;
    let q_c = p.m as f64 - s;
    let big_lambda = p.b * p.b + s * p.b + lambda;
    let ac = exp_a + exp_c;

    let mut worst_r = 0.0f64;
    let mut worst_y = 0.0f64;
    let mut amplitude_r = 0.0f64;
    let mut amplitude_y = 0.0f64;
    for &r in grid {
        let sin_r = r.sin();
        if sin_r.abs() < SIN_SINGULAR_THRESHOLD {
            return Err(Error::SingularPoint { r, sin_r });
        }
        let u = profile.jet_r(r);
        amplitude_r = amplitude_r.max(u.f.abs());
        let v_pot = p.potential(branch, r)?;
        let resid_r = u.ddf + (r.cos() / sin_r) * u.df - v_pot * u.f + lambda * u.f;
        worst_r = worst_r.max(resid_r.abs());

        let y = (1.0 - r.cos()) / 2.0;
        let v = profile.poly.eval_jet(Jet2::variable(y));
        amplitude_y = amplitude_y.max(v.f.abs());
        let singular_a = (4.0 * exp_a * exp_a - q_a * q_a) / (4.0 * (1.0 - y));
        let singular_c = (4.0 * exp_c * exp_c - q_c * q_c) / (4.0 * y);
        let resid_y = y * (1.0 - y) * v.ddf
            + (gamma - (2.0 * ac + 2.0) * y) * v.df
            + (big_lambda - ac * (ac + 1.0) + singular_a + singular_c) * v.f;
        worst_y = worst_y.max(resid_y.abs());
    }
    Ok(OdeResidual {
        r_form: worst_r / amplitude_r.max(f64::MIN_POSITIVE),
        y_form: worst_y / amplitude_y.max(f64::MIN_POSITIVE),
    })
}

/// Build the explicit ten-component solution generated by a single s = 0
/// profile phi2 at energy eps:
///
/// ```text
/// E2 = -i (eps/M) phi2,  H1 = -(i/M) a phi2,  H3 = (i/M) b phi2,
/// ```
///
/// all other components zero. The line must carry the s = 0 tag of the
/// relativistic system; either quadratic root (or an intentionally detuned
/// energy) may be supplied as eps.
pub fn build_simple_relativistic_branch(line: &SpectralLine, eps: f64) -> Result<ComponentSet> {
    if !(line.relativistic && line.branch == Branch::Zero) {
        return Err(Error::InvalidParameter(
            "the explicit branch construction needs a relativistic s = 0 line".into(),
        ));
    }
    let p = ParameterSet::new(line.b, line.mass, line.m)?;
    let profile = build_profile(line)?;
    let mass = line.mass;

    let sample = {
        let profile = profile.clone();
        move |r: f64| profile.sample_r(r)
    };
    let ladder_pair = move |kind: LadderKind, r: f64, profile: &RadialProfile| {
        let op = LadderOp::new(kind, p);
        match op.apply(&profile.sample_r(r)) {
            Ok(out) => (out.f, out.df),
            Err(_) => (f64::NAN, f64::NAN),
        }
    };

    let mut set = ComponentSet::zero();
    set.phi2 = {
        let sample = sample.clone();
        Box::new(move |r| {
            let s = sample(r);
            (Complex64::new(s.f, 0.0), Complex64::new(s.df, 0.0))
        })
    };
    set.e2 = {
        let sample = sample.clone();
        Box::new(move |r| {
            let s = sample(r);
            let scale = Complex64::new(0.0, -eps / mass);
            (scale * s.f, scale * s.df)
        })
    };
    set.h1 = {
        let profile = profile.clone();
        Box::new(move |r| {
            let (f, df) = ladder_pair(LadderKind::A, r, &profile);
            let scale = Complex64::new(0.0, -1.0 / mass);
            (scale * f, scale * df)
        })
    };
    set.h3 = {
        let profile = profile.clone();
        Box::new(move |r| {
            let (f, df) = ladder_pair(LadderKind::B, r, &profile);
            let scale = Complex64::new(0.0, 1.0 / mass);
            (scale * f, scale * df)
        })
    };
    Ok(set)
}

/// Eigendecomposition of the 2x2 magnetic coupling block.
#[derive(Debug, Clone)]
pub struct CouplingDiagonalization {
    /// Eigenvalue +2 eps B / M.
    pub lambda_plus: f64,
    /// Eigenvalue -2 eps B / M.
    pub lambda_minus: f64,
    /// The coupling matrix [[0, 2iB], [-2iB eps^2/M^2, 0]].
    pub coupling: ComplexMatrix,
    /// Row transform S = [[eps, iM], [eps, -iM]].
    pub transform: ComplexMatrix,
    /// Its inverse (1 / -2 i eps M) [[-iM, -iM], [-eps, eps]].
    pub inverse: ComplexMatrix,
    /// max over |S A S^-1 - diag| and |S S^-1 - 1| entries.
    pub deviation: f64,
}

/// Diagonalize the coupling between the scalar and s = 0 components of the
/// relativistic system. Fails at eps = 0 where the transform degenerates.
pub fn diagonalize_coupling(b: f64, mass: f64, eps: f64) -> Result<CouplingDiagonalization> {
    if eps == 0.0 {
        return Err(Error::SingularTransform);
    }
    let i = Complex64::I;
    let gamma_ratio = eps * eps / (mass * mass);
    let coupling = ComplexMatrix::from_rows(&[
        vec![Complex64::ZERO, i * 2.0 * b],
        vec![-i * 2.0 * b * gamma_ratio, Complex64::ZERO],
    ]);
    let transform = ComplexMatrix::from_rows(&[
        vec![Complex64::from(eps), i * mass],
        vec![Complex64::from(eps), -i * mass],
    ]);
    let det_scale = (-i * 2.0 * eps * mass).inv();
    let inverse = ComplexMatrix::from_rows(&[
        vec![det_scale * (-i * mass), det_scale * (-i * mass)],
        vec![det_scale * (-eps), det_scale * eps],
    ]);
    let lambda_plus = 2.0 * eps * b / mass;
    let lambda_minus = -lambda_plus;

    let product = transform.mul(&coupling).unwrap().mul(&inverse).unwrap();
    let mut deviation = 0.0f64;
    for (idx, want) in [((0, 0), Complex64::from(lambda_plus)), ((1, 1), Complex64::from(lambda_minus))] {
        deviation = deviation.max((product[idx] - want).norm());
    }
    deviation = deviation.max(product[(0, 1)].norm()).max(product[(1, 0)].norm());
    let identity_dev = transform
        .mul(&inverse)
        .unwrap()
        .sub(&ComplexMatrix::identity(2))
        .unwrap()
        .max_abs();
    deviation = deviation.max(identity_dev);

    Ok(CouplingDiagonalization {
        lambda_plus,
        lambda_minus,
        coupling,
        transform,
        inverse,
        deviation,
    })
}
