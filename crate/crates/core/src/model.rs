//! Physical setup: a particle of spin 1 and mass M on the unit two-sphere,
//! coupled to a uniform radial magnetic field of strength B.
//!
//! Natural units with hbar = c = 1 and sphere radius 1 are used throughout.
//! The gauge is chosen so the vector potential vanishes at the north pole
//! r = 0, which makes the effective azimuthal index
//! `nu(r) = m + B (1 - cos r)` with m the magnetic quantum number. After
//! separating the azimuthal angle, each spin projection s in {+1, 0, -1}
//! obeys a radial equation
//!
//! ```text
//! psi'' + cot(r) psi' - V_s(r) psi + 2 e M psi = 0
//! ```
//!
//! whose effective potential `V_s` is produced by [`potential`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jets::Jet2;

/// Below this value of |sin r| the 1/sin terms are treated as singular.
pub const SIN_SINGULAR_THRESHOLD: f64 = 1e-12;

/// Spin projection sector of the radial problem.
///
/// `Plus`, `Zero` and `Minus` label the spin projections +1, 0 and -1 of
/// the upper three-component block of the wavefunction. In the relativistic
/// second-order system the same three tags label the decoupled functions
/// whose eigenvalue shift is +2eB/M, 0 and -2eB/M respectively.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Plus,
    Zero,
    Minus,
}

impl Branch {
    pub const ALL: [Branch; 3] = [Branch::Plus, Branch::Zero, Branch::Minus];

    /// Spin projection s as a signed float: +1, 0, -1.
    #[must_use]
    pub fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Zero => 0.0,
            Branch::Minus => -1.0,
        }
    }
}

impl std::fmt::Display for Branch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Branch::Plus => "plus",
            Branch::Zero => "zero",
            Branch::Minus => "minus",
        })
    }
}

impl std::str::FromStr for Branch {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plus" | "+1" | "+" => Ok(Branch::Plus),
            "zero" | "0" => Ok(Branch::Zero),
            "minus" | "-1" | "-" => Ok(Branch::Minus),
            other => Err(Error::InvalidParameter(format!(
                "unknown branch `{other}` (expected plus, zero or minus)"
            ))),
        }
    }
}

/// Field strength, mass and magnetic quantum number of one problem instance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParameterSet {
    /// Magnetic field strength B (any finite real value).
    pub b: f64,
    /// Particle mass M, strictly positive.
    pub mass: f64,
    /// Magnetic quantum number m.
    pub m: i64,
}

impl ParameterSet {
    pub fn new(b: f64, mass: f64, m: i64) -> Result<Self> {
        if !b.is_finite() {
            return Err(Error::InvalidParameter(format!("B must be finite, got {b}")));
        }
        if !(mass.is_finite() && mass > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "mass must be finite and positive, got {mass}"
            )));
        }
        Ok(ParameterSet { b, mass, m })
    }

    /// Effective azimuthal index nu(r) = m + B (1 - cos r).
    ///
    /// Smooth on the closed interval [0, pi]; nu(0) = m and
    /// nu(pi) = m + 2B.
    #[must_use]
    pub fn nu(&self, r: f64) -> f64 {
        self.m as f64 + self.b * (1.0 - r.cos())
    }

    /// nu as a jet of r, for use inside operator coefficients.
    #[must_use]
    pub fn nu_jet(&self, r: Jet2) -> Jet2 {
        (1.0 - r.cos()) * self.b + self.m as f64
    }

    /// Effective radial potential V_s(r) of the second-order equation for
    /// the given spin sector:
    ///
    /// ```text
    /// V_+1 =  B + (1 - 2 nu cos r) / sin^2 r + nu^2 / sin^2 r
    /// V_0  =      nu^2 / sin^2 r
    /// V_-1 = -B + (1 + 2 nu cos r) / sin^2 r + nu^2 / sin^2 r
    /// ```
    ///
    /// These are exactly the potentials generated by the ladder-operator
    /// factorizations of the radial equations; the dual-number composition
    /// check in the operators module reproduces them pointwise.
    pub fn potential(&self, branch: Branch, r: f64) -> Result<f64> {
        let sin_r = r.sin();
        if sin_r.abs() < SIN_SINGULAR_THRESHOLD {
            return Err(Error::SingularPoint { r, sin_r });
        }
        let nu = self.nu(r);
        let inv_sin2 = 1.0 / (sin_r * sin_r);
        let s = branch.sign();
        let centrifugal = nu * nu * inv_sin2;
        Ok(match branch {
            Branch::Zero => centrifugal,
            _ => s * self.b + (1.0 - s * 2.0 * nu * r.cos()) * inv_sin2 + centrifugal,
        })
    }
}

/// A point of the open radial interval (0, pi), carried both as the polar
/// angle r and as the algebraic variable y = (1 - cos r)/2 in [0, 1].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadialPoint {
    r: f64,
    y: f64,
}

impl RadialPoint {
    pub fn from_r(r: f64) -> Result<Self> {
        if !(r.is_finite() && r > 0.0 && r < std::f64::consts::PI) {
            return Err(Error::InvalidParameter(format!(
                "r must lie strictly inside (0, pi), got {r}"
            )));
        }
        Ok(RadialPoint { r, y: (1.0 - r.cos()) / 2.0 })
    }

    pub fn from_y(y: f64) -> Result<Self> {
        if !(y.is_finite() && y > 0.0 && y < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "y must lie strictly inside (0, 1), got {y}"
            )));
        }
        Ok(RadialPoint { r: (1.0 - 2.0 * y).acos(), y })
    }

    #[must_use]
    pub fn r(&self) -> f64 {
        self.r
    }

    #[must_use]
    pub fn y(&self) -> f64 {
        self.y
    }
}
