//! Landau levels and radial wavefunctions of a charged spin-1 particle on
//! a two-sphere threaded by a radial magnetic field.
//!
//! The first-order relativistic wave equation for spin 1 on the sphere
//! separates into radial sectors labelled by a spin sign s in {+1, 0, -1}.
//! Each sector reduces to a hypergeometric equation whose terminating
//! solutions give the exact spectrum and normalizable profiles. This crate
//! computes those closed forms and then independently checks them:
//!
//! * [`dkp`] builds the ten-dimensional matrix representation behind the
//!   wave equation and verifies its structural identities.
//! * [`model`] holds the physical parameters, the gauge-shifted azimuthal
//!   weight nu(r) and the three sector potentials.
//! * [`operators`] implements the six first-order ladder operators through
//!   truncated-Taylor (jet) arithmetic and measures their composition
//!   identities without any finite differencing.
//! * [`spectra`] evaluates the closed-form level conditions, both with a
//!   nonrelativistic kinetic term and with the full quadratic one.
//! * [`wavefunctions`] constructs normalized radial profiles, checks them
//!   against their differential equations, and assembles the explicit
//!   ten-component relativistic solution.
//! * [`oracle`] is a self-contained finite-difference eigenvalue solver
//!   used as an independent cross-check of the closed forms.
//! * [`verify`] bundles all checks into named suites; [`cli`] exposes
//!   everything as a command-line tool.
//!
//! Units: hbar = c = 1 and the sphere radius is 1, so energies are
//! dimensionless and r in (0, pi) is the polar angle. Profiles are
//! normalized by `int_0^pi psi^2 sin r dr = 1` with a real, positive phase
//! near r = 0.

pub mod cli;
pub mod dkp;
mod error;
pub mod jets;
pub mod model;
pub mod operators;
pub mod oracle;
pub mod quadrature;
pub mod spectra;
pub mod verify;
pub mod wavefunctions;

pub use error::{Error, Result};

/// Pinned numerical tolerances used by the verification suites and tests.
///
/// These are deliberate constants, not knobs: each one states how well the
/// corresponding identity is expected to hold in double precision.
pub mod tol {
    /// Exact matrix identities (commutators, diagonalizations, inverses).
    pub const MATRIX_IDENTITY: f64 = 1e-12;
    /// Ladder-operator composition and shift identities under jets.
    pub const OPERATOR_IDENTITY: f64 = 1e-10;
    /// Normalized residual of a closed-form profile in its equation.
    pub const ODE_RESIDUAL: f64 = 1e-10;
    /// Residual of the ten-component first-order system.
    pub const FIRST_ORDER: f64 = 1e-8;
    /// Overlap of distinct same-sector profiles.
    pub const ORTHOGONALITY: f64 = 1e-8;
    /// Agreement between closed-form levels and the extrapolated
    /// finite-difference eigenvalues, on the energy scale.
    pub const ORACLE_AGREEMENT: f64 = 1e-6;
    /// Agreement between the bisection eigensolver and an independent
    /// characteristic-polynomial root finder.
    pub const EIGEN_CROSSCHECK: f64 = 1e-10;
    /// Acceptable observed convergence order of the second-order scheme.
    pub const CONVERGENCE_ORDER_BAND: (f64, f64) = (1.8, 2.2);
}
