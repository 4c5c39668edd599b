use crate::model::Branch;

/// Crate-wide error type. Each variant corresponds to one rejected input
/// class; numerical checks that merely exceed a tolerance report through
/// their result structs instead of erroring.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// sin(r) is below the singularity threshold, so the 1/sin(r) terms in
    /// the gauge potential and ladder operators are not representable.
    #[error("singular point: |sin r| = {sin_r:.3e} below threshold at r = {r}")]
    SingularPoint { r: f64, sin_r: f64 },

    /// Matrix operands have incompatible shapes.
    #[error("dimension mismatch: {rows_a}x{cols_a} against {rows_b}x{cols_b}")]
    DimensionMismatch {
        rows_a: usize,
        cols_a: usize,
        rows_b: usize,
        cols_b: usize,
    },

    /// The radicand of the quantization condition went negative while
    /// validating an externally supplied energy.
    #[error("negative radicand {value} while validating a supplied energy")]
    NegativeRadicand { value: f64 },

    /// The discriminant of the relativistic quadratic is negative; the
    /// would-be energies form a complex-conjugate pair.
    #[error("complex roots: discriminant {discriminant} is negative")]
    ComplexRoots { discriminant: f64 },

    /// The lower hypergeometric parameter is a non-positive integer hit by
    /// the series denominators before the series terminates.
    #[error("gamma pole: series denominator vanishes at gamma = {gamma} with degree {degree}")]
    GammaPole { gamma: f64, degree: u32 },

    /// The normalization integral failed to settle under refinement.
    #[error("non-normalizable profile: quadrature did not converge (last value {value:.6e})")]
    NonNormalizable { value: f64 },

    /// The eigenvector matrix of the magnetic coupling block is singular,
    /// which happens exactly at zero energy.
    #[error("singular transform: coupling eigenvector matrix is not invertible at epsilon = 0")]
    SingularTransform,

    /// A finite-difference sector whose solution does not vanish at an
    /// endpoint; Dirichlet conditions would pick the wrong solution.
    #[error(
        "invalid boundary: sector (branch {branch}, m = {m}, B = {b}) has endpoint \
         exponents C = {c}, A = {a}; both must be positive for Dirichlet conditions"
    )]
    InvalidBoundary {
        branch: Branch,
        m: i64,
        b: f64,
        c: f64,
        a: f64,
    },

    /// A config file line that cannot be used: bad syntax, an unknown key,
    /// an unparsable value, or a duplicate key.
    #[error("malformed config at line {line}: {message}")]
    MalformedConfig { line: usize, message: String },

    /// A parameter violates a documented precondition.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
