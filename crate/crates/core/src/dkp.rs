//! The 10x10 first-order wave matrices of the massive spin-1 field in the
//! cyclic representation, and the algebra checks built on them.
//!
//! The ten components are grouped 1-3-3-3: a scalar block, then three
//! vector blocks (the upper wavefunction triple, the electric-type triple
//! and the magnetic-type triple). The spatial matrices are assembled from
//! the 1x3 row blocks `e_i` and the 3x3 spin-1 generators `tau_i`:
//!
//! ```text
//! beta^0 = [ 0    0     0    0 ]      beta^i = [  0        0      e_i   0    ]
//!          [ 0    0    iI    0 ]               [  0        0      0     tau_i]
//!          [ 0   -iI    0    0 ]               [ -e_i^+    0      0     0    ]
//!          [ 0    0     0    0 ]               [  0       -tau_i  0     0    ]
//! ```
//!
//! with `e_i^+` the conjugate transpose of `e_i`. The rotation generator
//! built from the first two spatial matrices must close on the spin matrix:
//! `beta^1 beta^2 - beta^2 beta^1 = -i S_3` with
//! `S_3 = diag(0, tau_3, tau_3, tau_3)`; [`verify_j12`] measures the
//! deviation from that identity entrywise.

use num_complex::Complex64;

use crate::error::{Error, Result};

const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Dense row-major complex matrix of arbitrary (small) shape.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    #[must_use]
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix { rows, cols, entries: vec![Complex64::ZERO; rows * cols] }
    }

    #[must_use]
    pub fn identity(n: usize) -> Self {
        let mut m = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::ONE;
        }
        m
    }

    /// Build from nested row arrays; rows must all have equal length.
    #[must_use]
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        ComplexMatrix {
            rows: nrows,
            cols: ncols,
            entries: rows.iter().flatten().copied().collect(),
        }
    }

    #[must_use]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[must_use]
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Conjugate transpose.
    #[must_use]
    pub fn adjoint(&self) -> Self {
        let mut out = ComplexMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn mul(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                rows_a: self.rows,
                cols_a: self.cols,
                rows_b: other.rows,
                cols_b: other.cols,
            });
        }
        let mut out = ComplexMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == Complex64::ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                rows_a: self.rows,
                cols_a: self.cols,
                rows_b: other.rows,
                cols_b: other.cols,
            });
        }
        let mut out = self.clone();
        for (x, y) in out.entries.iter_mut().zip(&other.entries) {
            *x -= y;
        }
        Ok(out)
    }

    #[must_use]
    pub fn scale(&self, by: Complex64) -> Self {
        let mut out = self.clone();
        for x in &mut out.entries {
            *x *= by;
        }
        out
    }

    /// Largest entry magnitude; zero for an empty matrix.
    #[must_use]
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Copy `block` into this matrix with its top-left corner at (r0, c0).
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &ComplexMatrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)];
            }
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = &Complex64> {
        self.entries.iter()
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[i * self.cols + j]
    }
}

/// Commutator [a, b] = a b - b a for square matrices of equal size.
pub fn commutator(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    a.mul(b)?.sub(&b.mul(a)?)
}

/// The full set of wave matrices together with their building blocks.
#[derive(Debug, Clone)]
pub struct DkpBasis {
    pub beta0: ComplexMatrix,
    pub beta1: ComplexMatrix,
    pub beta2: ComplexMatrix,
    pub beta3: ComplexMatrix,
    pub e1: ComplexMatrix,
    pub e2: ComplexMatrix,
    pub e3: ComplexMatrix,
    pub tau1: ComplexMatrix,
    pub tau2: ComplexMatrix,
    pub tau3: ComplexMatrix,
}

impl DkpBasis {
    pub fn betas(&self) -> [&ComplexMatrix; 4] {
        [&self.beta0, &self.beta1, &self.beta2, &self.beta3]
    }

    pub fn taus(&self) -> [&ComplexMatrix; 3] {
        [&self.tau1, &self.tau2, &self.tau3]
    }
}

/// Offsets of the 1-3-3-3 block rows/columns inside the 10x10 layout.
const BLOCK_OFFSETS: [usize; 4] = [0, 1, 4, 7];

fn spatial_beta(e: &ComplexMatrix, tau: &ComplexMatrix) -> ComplexMatrix {
    let mut b = ComplexMatrix::zeros(10, 10);
    b.set_block(BLOCK_OFFSETS[0], BLOCK_OFFSETS[2], e);
    b.set_block(BLOCK_OFFSETS[1], BLOCK_OFFSETS[3], tau);
    b.set_block(BLOCK_OFFSETS[2], BLOCK_OFFSETS[0], &e.adjoint().scale(-Complex64::ONE));
    b.set_block(BLOCK_OFFSETS[3], BLOCK_OFFSETS[1], &tau.scale(-Complex64::ONE));
    b
}

/// Construct the cyclic-representation basis.
#[must_use]
pub fn build_basis() -> DkpBasis {
    let k = FRAC_1_SQRT_2;
    let e1 = ComplexMatrix::from_rows(&[vec![c(0.0, -k), c(0.0, 0.0), c(0.0, k)]]);
    let e2 = ComplexMatrix::from_rows(&[vec![c(k, 0.0), c(0.0, 0.0), c(k, 0.0)]]);
    let e3 = ComplexMatrix::from_rows(&[vec![c(0.0, 0.0), c(0.0, 1.0), c(0.0, 0.0)]]);

    let tau1 = ComplexMatrix::from_rows(&[
        vec![c(0.0, 0.0), c(k, 0.0), c(0.0, 0.0)],
        vec![c(k, 0.0), c(0.0, 0.0), c(k, 0.0)],
        vec![c(0.0, 0.0), c(k, 0.0), c(0.0, 0.0)],
    ]);
    let tau2 = ComplexMatrix::from_rows(&[
        vec![c(0.0, 0.0), c(0.0, -k), c(0.0, 0.0)],
        vec![c(0.0, k), c(0.0, 0.0), c(0.0, -k)],
        vec![c(0.0, 0.0), c(0.0, k), c(0.0, 0.0)],
    ]);
    let tau3 = ComplexMatrix::from_rows(&[
        vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
        vec![c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
        vec![c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)],
    ]);

    let mut beta0 = ComplexMatrix::zeros(10, 10);
    beta0.set_block(BLOCK_OFFSETS[1], BLOCK_OFFSETS[2], &ComplexMatrix::identity(3).scale(c(0.0, 1.0)));
    beta0.set_block(BLOCK_OFFSETS[2], BLOCK_OFFSETS[1], &ComplexMatrix::identity(3).scale(c(0.0, -1.0)));

    let beta1 = spatial_beta(&e1, &tau1);
    let beta2 = spatial_beta(&e2, &tau2);
    let beta3 = spatial_beta(&e3, &tau3);

    DkpBasis { beta0, beta1, beta2, beta3, e1, e2, e3, tau1, tau2, tau3 }
}

/// The 10x10 spin projection matrix S_3 = diag(0, tau_3, tau_3, tau_3).
#[must_use]
pub fn s3_generator(basis: &DkpBasis) -> ComplexMatrix {
    let mut s3 = ComplexMatrix::zeros(10, 10);
    for off in &BLOCK_OFFSETS[1..] {
        s3.set_block(*off, *off, &basis.tau3);
    }
    s3
}

/// Entrywise deviation of beta^1 beta^2 - beta^2 beta^1 from -i S_3.
#[must_use]
pub fn verify_j12(basis: &DkpBasis) -> f64 {
    let j12 = commutator(&basis.beta1, &basis.beta2).expect("square 10x10 operands");
    let target = s3_generator(basis).scale(c(0.0, -1.0));
    j12.sub(&target).expect("matching shapes").max_abs()
}

/// Entries of every wave matrix belong to {0, +-1/sqrt2, +-i/sqrt2, +-i, +-1};
/// returns the largest distance from an entry to that set.
#[must_use]
pub fn entry_lattice_deviation(basis: &DkpBasis) -> f64 {
    let k = FRAC_1_SQRT_2;
    let allowed = [
        c(0.0, 0.0),
        c(k, 0.0),
        c(-k, 0.0),
        c(0.0, k),
        c(0.0, -k),
        c(0.0, 1.0),
        c(0.0, -1.0),
        c(1.0, 0.0),
        c(-1.0, 0.0),
    ];
    let mut worst = 0.0f64;
    for beta in basis.betas() {
        for z in beta.iter() {
            let nearest = allowed
                .iter()
                .map(|a| (z - a).norm())
                .fold(f64::INFINITY, f64::min);
            worst = worst.max(nearest);
        }
    }
    worst
}
