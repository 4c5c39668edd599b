//! Truncated Taylor arithmetic (order-2 jets) for exact pointwise
//! differentiation of closed-form radial functions.
//!
//! A [`Jet2`] carries a value together with its first and second derivative
//! with respect to the underlying variable, and every arithmetic operation
//! propagates all three components exactly. Operator identities in this
//! crate are checked through jets rather than finite differences, so the
//! only error in a derivative is roundoff.

use std::ops::{Add, Div, Mul, Neg, Sub};

/// Value, first and second derivative of a scalar function at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet2 {
    pub f: f64,
    pub df: f64,
    pub ddf: f64,
}

impl Jet2 {
    /// Jet of the identity function x at the point x.
    #[must_use]
    pub fn variable(x: f64) -> Self {
        Jet2 { f: x, df: 1.0, ddf: 0.0 }
    }

    /// Jet of a constant.
    #[must_use]
    pub fn constant(c: f64) -> Self {
        Jet2 { f: c, df: 0.0, ddf: 0.0 }
    }

    #[must_use]
    pub fn sin(self) -> Self {
        let (s, c) = self.f.sin_cos();
        Jet2 {
            f: s,
            df: c * self.df,
            ddf: c * self.ddf - s * self.df * self.df,
        }
    }

    #[must_use]
    pub fn cos(self) -> Self {
        let (s, c) = self.f.sin_cos();
        Jet2 {
            f: c,
            df: -s * self.df,
            ddf: -s * self.ddf - c * self.df * self.df,
        }
    }

    /// Real power f^p via the chain rule. Requires f > 0 when p is not a
    /// non-negative integer.
    #[must_use]
    pub fn powf(self, p: f64) -> Self {
        if p == 0.0 {
            return Jet2::constant(1.0);
        }
        let v = self.f.powf(p);
        let v1 = p * self.f.powf(p - 1.0);
        let v2 = p * (p - 1.0) * self.f.powf(p - 2.0);
        Jet2 {
            f: v,
            df: v1 * self.df,
            ddf: v2 * self.df * self.df + v1 * self.ddf,
        }
    }

    #[must_use]
    pub fn powi(self, k: i32) -> Self {
        match k {
            0 => Jet2::constant(1.0),
            1 => self,
            _ => {
                let mut acc = self;
                for _ in 1..k {
                    acc = acc * self;
                }
                acc
            }
        }
    }

    #[must_use]
    pub fn recip(self) -> Self {
        let inv = 1.0 / self.f;
        let inv2 = inv * inv;
        Jet2 {
            f: inv,
            df: -self.df * inv2,
            ddf: (2.0 * self.df * self.df * inv - self.ddf) * inv2,
        }
    }
}

impl Add for Jet2 {
    type Output = Jet2;
    fn add(self, o: Jet2) -> Jet2 {
        Jet2 { f: self.f + o.f, df: self.df + o.df, ddf: self.ddf + o.ddf }
    }
}

impl Sub for Jet2 {
    type Output = Jet2;
    fn sub(self, o: Jet2) -> Jet2 {
        Jet2 { f: self.f - o.f, df: self.df - o.df, ddf: self.ddf - o.ddf }
    }
}

impl Mul for Jet2 {
    type Output = Jet2;
    fn mul(self, o: Jet2) -> Jet2 {
        Jet2 {
            f: self.f * o.f,
            df: self.df * o.f + self.f * o.df,
            ddf: self.ddf * o.f + 2.0 * self.df * o.df + self.f * o.ddf,
        }
    }
}

impl Div for Jet2 {
    type Output = Jet2;
    fn div(self, o: Jet2) -> Jet2 {
        self * o.recip()
    }
}

impl Neg for Jet2 {
    type Output = Jet2;
    fn neg(self) -> Jet2 {
        Jet2 { f: -self.f, df: -self.df, ddf: -self.ddf }
    }
}

impl Add<f64> for Jet2 {
    type Output = Jet2;
    fn add(self, c: f64) -> Jet2 {
        Jet2 { f: self.f + c, ..self }
    }
}

impl Sub<f64> for Jet2 {
    type Output = Jet2;
    fn sub(self, c: f64) -> Jet2 {
        Jet2 { f: self.f - c, ..self }
    }
}

impl Mul<f64> for Jet2 {
    type Output = Jet2;
    fn mul(self, c: f64) -> Jet2 {
        Jet2 { f: self.f * c, df: self.df * c, ddf: self.ddf * c }
    }
}

impl Mul<Jet2> for f64 {
    type Output = Jet2;
    fn mul(self, j: Jet2) -> Jet2 {
        j * self
    }
}

impl Add<Jet2> for f64 {
    type Output = Jet2;
    fn add(self, j: Jet2) -> Jet2 {
        j + self
    }
}

impl Sub<Jet2> for f64 {
    type Output = Jet2;
    fn sub(self, j: Jet2) -> Jet2 {
        -j + self
    }
}

impl Div<f64> for Jet2 {
    type Output = Jet2;
    fn div(self, c: f64) -> Jet2 {
        Jet2 { f: self.f / c, df: self.df / c, ddf: self.ddf / c }
    }
}

/// A radial function sampled at one point with exact derivatives: the input
/// record consumed by the ladder operators.
///
/// Applying one first-order operator consumes one derivative order, so an
/// operator output carries a valid value and first derivative but its `ddf`
/// field is NaN.
#[derive(Debug, Clone, Copy)]
pub struct DualSample {
    pub r: f64,
    pub f: f64,
    pub df: f64,
    pub ddf: f64,
}

impl DualSample {
    /// Sample a closed-form function (expressed in jet arithmetic) at r.
    #[must_use]
    pub fn from_fn(r: f64, g: impl Fn(Jet2) -> Jet2) -> Self {
        let j = g(Jet2::variable(r));
        DualSample { r, f: j.f, df: j.df, ddf: j.ddf }
    }

    #[must_use]
    pub fn constant(r: f64, c: f64) -> Self {
        DualSample { r, f: c, df: 0.0, ddf: 0.0 }
    }
}
