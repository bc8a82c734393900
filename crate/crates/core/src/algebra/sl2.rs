use std::cmp::Ordering;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::FLOAT_TOL;

/// A real 2×2 matrix `[[a, b], [c, d]]` with determinant 1.
#[derive(Clone, Copy, Debug)]
pub struct Sl2 {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Sl2 {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let det = a * d - b * c;
        if !(det - 1.0).abs().le(&FLOAT_TOL) {
            return Err(Error::InvalidInput(format!(
                "SL2 determinant {det} is not 1"
            )));
        }
        Ok(Sl2 { a, b, c, d })
    }

    pub fn identity() -> Self {
        Sl2 {
            a: 1.0,
            b: 0.0,
            c: 0.0,
            d: 1.0,
        }
    }

    /// `a(t) = diag(e^{t/2}, e^{−t/2})`.
    pub fn diagonal(t: f64) -> Self {
        Sl2 {
            a: (t / 2.0).exp(),
            b: 0.0,
            c: 0.0,
            d: (-t / 2.0).exp(),
        }
    }

    pub fn rotation(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Sl2 {
            a: c,
            b: -s,
            c: s,
            d: c,
        }
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn mul(&self, rhs: &Sl2) -> Sl2 {
        Sl2 {
            a: self.a * rhs.a + self.b * rhs.c,
            b: self.a * rhs.b + self.b * rhs.d,
            c: self.c * rhs.a + self.d * rhs.c,
            d: self.c * rhs.b + self.d * rhs.d,
        }
    }

    pub fn inverse(&self) -> Sl2 {
        Sl2 {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    /// Cartan data `(s, t)` with `s = cosh t = (a²+b²+c²+d²)/2`.
    pub fn cartan(&self) -> Result<(f64, f64)> {
        let det = self.det();
        if (det - 1.0).abs() > FLOAT_TOL {
            return Err(Error::InvalidInput(format!(
                "SL2 determinant {det} is not 1"
            )));
        }
        let s = (self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d) / 2.0;
        if s < 1.0 - FLOAT_TOL {
            return Err(Error::NotUnimodular { s });
        }
        let s = s.max(1.0);
        Ok((s, s.acosh()))
    }

    pub fn approx_eq(&self, other: &Sl2, tol: f64) -> bool {
        (self.a - other.a).abs() <= tol
            && (self.b - other.b).abs() <= tol
            && (self.c - other.c).abs() <= tol
            && (self.d - other.d).abs() <= tol
    }

    fn key(&self) -> [u64; 4] {
        [self.a, self.b, self.c, self.d].map(|x| unsigned_zero(x).to_bits())
    }
}

fn unsigned_zero(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x
    }
}

// Bitwise identity up to the sign of zero; tolerant comparisons go through `approx_eq`.
impl PartialEq for Sl2 {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for Sl2 {}

impl Hash for Sl2 {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key().hash(state);
    }
}

impl PartialOrd for Sl2 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Sl2 {
    fn cmp(&self, other: &Self) -> Ordering {
        let (x, y) = (self.key().map(f64::from_bits), other.key().map(f64::from_bits));
        x.iter()
            .zip(&y)
            .fold(Ordering::Equal, |o, (a, b)| o.then(a.total_cmp(b)))
    }
}
