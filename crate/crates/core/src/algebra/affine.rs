use std::cmp::Ordering;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};

/// Element `(b, a)` of the `ax+b` group `R ⋊ R` with `a` acting by `b ↦ e^a b`.
#[derive(Clone, Copy, Debug)]
pub struct Affine {
    pub b: f64,
    pub a: f64,
}

impl Affine {
    pub fn new(b: f64, a: f64) -> Result<Self> {
        if !b.is_finite() || !a.is_finite() {
            return Err(Error::InvalidInput(format!("non-finite affine pair ({b}, {a})")));
        }
        Ok(Affine { b, a })
    }

    pub fn identity() -> Self {
        Affine { b: 0.0, a: 0.0 }
    }

    /// `(b,a)(b',a') = (b + e^a b', a + a')`.
    pub fn mul(&self, rhs: &Affine) -> Result<Affine> {
        let scale = self.a.exp();
        let b = self.b + scale * rhs.b;
        let a = self.a + rhs.a;
        if !scale.is_finite() || !b.is_finite() || !a.is_finite() {
            return Err(Error::Overflow(format!(
                "affine product overflow: e^{} too large",
                self.a
            )));
        }
        Ok(Affine { b, a })
    }

    pub fn inverse(&self) -> Result<Affine> {
        let b = -(-self.a).exp() * self.b;
        if !b.is_finite() {
            return Err(Error::Overflow(format!("affine inverse overflow at a = {}", self.a)));
        }
        Ok(Affine { b, a: -self.a })
    }

    /// Modular function `Δ(b, a) = e^{−a}`.
    pub fn modular(&self) -> f64 {
        (-self.a).exp()
    }

    pub fn approx_eq(&self, other: &Affine, tol: f64) -> bool {
        (self.b - other.b).abs() <= tol && (self.a - other.a).abs() <= tol
    }
}

impl PartialEq for Affine {
    fn eq(&self, other: &Self) -> bool {
        self.b.to_bits() == other.b.to_bits() && self.a.to_bits() == other.a.to_bits()
    }
}

impl Eq for Affine {}

impl Hash for Affine {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.b.to_bits().hash(state);
        self.a.to_bits().hash(state);
    }
}

impl PartialOrd for Affine {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Affine {
    fn cmp(&self, other: &Self) -> Ordering {
        self.b.total_cmp(&other.b).then(self.a.total_cmp(&other.a))
    }
}
