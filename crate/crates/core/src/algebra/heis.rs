use std::fmt;

use crate::algebra::quad::QuadInt;
use crate::error::Result;

/// Element of the Heisenberg group over `Z[√d]` in coordinates
/// `(x, y, z)` with product `(x,y,z)(x',y',z') = (x+x', y+y', z+z'+x·y')`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HeisElem {
    pub x: QuadInt,
    pub y: QuadInt,
    pub z: QuadInt,
}

impl HeisElem {
    pub fn new(x: QuadInt, y: QuadInt, z: QuadInt) -> Result<Self> {
        x.check_ring(&y)?;
        x.check_ring(&z)?;
        Ok(HeisElem { x, y, z })
    }

    pub fn identity(d: u32) -> Result<Self> {
        let zero = QuadInt::zero(d)?;
        Ok(HeisElem {
            x: zero.clone(),
            y: zero.clone(),
            z: zero,
        })
    }

    pub fn d(&self) -> u32 {
        self.x.d()
    }

    pub fn mul(&self, rhs: &HeisElem) -> Result<HeisElem> {
        self.x.check_ring(&rhs.x)?;
        Ok(HeisElem {
            x: &self.x + &rhs.x,
            y: &self.y + &rhs.y,
            z: &(&self.z + &rhs.z) + &(&self.x * &rhs.y),
        })
    }

    /// `(x,y,z)⁻¹ = (−x, −y, −z + x·y)`.
    pub fn inverse(&self) -> HeisElem {
        HeisElem {
            x: -&self.x,
            y: -&self.y,
            z: &(-&self.z) + &(&self.x * &self.y),
        }
    }

    /// Componentwise Galois conjugation; a group automorphism because the
    /// product is a polynomial with integer coefficients.
    pub fn conjugate(&self) -> HeisElem {
        HeisElem {
            x: self.x.conjugate(),
            y: self.y.conjugate(),
            z: self.z.conjugate(),
        }
    }

    /// `2z − xy`, the doubled central symmetric coordinate, exact.
    pub fn central_symmetric_doubled(&self) -> QuadInt {
        let two_z = &self.z + &self.z;
        &two_z - &(&self.x * &self.y)
    }

    pub fn embedding(&self) -> [f64; 3] {
        [
            self.x.embedding(),
            self.y.embedding(),
            self.z.embedding(),
        ]
    }

    pub fn conj_embedding(&self) -> [f64; 3] {
        [
            self.x.conj_embedding(),
            self.y.conj_embedding(),
            self.z.conj_embedding(),
        ]
    }
}

impl fmt::Display for HeisElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

/// Real Heisenberg product on float coordinates.
pub fn heis_mul_f64(g: [f64; 3], h: [f64; 3]) -> [f64; 3] {
    [g[0] + h[0], g[1] + h[1], g[2] + h[2] + g[0] * h[1]]
}

pub fn heis_inv_f64(g: [f64; 3]) -> [f64; 3] {
    [-g[0], -g[1], -g[2] + g[0] * g[1]]
}

/// Symmetric coordinates `(x, y, z − xy/2)`; inversion negates all three.
pub fn heis_symmetric_coords(g: [f64; 3]) -> [f64; 3] {
    [g[0], g[1], g[2] - g[0] * g[1] / 2.0]
}

/// Max-coordinate gauge in symmetric coordinates,
/// `max(|x|, |y|, |z − xy/2|)`; satisfies `‖g⁻¹‖ = ‖g‖`.
pub fn heis_norm_f64(g: [f64; 3]) -> f64 {
    let s = heis_symmetric_coords(g);
    s[0].abs().max(s[1].abs()).max(s[2].abs())
}
