use std::fmt;

use crate::algebra::{Affine, Bs, HeisElem, QuadInt, Sl2};
use crate::error::{Error, Result};

/// An element of one of the supported ambient or discrete groups.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElem {
    /// Vector in `R^n` with exact coordinates in `Z[√d]`; the group law is addition.
    Euclid(Vec<QuadInt>),
    Heis(HeisElem),
    Sl2(Sl2),
    Aff(Affine),
    Bs(Bs),
}

impl GroupElem {
    pub fn scalar(x: QuadInt) -> Self {
        GroupElem::Euclid(vec![x])
    }

    pub fn kind(&self) -> &'static str {
        match self {
            GroupElem::Euclid(_) => "euclid",
            GroupElem::Heis(_) => "heis",
            GroupElem::Sl2(_) => "sl2",
            GroupElem::Aff(_) => "aff",
            GroupElem::Bs(_) => "bs",
        }
    }

    /// The identity of the same group (same dimension / ring).
    pub fn identity_like(&self) -> Result<GroupElem> {
        Ok(match self {
            GroupElem::Euclid(v) => GroupElem::Euclid(
                v.iter()
                    .map(|x| QuadInt::zero(x.d()))
                    .collect::<Result<_>>()?,
            ),
            GroupElem::Heis(h) => GroupElem::Heis(HeisElem::identity(h.d())?),
            GroupElem::Sl2(_) => GroupElem::Sl2(Sl2::identity()),
            GroupElem::Aff(_) => GroupElem::Aff(Affine::identity()),
            GroupElem::Bs(_) => GroupElem::Bs(Bs::identity()),
        })
    }

    pub fn is_identity(&self) -> bool {
        match self {
            GroupElem::Euclid(v) => v.iter().all(QuadInt::is_zero),
            GroupElem::Heis(h) => h.x.is_zero() && h.y.is_zero() && h.z.is_zero(),
            GroupElem::Sl2(m) => *m == Sl2::identity(),
            GroupElem::Aff(g) => g.a == 0.0 && g.b == 0.0,
            GroupElem::Bs(g) => g.is_identity(),
        }
    }

    pub fn mul(&self, rhs: &GroupElem) -> Result<GroupElem> {
        match (self, rhs) {
            (GroupElem::Euclid(u), GroupElem::Euclid(v)) => {
                if u.len() != v.len() {
                    return Err(Error::VariantMismatch(format!(
                        "dimension {} vs {}",
                        u.len(),
                        v.len()
                    )));
                }
                Ok(GroupElem::Euclid(
                    u.iter()
                        .zip(v)
                        .map(|(x, y)| x.try_add(y))
                        .collect::<Result<_>>()?,
                ))
            }
            (GroupElem::Heis(g), GroupElem::Heis(h)) => Ok(GroupElem::Heis(g.mul(h)?)),
            (GroupElem::Sl2(g), GroupElem::Sl2(h)) => Ok(GroupElem::Sl2(g.mul(h))),
            (GroupElem::Aff(g), GroupElem::Aff(h)) => Ok(GroupElem::Aff(g.mul(h)?)),
            (GroupElem::Bs(g), GroupElem::Bs(h)) => Ok(GroupElem::Bs(g.mul(h)?)),
            (g, h) => Err(Error::VariantMismatch(format!(
                "cannot multiply {} by {}",
                g.kind(),
                h.kind()
            ))),
        }
    }

    pub fn inverse(&self) -> Result<GroupElem> {
        Ok(match self {
            GroupElem::Euclid(v) => GroupElem::Euclid(v.iter().map(|x| -x).collect()),
            GroupElem::Heis(h) => GroupElem::Heis(h.inverse()),
            GroupElem::Sl2(m) => GroupElem::Sl2(m.inverse()),
            GroupElem::Aff(g) => GroupElem::Aff(g.inverse()?),
            GroupElem::Bs(g) => GroupElem::Bs(g.inverse()),
        })
    }

    /// `self⁻¹ · rhs`.
    pub fn left_div(&self, rhs: &GroupElem) -> Result<GroupElem> {
        self.inverse()?.mul(rhs)
    }

    /// Physical float coordinates for the point-set variants.
    pub fn physical(&self) -> Result<Vec<f64>> {
        match self {
            GroupElem::Euclid(v) => Ok(v.iter().map(QuadInt::embedding).collect()),
            GroupElem::Heis(h) => Ok(h.embedding().to_vec()),
            g => Err(Error::VariantMismatch(format!(
                "{} has no physical embedding",
                g.kind()
            ))),
        }
    }

    /// Internal (Galois-conjugate) float coordinates for the point-set variants.
    pub fn internal(&self) -> Result<Vec<f64>> {
        match self {
            GroupElem::Euclid(v) => Ok(v.iter().map(QuadInt::conj_embedding).collect()),
            GroupElem::Heis(h) => Ok(h.conj_embedding().to_vec()),
            g => Err(Error::VariantMismatch(format!(
                "{} has no internal embedding",
                g.kind()
            ))),
        }
    }

    /// Left-invariant gauge `d(e, g)`: Euclidean length for vectors,
    /// `max(|x|, |y|, |z − xy/2|)` for Heisenberg elements.
    pub fn norm(&self) -> Result<f64> {
        match self {
            GroupElem::Euclid(v) => Ok(v
                .iter()
                .map(|x| {
                    let e = x.embedding();
                    e * e
                })
                .sum::<f64>()
                .sqrt()),
            GroupElem::Heis(h) => Ok(h
                .x
                .embedding()
                .abs()
                .max(h.y.embedding().abs())
                .max(h.central_symmetric_doubled().embedding().abs() / 2.0)),
            g => Err(Error::VariantMismatch(format!("no metric on {}", g.kind()))),
        }
    }

    /// `d(g, h) = ‖g⁻¹h‖`, evaluated on the exact quotient.
    pub fn dist(&self, other: &GroupElem) -> Result<f64> {
        self.left_div(other)?.norm()
    }

    pub fn ring(&self) -> Option<u32> {
        match self {
            GroupElem::Euclid(v) => v.first().map(QuadInt::d),
            GroupElem::Heis(h) => Some(h.d()),
            _ => None,
        }
    }
}

impl fmt::Display for GroupElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElem::Euclid(v) if v.len() == 1 => write!(f, "{}", v[0]),
            GroupElem::Euclid(v) => {
                write!(f, "(")?;
                for (i, x) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
            GroupElem::Heis(h) => write!(f, "{h}"),
            GroupElem::Sl2(m) => write!(f, "[[{}, {}], [{}, {}]]", m.a, m.b, m.c, m.d),
            GroupElem::Aff(g) => write!(f, "({}, {})", g.b, g.a),
            GroupElem::Bs(g) => write!(f, "{g}"),
        }
    }
}
