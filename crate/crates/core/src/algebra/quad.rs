//! Exact arithmetic in real quadratic rings `Z[√d]`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// `true` when `d >= 2` and no square of a prime divides `d`.
pub fn is_squarefree(d: u32) -> bool {
    if d < 2 {
        return false;
    }
    let mut n = d;
    let mut p = 2u32;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return false;
            }
        }
        p += 1;
    }
    true
}

/// An element `a + b√d` of `Z[√d]`.
///
/// The derived ordering is lexicographic on `(a, b, d)`; it is the canonical
/// order for exact coordinates and has nothing to do with the real value.
/// Use [`QuadInt::cmp_real`] to compare embeddings.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadInt {
    a: BigInt,
    b: BigInt,
    d: u32,
}

/// Conjugate, norm and both real embeddings of a ring element.
#[derive(Clone, Debug, PartialEq)]
pub struct GaloisData {
    pub conjugate: QuadInt,
    pub norm: BigInt,
    pub embedding: f64,
    pub conj_embedding: f64,
}

impl QuadInt {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, d: u32) -> Result<Self> {
        if !is_squarefree(d) {
            return Err(Error::InvalidInput(format!(
                "ring parameter d = {d} must be squarefree and >= 2"
            )));
        }
        Ok(QuadInt {
            a: a.into(),
            b: b.into(),
            d,
        })
    }

    /// Caller guarantees `d` is squarefree (it was taken from an existing element
    /// or a validated scheme).
    pub(crate) fn from_parts(a: BigInt, b: BigInt, d: u32) -> Self {
        debug_assert!(is_squarefree(d));
        QuadInt { a, b, d }
    }

    pub fn integer(n: impl Into<BigInt>, d: u32) -> Result<Self> {
        Self::new(n, 0, d)
    }

    pub fn zero(d: u32) -> Result<Self> {
        Self::new(0, 0, d)
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn conjugate(&self) -> QuadInt {
        QuadInt {
            a: self.a.clone(),
            b: -&self.b,
            d: self.d,
        }
    }

    /// `a² − d·b²`, exact.
    pub fn norm(&self) -> BigInt {
        &self.a * &self.a - BigInt::from(self.d) * &self.b * &self.b
    }

    /// `a + b√d` as a float. When the two terms nearly cancel the value is
    /// recovered as `norm / (a − b√d)` to keep relative precision.
    pub fn embedding(&self) -> f64 {
        embed(&self.a, &self.b, self.d, &self.norm())
    }

    /// `a − b√d` as a float.
    pub fn conj_embedding(&self) -> f64 {
        embed(&self.a, &(-&self.b), self.d, &self.norm())
    }

    pub fn galois_data(&self) -> GaloisData {
        let norm = self.norm();
        GaloisData {
            conjugate: self.conjugate(),
            embedding: embed(&self.a, &self.b, self.d, &norm),
            conj_embedding: embed(&self.a, &(-&self.b), self.d, &norm),
            norm,
        }
    }

    /// Exact sign of the real number `a + b√d`.
    pub fn signum(&self) -> Ordering {
        let sa = self.a.sign_cmp();
        let sb = self.b.sign_cmp();
        match (sa, sb) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (x, y) if x == y => x,
            _ => {
                // opposite signs: the larger square wins; equality is impossible
                // because d is not a perfect square
                let a2 = &self.a * &self.a;
                let db2 = BigInt::from(self.d) * &self.b * &self.b;
                if a2 > db2 {
                    sa
                } else {
                    sb
                }
            }
        }
    }

    /// Exact comparison of the real embeddings.
    pub fn cmp_real(&self, other: &QuadInt) -> Ordering {
        (self - other).signum()
    }

    /// Absolute value with respect to the real embedding.
    pub fn abs_real(&self) -> QuadInt {
        if self.signum() == Ordering::Less {
            -self
        } else {
            self.clone()
        }
    }

    pub fn try_add(&self, rhs: &QuadInt) -> Result<QuadInt> {
        self.check_ring(rhs)?;
        Ok(self + rhs)
    }

    pub fn try_sub(&self, rhs: &QuadInt) -> Result<QuadInt> {
        self.check_ring(rhs)?;
        Ok(self - rhs)
    }

    pub fn try_mul(&self, rhs: &QuadInt) -> Result<QuadInt> {
        self.check_ring(rhs)?;
        Ok(self * rhs)
    }

    pub fn check_ring(&self, rhs: &QuadInt) -> Result<()> {
        if self.d == rhs.d {
            Ok(())
        } else {
            Err(Error::RingMismatch {
                left: self.d,
                right: rhs.d,
            })
        }
    }

    /// Parse the `a:b` form produced by `Display`'s alternate mode.
    pub fn parse_pair(a: &str, b: &str, d: u32) -> Result<QuadInt> {
        let a: BigInt = a
            .trim()
            .parse()
            .map_err(|e| Error::InvalidInput(format!("bad integer {a:?}: {e}")))?;
        let b: BigInt = b
            .trim()
            .parse()
            .map_err(|e| Error::InvalidInput(format!("bad integer {b:?}: {e}")))?;
        QuadInt::new(a, b, d)
    }
}

trait SignCmp {
    fn sign_cmp(&self) -> Ordering;
}

impl SignCmp for BigInt {
    fn sign_cmp(&self) -> Ordering {
        if self.is_zero() {
            Ordering::Equal
        } else if self.is_positive() {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }
}

fn embed(a: &BigInt, b: &BigInt, d: u32, norm: &BigInt) -> f64 {
    let sqrt_d = f64::from(d).sqrt();
    let af = a.to_f64().unwrap_or(f64::NAN);
    let bf = b.to_f64().unwrap_or(f64::NAN);
    if a.is_zero() || b.is_zero() || a.is_positive() == b.is_positive() {
        af + bf * sqrt_d
    } else {
        // a and b√d cancel; (a + b√d)(a − b√d) = norm
        norm.to_f64().unwrap_or(f64::NAN) / (af - bf * sqrt_d)
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "{}√{}", self.b, self.d)
        } else if self.b.is_negative() {
            write!(f, "{}-{}√{}", self.a, -&self.b, self.d)
        } else {
            write!(f, "{}+{}√{}", self.a, self.b, self.d)
        }
    }
}

impl Add for &QuadInt {
    type Output = QuadInt;

    fn add(self, rhs: &QuadInt) -> QuadInt {
        assert_eq!(self.d, rhs.d, "ring mismatch");
        QuadInt {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
            d: self.d,
        }
    }
}

impl Sub for &QuadInt {
    type Output = QuadInt;

    fn sub(self, rhs: &QuadInt) -> QuadInt {
        assert_eq!(self.d, rhs.d, "ring mismatch");
        QuadInt {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
            d: self.d,
        }
    }
}

impl Mul for &QuadInt {
    type Output = QuadInt;

    fn mul(self, rhs: &QuadInt) -> QuadInt {
        assert_eq!(self.d, rhs.d, "ring mismatch");
        let d = BigInt::from(self.d);
        QuadInt {
            a: &self.a * &rhs.a + d * &self.b * &rhs.b,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
            d: self.d,
        }
    }
}

impl Neg for &QuadInt {
    type Output = QuadInt;

    fn neg(self) -> QuadInt {
        QuadInt {
            a: -&self.a,
            b: -&self.b,
            d: self.d,
        }
    }
}

impl Neg for QuadInt {
    type Output = QuadInt;

    fn neg(self) -> QuadInt {
        -&self
    }
}

impl QuadInt {
    pub fn one(d: u32) -> Result<Self> {
        Self::new(BigInt::one(), 0, d)
    }
}
