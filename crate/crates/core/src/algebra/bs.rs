//! The Baumslag–Solitar group `BS(1,2) = ⟨a, b | b a b⁻¹ = a²⟩`.
//!
//! Elements are kept in the reduced normal form `b^{−p} a^m b^q` with
//! `p, q ≥ 0` and `m` odd whenever both `p` and `q` are positive. Under the
//! isomorphism with `Z[1/2] ⋊ Z` this is the pair `(m / 2^p, q − p)`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exponents beyond this are reported as overflow.
pub const BS_MAX_EXPONENT: u32 = 1 << 20;
/// Bit length of `m` beyond which products are reported as overflow.
pub const BS_MAX_BITS: u64 = 1 << 22;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bs {
    p: u32,
    m: BigInt,
    q: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BsLetter {
    A,
    AInv,
    B,
    BInv,
}

impl BsLetter {
    pub const ALL: [BsLetter; 4] = [BsLetter::A, BsLetter::AInv, BsLetter::B, BsLetter::BInv];

    pub fn elem(self) -> Bs {
        match self {
            BsLetter::A => Bs::a_pow(1),
            BsLetter::AInv => Bs::a_pow(-1),
            BsLetter::B => Bs::b_pow(1),
            BsLetter::BInv => Bs::b_pow(-1),
        }
    }

    pub fn inverse(self) -> BsLetter {
        match self {
            BsLetter::A => BsLetter::AInv,
            BsLetter::AInv => BsLetter::A,
            BsLetter::B => BsLetter::BInv,
            BsLetter::BInv => BsLetter::B,
        }
    }
}

impl Bs {
    /// Builds `b^{−p} a^m b^q`, rejecting non-reduced triples.
    pub fn new(p: u32, m: impl Into<BigInt>, q: u32) -> Result<Self> {
        let m = m.into();
        if p > 0 && q > 0 && m.is_even() {
            return Err(Error::InvalidInput(format!(
                "b^-{p} a^{m} b^{q} is not reduced (m must be odd when p, q > 0)"
            )));
        }
        Ok(Bs { p, m, q })
    }

    pub fn identity() -> Self {
        Bs {
            p: 0,
            m: BigInt::zero(),
            q: 0,
        }
    }

    pub fn a_pow(m: impl Into<BigInt>) -> Self {
        Bs {
            p: 0,
            m: m.into(),
            q: 0,
        }
    }

    pub fn b_pow(k: i64) -> Self {
        let n = k.unsigned_abs() as u32;
        if k >= 0 {
            Bs {
                p: 0,
                m: BigInt::zero(),
                q: n,
            }
        } else {
            Bs {
                p: n,
                m: BigInt::zero(),
                q: 0,
            }
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> &BigInt {
        &self.m
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn is_identity(&self) -> bool {
        self.p == 0 && self.q == 0 && self.m.is_zero()
    }

    /// Minimal number of factors from `⟨a⟩ ∪ {b, b⁻¹}` needed to write the
    /// element: `p + q + [m ≠ 0]`.
    pub fn syllable_count(&self) -> u32 {
        self.p + self.q + u32::from(!self.m.is_zero())
    }

    /// Normalizes `N / 2^E` paired with `b`-exponent sum `s`.
    fn normalize(mut num: BigInt, mut den_exp: u64, s: i64) -> Result<Bs> {
        if num.is_zero() {
            den_exp = 0;
        } else {
            let tz = num.trailing_zeros().unwrap_or(0).min(den_exp);
            num >>= tz;
            den_exp -= tz;
        }
        let p = den_exp.max(if s < 0 { s.unsigned_abs() } else { 0 });
        let q = i128::from(s) + i128::from(p);
        if p > u64::from(BS_MAX_EXPONENT) || q > i128::from(BS_MAX_EXPONENT) {
            return Err(Error::Overflow(format!(
                "BS(1,2) b-exponent beyond {BS_MAX_EXPONENT}"
            )));
        }
        let m = num << (p - den_exp);
        if m.bits() > BS_MAX_BITS {
            return Err(Error::Overflow(format!(
                "BS(1,2) a-exponent exceeds {BS_MAX_BITS} bits"
            )));
        }
        Ok(Bs {
            p: p as u32,
            m,
            q: q as u32,
        })
    }

    pub fn mul(&self, rhs: &Bs) -> Result<Bs> {
        // (m1/2^p1, s1)(m2/2^p2, s2) = ((m1·2^p2 + m2·2^q1) / 2^(p1+p2), s1 + s2)
        let num = (&self.m << rhs.p) + (&rhs.m << self.q);
        let den_exp = u64::from(self.p) + u64::from(rhs.p);
        let s = i64::from(self.q) - i64::from(self.p) + i64::from(rhs.q) - i64::from(rhs.p);
        Bs::normalize(num, den_exp, s)
    }

    pub fn inverse(&self) -> Bs {
        Bs {
            p: self.q,
            m: -&self.m,
            q: self.p,
        }
    }

    /// Evaluates a word over `{a, a⁻¹, b, b⁻¹}`.
    pub fn from_word(word: &[BsLetter]) -> Result<Bs> {
        word.iter()
            .try_fold(Bs::identity(), |acc, l| acc.mul(&l.elem()))
    }

    /// The explicit word `b^n a b^{−n}` for `a^{2^n}`.
    pub fn conjugation_word(n: usize) -> Vec<BsLetter> {
        let mut w = vec![BsLetter::B; n];
        w.push(BsLetter::A);
        w.extend(std::iter::repeat_n(BsLetter::BInv, n));
        w
    }

    pub fn a_two_pow(n: u32) -> Bs {
        Bs::a_pow(BigInt::one() << n)
    }
}

impl fmt::Display for Bs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "b^-{} a^{} b^{}", self.p, self.m, self.q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use BsLetter::*;

    #[test]
    fn defining_relation() {
        let a = Bs::a_pow(1);
        let b = Bs::b_pow(1);
        let bab = b.mul(&a).unwrap().mul(&b.inverse()).unwrap();
        assert_eq!(bab, Bs::a_pow(2));

        let c = b.inverse().mul(&a).unwrap().mul(&b).unwrap();
        assert_eq!(c, Bs::new(1, 1, 1).unwrap());
        assert_eq!(c.mul(&c).unwrap(), a);
    }

    #[test]
    fn identity_and_inverse() {
        let g = Bs::from_word(&[B, A, A, BInv, BInv, A, B, B, B]).unwrap();
        assert_eq!(Bs::identity().mul(&g).unwrap(), g);
        assert_eq!(g.mul(&g.inverse()).unwrap(), Bs::identity());
        assert_eq!(g.inverse().mul(&g).unwrap(), Bs::identity());
    }

    #[test]
    fn reduced_form_enforced() {
        assert!(Bs::new(1, 2, 1).is_err());
        assert!(Bs::new(1, 3, 1).is_ok());
        assert!(Bs::new(0, 2, 1).is_ok());
    }

    #[test]
    fn conjugation_word_gives_power_of_two() {
        for n in 0..10 {
            let w = Bs::conjugation_word(n);
            assert_eq!(w.len(), 2 * n + 1);
            assert_eq!(Bs::from_word(&w).unwrap(), Bs::a_two_pow(n as u32));
        }
    }

    #[test]
    fn syllables() {
        assert_eq!(Bs::identity().syllable_count(), 0);
        assert_eq!(Bs::a_pow(17).syllable_count(), 1);
        assert_eq!(Bs::b_pow(2).syllable_count(), 2);
        // b a^j = a^{2j} b
        let g = Bs::b_pow(1).mul(&Bs::a_pow(3)).unwrap();
        assert_eq!(g, Bs::new(0, 6, 1).unwrap());
        assert_eq!(g.syllable_count(), 2);
    }
}
