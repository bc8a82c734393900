//! Exact comparisons between ring elements and float bounds.
//!
//! Every finite `f64` is a dyadic rational, so a closed window `[lo, hi]`
//! given in floats can be tested against `a ± b√d` without rounding.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::algebra::QuadInt;

/// `num · 2^exp`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dyadic {
    pub num: BigInt,
    pub exp: i64,
}

impl Dyadic {
    pub fn from_f64(x: f64) -> Option<Dyadic> {
        if !x.is_finite() {
            return None;
        }
        if x == 0.0 {
            return Some(Dyadic {
                num: BigInt::zero(),
                exp: 0,
            });
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 0 { 1i64 } else { -1 };
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (mant, exp) = if raw_exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), raw_exp - 1075)
        };
        Some(Dyadic {
            num: BigInt::from(sign) * BigInt::from(mant),
            exp,
        })
    }

    pub fn square(&self) -> Dyadic {
        Dyadic {
            num: &self.num * &self.num,
            exp: 2 * self.exp,
        }
    }
}

/// Exact comparison of the real embedding of `x` with `y`.
pub fn cmp_quad_dyadic(x: &QuadInt, y: &Dyadic) -> Ordering {
    let d = x.d();
    let diff = if y.exp >= 0 {
        let yint = &y.num << (y.exp as u64);
        QuadInt::from_parts(x.a() - yint, x.b().clone(), d)
    } else {
        let s = (-y.exp) as u64;
        QuadInt::from_parts((x.a() << s) - &y.num, x.b() << s, d)
    };
    diff.signum()
}

pub fn cmp_quad_f64(x: &QuadInt, y: f64) -> Ordering {
    match Dyadic::from_f64(y) {
        Some(dy) => cmp_quad_dyadic(x, &dy),
        None if y > 0.0 => Ordering::Less,
        None => Ordering::Greater,
    }
}

/// `lo <= x <= hi` for the real embedding, exactly.
pub fn in_closed(x: &QuadInt, lo: f64, hi: f64) -> bool {
    cmp_quad_f64(x, lo) != Ordering::Less && cmp_quad_f64(x, hi) != Ordering::Greater
}

/// `lo <= x* <= hi` for the conjugate embedding, exactly.
pub fn conj_in_closed(x: &QuadInt, lo: f64, hi: f64) -> bool {
    in_closed(&x.conjugate(), lo, hi)
}

/// `true` when `x*` equals `lo` or `hi` exactly.
pub fn conj_on_boundary(x: &QuadInt, lo: f64, hi: f64) -> bool {
    let c = x.conjugate();
    cmp_quad_f64(&c, lo) == Ordering::Equal || cmp_quad_f64(&c, hi) == Ordering::Equal
}
