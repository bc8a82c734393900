use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::algebra::GroupElem;
use crate::cutproject::int_elem;
use crate::error::{Error, Result};

/// Maps from a subset of `Z[√d]` (or `Z`) used in Freiman checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "modulus", rename_all = "kebab-case")]
pub enum FreimanMap {
    Identity,
    /// `a + b√d ↦ a`, an additive homomorphism to `Z`.
    RationalPart,
    /// `x ↦ x mod n ∈ {0, …, n−1}`, added in `Z`; not a homomorphism.
    Residue(u32),
    /// `x ↦ x mod n` in `Z/n`.
    ResidueClass(u32),
}

impl FreimanMap {
    fn apply(self, g: &GroupElem) -> Result<GroupElem> {
        match self {
            FreimanMap::Identity => Ok(g.clone()),
            _ => {
                let a = match g {
                    GroupElem::Euclid(v) if v.len() == 1 => v[0].a().clone(),
                    other => {
                        return Err(Error::VariantMismatch(format!(
                            "{self:?} is defined on scalars, got {other}"
                        )))
                    }
                };
                Ok(GroupElem::scalar(int_elem(match self {
                    FreimanMap::RationalPart => a,
                    FreimanMap::Residue(n) | FreimanMap::ResidueClass(n) => {
                        a.mod_floor(&BigInt::from(n))
                    }
                    FreimanMap::Identity => unreachable!(),
                })))
            }
        }
    }

    /// Normal form in the target group.
    fn reduce(self, g: GroupElem) -> Result<GroupElem> {
        match (self, &g) {
            (FreimanMap::ResidueClass(n), GroupElem::Euclid(v)) => Ok(GroupElem::scalar(
                int_elem(v[0].a().mod_floor(&BigInt::from(n))),
            )),
            _ => Ok(g),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FreimanVerdict {
    pub k: usize,
    pub holds: bool,
    /// Two `k`-tuples with equal products whose images have different products.
    pub counterexample: Option<(Vec<String>, Vec<String>)>,
    pub tuples_checked: usize,
}

/// Exhaustive Freiman `k`-homomorphism test: every pair of `k`-tuples with
/// `g_1⋯g_k = γ_1⋯γ_k` must satisfy `φ(g_1)⋯φ(g_k) = φ(γ_1)⋯φ(γ_k)`. Tuples
/// run in lexicographic order of the canonically sorted domain, so the
/// reported counterexample is the first one met.
pub fn freiman_check(
    map: FreimanMap,
    k: usize,
    domain: &[GroupElem],
    budget: usize,
) -> Result<FreimanVerdict> {
    if k == 0 {
        return Err(Error::InvalidInput("k must be at least 1".into()));
    }
    let mut dom = domain.to_vec();
    dom.sort();
    dom.dedup();
    let n = dom.len();
    let total = (n as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if total > budget as u128 {
        return Err(Error::Budget {
            what: format!("{k}-tuples over a domain of {n}"),
            limit: budget,
        });
    }
    let images = dom.iter().map(|g| map.apply(g)).collect::<Result<Vec<_>>>()?;
    let mut seen: HashMap<GroupElem, (Vec<usize>, GroupElem)> = HashMap::new();
    let mut idx = vec![0usize; k];
    let mut checked = 0usize;
    if n == 0 {
        return Ok(FreimanVerdict {
            k,
            holds: true,
            counterexample: None,
            tuples_checked: 0,
        });
    }
    loop {
        let mut prod = dom[idx[0]].clone();
        let mut img = images[idx[0]].clone();
        for &i in &idx[1..] {
            prod = prod.mul(&dom[i])?;
            img = img.mul(&images[i])?;
        }
        let img = map.reduce(img)?;
        checked += 1;
        match seen.get(&prod) {
            Some((first, first_img)) if *first_img != img => {
                let show = |t: &[usize]| t.iter().map(|&i| dom[i].to_string()).collect();
                return Ok(FreimanVerdict {
                    k,
                    holds: false,
                    counterexample: Some((show(first), show(&idx))),
                    tuples_checked: checked,
                });
            }
            Some(_) => {}
            None => {
                seen.insert(prod, (idx.clone(), img));
            }
        }
        // odometer increment, last position fastest
        let mut pos = k;
        loop {
            if pos == 0 {
                return Ok(FreimanVerdict {
                    k,
                    holds: true,
                    counterexample: None,
                    tuples_checked: checked,
                });
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < n {
                break;
            }
            idx[pos] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<GroupElem> {
        v.iter().map(|&x| GroupElem::scalar(int_elem(x))).collect()
    }

    #[test]
    fn parity_into_integers_fails_at_two() {
        let r = freiman_check(FreimanMap::Residue(2), 2, &ints(&[-1, 0, 1]), 1000).unwrap();
        assert!(!r.holds);
        let (a, b) = r.counterexample.unwrap();
        assert_eq!(a, vec!["-1", "1"]);
        assert_eq!(b, vec!["0", "0"]);
    }

    #[test]
    fn parity_class_is_a_homomorphism() {
        let r = freiman_check(FreimanMap::ResidueClass(2), 3, &ints(&[-2, -1, 0, 1, 2]), 1000).unwrap();
        assert!(r.holds);
        assert_eq!(r.tuples_checked, 125);
    }

    #[test]
    fn identity_always_passes() {
        let r = freiman_check(FreimanMap::Identity, 3, &ints(&[-3, 0, 1, 7]), 1000).unwrap();
        assert!(r.holds);
    }

    #[test]
    fn budget() {
        assert!(freiman_check(FreimanMap::Identity, 5, &ints(&[1, 2, 3, 4, 5]), 100).is_err());
    }
}
