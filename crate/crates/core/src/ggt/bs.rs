use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::algebra::{Bs, BsLetter, GroupElem};
use crate::error::{Error, Result};
use crate::ggt::{word_lengths, WordFamily, WordGroup};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct BsDistortion {
    pub n: u32,
    pub k: u32,
    /// Length of the explicit word `b^n a b^{−n}`, checked to evaluate to `a^{2^n}`.
    pub unconstrained_upper: usize,
    /// Shortest path from `e` to `a^{2^n}` through elements of syllable count `≤ k`.
    pub constrained_length: usize,
    pub states_explored: usize,
}

/// Exact word length of `a^{2^n}` in `BS(1,2)` with generators `a^{±1}, b^{±1}`.
pub fn bs_word_length(n: u32, budget: usize) -> Result<usize> {
    let g = WordGroup::standard(WordFamily::Bs12)?;
    let target = GroupElem::Bs(Bs::a_two_pow(n));
    let table = word_lengths(&g, 2 * n as usize + 1, budget)?;
    table.get(&target).copied().ok_or_else(|| Error::Unreachable {
        point: target.to_string(),
        max_len: 2 * n as usize + 1,
    })
}

/// Length of `a^{2^n}` along the Cayley graph restricted to the elements of
/// syllable count at most `k`, where a syllable is a power of `a` or a single
/// `b^{±1}`. States are capped at `|m| ≤ 2^{n+1}` and `p, q ≤ k + 1`.
pub fn bs_distortion(n: u32, k: u32, budget: usize) -> Result<BsDistortion> {
    if n > 24 || k > 4 || k == 0 {
        return Err(Error::InvalidInput(format!(
            "bs_distortion needs n ≤ 24 and 1 ≤ k ≤ 4 (got n = {n}, k = {k})"
        )));
    }
    let word = Bs::conjugation_word(n as usize);
    let target = Bs::a_two_pow(n);
    if Bs::from_word(&word)? != target {
        return Err(Error::InvalidInput("conjugation word does not evaluate to a^(2^n)".into()));
    }
    let m_cap = BigInt::one() << (n + 1);
    let admissible =
        |g: &Bs| g.syllable_count() <= k && g.p() <= k + 1 && g.q() <= k + 1 && g.m().abs() <= m_cap;
    let letters: Vec<Bs> = BsLetter::ALL.iter().map(|l| l.elem()).collect();
    let mut dist: HashMap<Bs, usize> = HashMap::from([(Bs::identity(), 0)]);
    let mut queue = VecDeque::from([Bs::identity()]);
    let mut found = None;
    'bfs: while let Some(g) = queue.pop_front() {
        let dg = dist[&g];
        for s in &letters {
            let h = g.mul(s)?;
            if dist.contains_key(&h) || !admissible(&h) {
                continue;
            }
            if h == target {
                found = Some(dg + 1);
                break 'bfs;
            }
            dist.insert(h.clone(), dg + 1);
            queue.push_back(h);
            if dist.len() > budget {
                return Err(Error::Budget {
                    what: "BS(1,2) constrained path states".into(),
                    limit: budget,
                });
            }
        }
    }
    let constrained_length = if target.is_identity() { Some(0) } else { found }.ok_or_else(|| {
        Error::Unreachable {
            point: target.to_string(),
            max_len: dist.values().copied().max().unwrap_or(0),
        }
    })?;
    Ok(BsDistortion {
        n,
        k,
        unconstrained_upper: word.len(),
        constrained_length,
        states_explored: dist.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n_zero_is_a_single_letter() {
        let r = bs_distortion(0, 2, 1000).unwrap();
        assert_eq!(r.constrained_length, 1);
        assert_eq!(r.unconstrained_upper, 1);
    }

    #[test]
    fn word_lengths_small_n() {
        assert_eq!(bs_word_length(2, 1 << 20).unwrap(), 4);
        for n in 0..=4 {
            assert!(bs_word_length(n, 1 << 20).unwrap() <= 2 * n as usize + 1);
        }
    }

    #[test]
    fn large_k_recovers_the_geodesic() {
        for n in 1..=4 {
            let r = bs_distortion(n, 4.max(n), 1 << 22).unwrap();
            assert!(r.constrained_length <= 2 * n as usize + 1);
        }
    }

    #[test]
    fn two_syllables_cost_half_the_exponent() {
        for n in 3..=8 {
            let r = bs_distortion(n, 2, 1 << 22).unwrap();
            assert_eq!(r.constrained_length, (1usize << (n - 1)) + 2, "n = {n}");
        }
    }
}
