//! Word metrics and coarse-geometry experiments.

mod bs;
mod cartan;
mod folner;
mod freiman;
mod milnor;
mod quasi;

pub use bs::{bs_distortion, bs_word_length, BsDistortion};
pub use cartan::{cartan_syndetic, CartanReport};
pub use folner::{folner_report, FolnerRow};
pub use freiman::{freiman_check, FreimanMap, FreimanVerdict};
pub use milnor::{ms_rho, RhoTable};
pub use quasi::{quasi_action_defects, DefectReport, QuasiAction, Retraction};

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{Bs, BsLetter, GroupElem, HeisElem, QuadInt, Sl2};
use crate::cutproject::{int_elem, INTEGER_RING};
use crate::error::{Error, Result};
use crate::verify::bfs_distances;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "param", rename_all = "kebab-case")]
pub enum WordFamily {
    /// `Z^n`.
    ZPowers(usize),
    /// The integer Heisenberg group.
    HeisZ,
    Bs12,
    /// `(Z[√d], +)`.
    QuadRingAdditive(u32),
    Sl2Z,
}

/// A finitely generated group with a symmetric generating set.
#[derive(Clone, Debug, PartialEq)]
pub struct WordGroup {
    pub family: WordFamily,
    pub generators: Vec<GroupElem>,
}

fn sl2(a: f64, b: f64, c: f64, d: f64) -> GroupElem {
    GroupElem::Sl2(Sl2 { a, b, c, d })
}

impl WordGroup {
    /// Rejects generating sets that are not closed under inversion.
    pub fn new(family: WordFamily, generators: Vec<GroupElem>) -> Result<Self> {
        for g in &generators {
            let gi = g.inverse()?;
            if !generators.contains(&gi) {
                return Err(Error::InvalidInput(format!(
                    "generating set is not symmetric: {g} has no inverse"
                )));
            }
        }
        Ok(WordGroup { family, generators })
    }

    /// The usual generators: unit vectors, `a, b` for Heisenberg and
    /// `BS(1,2)`, `1, √d` for the quadratic ring, and the two elementary
    /// unipotents for `SL2(Z)`, each with inverses.
    pub fn standard(family: WordFamily) -> Result<Self> {
        let gens = match family {
            WordFamily::ZPowers(n) => {
                if n == 0 {
                    return Err(Error::InvalidInput("Z^0 has no generators".into()));
                }
                let mut v = Vec::new();
                for i in 0..n {
                    for s in [1i64, -1] {
                        let mut e = vec![int_elem(0); n];
                        e[i] = int_elem(s);
                        v.push(GroupElem::Euclid(e));
                    }
                }
                v
            }
            WordFamily::HeisZ => {
                let z = int_elem(0);
                let mut v = Vec::new();
                for s in [1i64, -1] {
                    v.push(GroupElem::Heis(HeisElem::new(int_elem(s), z.clone(), z.clone())?));
                    v.push(GroupElem::Heis(HeisElem::new(z.clone(), int_elem(s), z.clone())?));
                }
                v
            }
            WordFamily::Bs12 => BsLetter::ALL.iter().map(|l| GroupElem::Bs(l.elem())).collect(),
            WordFamily::QuadRingAdditive(d) => vec![
                GroupElem::scalar(QuadInt::new(1, 0, d)?),
                GroupElem::scalar(QuadInt::new(-1, 0, d)?),
                GroupElem::scalar(QuadInt::new(0, 1, d)?),
                GroupElem::scalar(QuadInt::new(0, -1, d)?),
            ],
            WordFamily::Sl2Z => vec![
                sl2(1.0, 1.0, 0.0, 1.0),
                sl2(1.0, -1.0, 0.0, 1.0),
                sl2(1.0, 0.0, 1.0, 1.0),
                sl2(1.0, 0.0, -1.0, 1.0),
            ],
        };
        WordGroup::new(family, gens)
    }

    pub fn identity(&self) -> Result<GroupElem> {
        Ok(match self.family {
            WordFamily::ZPowers(n) => GroupElem::Euclid(vec![int_elem(0); n]),
            WordFamily::HeisZ => GroupElem::Heis(HeisElem::identity(INTEGER_RING)?),
            WordFamily::Bs12 => GroupElem::Bs(Bs::identity()),
            WordFamily::QuadRingAdditive(d) => GroupElem::scalar(QuadInt::zero(d)?),
            WordFamily::Sl2Z => GroupElem::Sl2(Sl2::identity()),
        })
    }
}

/// Exact word lengths `d_S(e, g) ≤ radius`, as a lookup table.
pub fn word_lengths(
    g: &WordGroup,
    radius: usize,
    budget: usize,
) -> Result<HashMap<GroupElem, usize>> {
    bfs_distances(&g.identity()?, &g.generators, radius, budget, |_| Ok(true))
}

/// The word ball of the given radius, sorted by length then canonically.
pub fn word_ball(g: &WordGroup, radius: usize, budget: usize) -> Result<Vec<(GroupElem, usize)>> {
    let mut v: Vec<(GroupElem, usize)> = word_lengths(g, radius, budget)?.into_iter().collect();
    v.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radius_zero_is_identity() {
        let g = WordGroup::standard(WordFamily::HeisZ).unwrap();
        let b = word_ball(&g, 0, 10).unwrap();
        assert_eq!(b, vec![(g.identity().unwrap(), 0)]);
    }

    #[test]
    fn plane_ball_sizes() {
        let g = WordGroup::standard(WordFamily::ZPowers(2)).unwrap();
        for n in 0..8 {
            assert_eq!(word_ball(&g, n, 1 << 20).unwrap().len(), 2 * n * n + 2 * n + 1);
        }
    }

    #[test]
    fn modular_group_ball() {
        let g = WordGroup::standard(WordFamily::Sl2Z).unwrap();
        let b = word_ball(&g, 2, 1000).unwrap();
        // 1 + 4 + (16 − 4 cancellations)
        assert_eq!(b.len(), 17);
    }

    #[test]
    fn budget_is_enforced() {
        let g = WordGroup::standard(WordFamily::Bs12).unwrap();
        assert!(matches!(word_ball(&g, 20, 100), Err(Error::Budget { .. })));
    }

    #[test]
    fn asymmetric_generators_rejected() {
        let r = WordGroup::new(WordFamily::ZPowers(1), vec![GroupElem::scalar(int_elem(1))]);
        assert!(r.is_err());
    }
}
