use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::GroupElem;
use crate::cutproject::pointset::{int_elem, PointSet, Provenance, INTEGER_RING};
use crate::error::{Error, Result};

/// Gap sequence: block `i` contributes `i` gaps of 2 followed by `i` gaps of 3.
pub fn fish_gaps(n_blocks: usize) -> Vec<i64> {
    let mut g = Vec::with_capacity(n_blocks * (n_blocks + 1));
    for i in 1..=n_blocks {
        g.extend(std::iter::repeat_n(2, i));
        g.extend(std::iter::repeat_n(3, i));
    }
    g
}

/// `{0} ∪ {±(x_1 + … + x_n)}` for the first `n_blocks` blocks; complete on
/// `[−S, S]` where `S` is the total length of the generated prefix.
pub fn fish_set(n_blocks: usize) -> Result<PointSet> {
    if n_blocks == 0 {
        return Err(Error::InvalidInput("fish set needs at least one block".into()));
    }
    let mut pts = vec![GroupElem::scalar(int_elem(0))];
    let mut s = 0i64;
    for g in fish_gaps(n_blocks) {
        s += g;
        pts.push(GroupElem::scalar(int_elem(s)));
        pts.push(GroupElem::scalar(int_elem(-s)));
    }
    PointSet::new(
        Provenance::Fish { blocks: n_blocks },
        INTEGER_RING,
        pts,
        s as f64,
        s as f64,
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BlockKind {
    Twos,
    Threes,
}

/// A maximal run of equal gaps on the positive half-line, from point `start`
/// to point `end`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockSpan {
    pub kind: BlockKind,
    pub block: usize,
    pub start: i64,
    pub end: i64,
}

impl BlockSpan {
    pub fn midpoint(&self) -> f64 {
        (self.start + self.end) as f64 / 2.0
    }

    pub fn half_length(&self) -> f64 {
        (self.end - self.start) as f64 / 2.0
    }
}

pub fn fish_block_spans(n_blocks: usize) -> Vec<BlockSpan> {
    let mut out = Vec::with_capacity(2 * n_blocks);
    let mut s = 0i64;
    for i in 1..=n_blocks {
        let len = i as i64;
        out.push(BlockSpan {
            kind: BlockKind::Twos,
            block: i,
            start: s,
            end: s + 2 * len,
        });
        s += 2 * len;
        out.push(BlockSpan {
            kind: BlockKind::Threes,
            block: i,
            start: s,
            end: s + 3 * len,
        });
        s += 3 * len;
    }
    out
}

/// Membership in the infinite Fish set, block by block.
pub(crate) fn fish_contains(n: &BigInt) -> bool {
    let target = n.abs();
    if target.is_zero() {
        return true;
    }
    // blocks grow quadratically, so any i64-sized input is reached quickly
    let Some(t) = target.to_i64() else {
        return false;
    };
    let mut s = 0i64;
    let mut i = 1i64;
    loop {
        let twos_end = s + 2 * i;
        if t <= twos_end {
            return (t - s) % 2 == 0;
        }
        let threes_end = twos_end + 3 * i;
        if t <= threes_end {
            return (t - twos_end) % 3 == 0;
        }
        s = threes_end;
        i += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gap_prefix() {
        assert_eq!(
            fish_gaps(3),
            vec![2, 3, 2, 2, 3, 3, 2, 2, 2, 3, 3, 3]
        );
    }

    #[test]
    fn points_prefix_and_symmetry() {
        let f = fish_set(3).unwrap();
        let mut nonneg: Vec<i64> = f
            .points()
            .iter()
            .filter_map(|p| match p {
                GroupElem::Euclid(v) => v[0].a().to_i64(),
                _ => None,
            })
            .filter(|&x| x >= 0)
            .collect();
        nonneg.sort();
        assert_eq!(&nonneg[..7], &[0, 2, 5, 7, 9, 12, 15]);
        assert!(f.is_symmetric_with_identity().unwrap());
        assert_eq!(f.enum_radius(), 30.0);
    }

    #[test]
    fn global_predicate_matches_listing() {
        let f = fish_set(8).unwrap();
        let r = f.enum_radius() as i64;
        for n in -r..=r {
            let g = GroupElem::scalar(int_elem(n));
            assert_eq!(fish_contains(&BigInt::from(n)), f.contains(&g), "n = {n}");
        }
    }

    #[test]
    fn spans_tile_the_half_line() {
        let spans = fish_block_spans(4);
        assert_eq!(spans[0].start, 0);
        for w in spans.windows(2) {
            assert_eq!(w[0].end, w[1].start);
        }
        assert_eq!(spans.last().unwrap().end, fish_gaps(4).iter().sum::<i64>());
    }
}
