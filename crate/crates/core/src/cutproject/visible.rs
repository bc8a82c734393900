use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::GroupElem;
use crate::cutproject::pointset::{int_elem, is_visible, PointSet, Provenance, INTEGER_RING};
use crate::error::{Error, Result};

/// Visible lattice points `gcd(|x|, |y|) = 1` in the Euclidean ball of radius `n`.
///
/// The set is complete on that ball, which is the largest metric ball inside
/// the box `[−n, n]²`.
pub fn visible_points(n: i64) -> Result<PointSet> {
    if n < 1 {
        return Err(Error::InvalidInput(format!("visible points need N >= 1, got {n}")));
    }
    let n2 = n * n;
    let mut pts = Vec::new();
    for x in -n..=n {
        for y in -n..=n {
            if x * x + y * y <= n2 && is_visible(&BigInt::from(x), &BigInt::from(y)) {
                pts.push(GroupElem::Euclid(vec![int_elem(x), int_elem(y)]));
            }
        }
    }
    PointSet::new(Provenance::Visible { n }, INTEGER_RING, pts, n as f64, n as f64)
}

/// A lattice point far from every visible point that is nevertheless a sum of
/// two visible points.
#[derive(Clone, Debug, PartialEq)]
pub struct InvisibleHole {
    pub center: (BigInt, BigInt),
    /// Every lattice point within this distance of `center` is invisible.
    pub radius: f64,
    pub summands: ((BigInt, BigInt), (BigInt, BigInt)),
}

fn primes(count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut c = 2u64;
    while out.len() < count {
        if out.iter().take_while(|&&p| p * p <= c).all(|&p| !c.is_multiple_of(p)) {
            out.push(c);
        }
        c += 1;
    }
    out
}

/// Chinese remaindering of `x ≡ r_i (mod p_i)` for pairwise coprime moduli.
fn crt(residues: &[(BigInt, BigInt)]) -> (BigInt, BigInt) {
    let mut x = BigInt::zero();
    let mut m = BigInt::one();
    for (r, p) in residues {
        let e = m.mod_floor(p).extended_gcd(p);
        // e.x · m ≡ 1 (mod p)
        let t = ((r - &x) * e.x).mod_floor(p);
        x += &m * t;
        m *= p;
    }
    (x.mod_floor(&m), m)
}

/// Builds `z` with `dist(z, V) > radius` together with visible `u, v` such
/// that `u + v = z`.
///
/// Each lattice offset `o` with `|o| ≤ radius` gets its own prime `p_o` and
/// `z ≡ −o (mod p_o)` in both coordinates, so `z + o` has a common factor.
pub fn invisible_ball_center(radius: f64) -> Result<InvisibleHole> {
    if !(0.0..=64.0).contains(&radius) {
        return Err(Error::InvalidInput(format!(
            "hole radius must lie in [0, 64], got {radius}"
        )));
    }
    let r = radius.floor() as i64;
    let mut offsets = Vec::new();
    for i in -r..=r {
        for j in -r..=r {
            if ((i * i + j * j) as f64) <= radius * radius {
                offsets.push((i, j));
            }
        }
    }
    let ps = primes(offsets.len());
    let mut rx = Vec::with_capacity(offsets.len());
    let mut ry = Vec::with_capacity(offsets.len());
    for (&(i, j), &p) in offsets.iter().zip(&ps) {
        let p = BigInt::from(p);
        rx.push((BigInt::from(-i).mod_floor(&p), p.clone()));
        ry.push((BigInt::from(-j).mod_floor(&p), p));
    }
    let (zx, _) = crt(&rx);
    let (zy, _) = crt(&ry);
    let u0 = BigInt::one();
    let vx = &zx - &u0;
    let mut t = BigInt::zero();
    loop {
        let vy = &zy - &t;
        if is_visible(&vx, &vy) {
            return Ok(InvisibleHole {
                center: (zx, zy),
                radius,
                summands: ((u0, t), (vx, vy)),
            });
        }
        t += 1;
    }
}

/// Result of testing `V + V ⊇ [−h, h]² ∩ Z²` on an enumerated fragment.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairSumCoverage {
    pub half_width: i64,
    pub targets: usize,
    pub uncovered: Vec<(i64, i64)>,
}

impl PairSumCoverage {
    pub fn complete(&self) -> bool {
        self.uncovered.is_empty()
    }
}

/// Every lattice point of the box is written as `u + v` with `u, v` listed in
/// `v_set`. Candidates `u = (±1, t), (t, ±1)` are tried first, then the whole
/// fragment.
pub fn pair_sum_coverage(v_set: &PointSet, half_width: i64) -> Result<PairSumCoverage> {
    if !matches!(v_set.provenance(), Provenance::Visible { .. }) {
        return Err(Error::InvalidInput("pair-sum coverage expects a visible-points set".into()));
    }
    let box_r = (2.0f64).sqrt() * half_width as f64;
    if box_r > v_set.enum_radius() {
        return Err(Error::InsufficientCore {
            needed: box_r,
            available: v_set.enum_radius(),
        });
    }
    let pt = |x: i64, y: i64| GroupElem::Euclid(vec![int_elem(x), int_elem(y)]);
    let listed: Vec<(i64, i64)> = v_set
        .points()
        .iter()
        .filter_map(|p| match p {
            GroupElem::Euclid(v) => Some((
                num_traits::ToPrimitive::to_i64(v[0].a())?,
                num_traits::ToPrimitive::to_i64(v[1].a())?,
            )),
            _ => None,
        })
        .collect();
    let reach = 2 * half_width + 2;
    let mut candidates = Vec::new();
    for t in -reach..=reach {
        candidates.extend([(1, t), (-1, t), (t, 1), (t, -1)]);
    }
    let mut uncovered = Vec::new();
    let mut targets = 0;
    for x in -half_width..=half_width {
        for y in -half_width..=half_width {
            targets += 1;
            let hit = |&(ux, uy): &(i64, i64)| {
                v_set.contains(&pt(ux, uy)) && v_set.contains(&pt(x - ux, y - uy))
            };
            if !(candidates.iter().any(hit) || listed.iter().any(hit)) {
                uncovered.push((x, y));
            }
        }
    }
    Ok(PairSumCoverage {
        half_width,
        targets,
        uncovered,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn membership_examples() {
        let v = visible_points(10).unwrap();
        let pt = |x: i64, y: i64| GroupElem::Euclid(vec![int_elem(x), int_elem(y)]);
        assert!(v.contains(&pt(1, 0)));
        assert!(!v.contains(&pt(2, 2)));
        assert!(!v.contains(&pt(0, 0)));
    }

    #[test]
    fn hole_is_invisible_and_a_pair_sum() {
        for &rho in &[0.0, 1.0, 2.5] {
            let h = invisible_ball_center(rho).unwrap();
            let (zx, zy) = &h.center;
            let r = rho.floor() as i64;
            for i in -r..=r {
                for j in -r..=r {
                    if ((i * i + j * j) as f64) <= rho * rho {
                        assert!(!is_visible(&(zx + i), &(zy + j)));
                    }
                }
            }
            let ((ux, uy), (vx, vy)) = &h.summands;
            assert!(is_visible(ux, uy) && is_visible(vx, vy));
            assert_eq!(&(ux + vx), zx);
            assert_eq!(&(uy + vy), zy);
        }
    }

    #[test]
    fn small_pair_sum_box() {
        let v = visible_points(20).unwrap();
        let c = pair_sum_coverage(&v, 10).unwrap();
        assert!(c.complete(), "{:?}", c.uncovered);
        assert_eq!(c.targets, 441);
    }
}
