use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::algebra::GroupElem;
use crate::cutproject::{Geometry, PointSet};
use crate::error::{Error, Result};
use crate::hull::flc_patches;
use crate::index::NeighborIndex;
use crate::verify::{largest_radius, packing_radius, power_set};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LocalFiniteness {
    pub k: usize,
    pub ball_radius: f64,
    /// `max_g |g⁻¹Λ^k ∩ B_K(e)|` over the sampled centers `g`.
    pub c_k: usize,
    pub centers: usize,
    pub centers_radius: f64,
    pub power_core_radius: f64,
    pub factor_radius: f64,
}


/// `C_K = max_g |g⁻¹Λ^k ∩ B_K(e)|` with `B_K` open and `g` ranging over the
/// points of `Λ` with norm at most `centers_radius` (default: the largest
/// radius for which every ball `B_K(g)` lies in the core of `Λ^k`).
///
/// `Λ^k` is the bounded-factor power of [`power_set`].
pub fn local_finiteness_profile(
    p: &PointSet,
    k: usize,
    ball_radius: f64,
    factor_radius: f64,
    centers_radius: Option<f64>,
) -> Result<LocalFiniteness> {
    if !(ball_radius > 0.0) {
        return Err(Error::InvalidInput(format!("K must be positive, got {ball_radius}")));
    }
    let pk = if k == 1 {
        p.clone()
    } else {
        power_set(p, k, factor_radius)?
    };
    let geometry = p.geometry();
    let max_center = largest_radius(p.core_radius(), |c| {
        geometry.product_bound(c, ball_radius) <= pk.core_radius()
    });
    let cr = centers_radius.unwrap_or(max_center);
    if cr > max_center + 1e-12 || max_center <= 0.0 {
        return Err(Error::InsufficientCore {
            needed: geometry.product_bound(cr, ball_radius),
            available: pk.core_radius(),
        });
    }
    let centers = p.points_within(cr);
    if centers.is_empty() {
        return Err(Error::EmptyCore(format!("no centers within radius {cr}")));
    }
    let idx = NeighborIndex::auto(&pk)?;
    let mut c_k = 0;
    for g in &centers {
        c_k = c_k.max(idx.within_open(&g.physical()?, ball_radius).len());
    }
    Ok(LocalFiniteness {
        k,
        ball_radius,
        c_k,
        centers: centers.len(),
        centers_radius: cr,
        power_core_radius: pk.core_radius(),
        factor_radius: if k == 1 { 0.0 } else { factor_radius },
    })
}

/// `{x⁻¹y : x, y core points, ‖x⁻¹y‖ ≤ radius}` in canonical order.
pub fn difference_set(p: &PointSet, radius: f64) -> Result<Vec<GroupElem>> {
    let idx = NeighborIndex::auto(p)?;
    let core_r = p.core_radius();
    let mut out = BTreeSet::new();
    for (i, x) in p.points().iter().enumerate() {
        if x.norm()? > core_r {
            continue;
        }
        for (j, _) in idx.within(idx.coords(i), radius) {
            let y = &p.points()[j];
            if y.norm()? <= core_r {
                let d = x.left_div(y)?;
                if d.norm()? <= radius {
                    out.insert(d);
                }
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// Upper bound on the number of points with pairwise distance `≥ r` inside
/// an open ball of radius `K`, by a volume count of disjoint small balls.
pub fn packing_count_bound(geometry: Geometry, r: f64, ball_radius: f64) -> f64 {
    match geometry {
        Geometry::Euclid(n) => (2.0 * ball_radius / r + 1.0).powi(n as i32),
        Geometry::Heis => {
            // B_s(p), B_s(q) are disjoint once 2s + s² < d(p, q); Haar measure
            // of B_t is (2t)³ in symmetric coordinates
            let s = 0.999 * ((1.0 + r).sqrt() - 1.0);
            (geometry.product_bound(ball_radius, s) / s).powi(3)
        }
    }
}

/// Largest number of points of `Λ` in an open ball of radius `r/2`, over
/// balls centered at core points and, in Euclidean space, at midpoints between
/// each core point and its nearest neighbour.
pub fn uniform_discreteness_check(p: &PointSet, r: f64) -> Result<usize> {
    let idx = NeighborIndex::auto(p)?;
    // the closest pair sits exactly r/2 from its midpoint; keep rounding out
    let probe = r / 2.0 * (1.0 - 1e-9);
    let mut worst = 0;
    for (i, g) in p.points().iter().enumerate() {
        if g.norm()? > p.core_radius() {
            continue;
        }
        let q = idx.coords(i).to_vec();
        worst = worst.max(idx.within_open(&q, probe).len());
        if let (Geometry::Euclid(_), Some((j, _))) = (p.geometry(), idx.nearest_other(i)) {
            let mid: Vec<f64> = q.iter().zip(idx.coords(j)).map(|(a, b)| (a + b) / 2.0).collect();
            worst = worst.max(idx.within_open(&mid, probe).len());
        }
    }
    Ok(worst)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ChainReport {
    pub family: String,
    pub patch_radius: f64,
    pub patch_types: usize,
    pub difference_set_size: usize,
    /// Smallest nonzero norm in the core difference set.
    pub min_difference_norm: f64,
    pub packing_radius: f64,
    pub max_points_in_small_ball: usize,
    pub local_finiteness: LocalFiniteness,
    pub count_bound: f64,
    pub violations: Vec<String>,
}

impl ChainReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Finite local complexity ⇒ uniform discreteness ⇒ uniform local finiteness,
/// each link checked on the core:
///
/// * the ρ-patch catalog is finite and the core difference set `Λ⁻¹Λ ∩ B_{2ρ}`
///   has a positive smallest nonzero norm, equal to the packing radius when
///   the latter is below `2ρ`;
/// * open balls of radius `r/2` hold at most one point;
/// * `C_K` is at most the volume bound for `r`-separated sets.
pub fn discreteness_chain(p: &PointSet, rho: f64, ball_radius: f64) -> Result<ChainReport> {
    let mut violations = Vec::new();
    let patches = flc_patches(p, rho)?;
    if patches.is_empty() {
        violations.push("no patch centers in the core".into());
    }
    let diffs = difference_set(p, 2.0 * rho)?;
    let min_diff = diffs
        .iter()
        .filter(|g| !g.is_identity())
        .map(GroupElem::norm)
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(f64::INFINITY, f64::min);
    let r = packing_radius(p)?;
    if !(min_diff > 0.0) {
        violations.push(format!("difference set has nonzero element of norm {min_diff}"));
    }
    if !(r > 0.0 && r.is_finite()) {
        violations.push(format!("packing radius {r} is not positive"));
    }
    if r <= 2.0 * rho && (min_diff - r).abs() > 1e-9 {
        violations.push(format!(
            "smallest difference norm {min_diff} disagrees with packing radius {r}"
        ));
    }
    let small = uniform_discreteness_check(p, r)?;
    if small > 1 {
        violations.push(format!("{small} points in an open ball of radius r/2"));
    }
    let lf = local_finiteness_profile(p, 1, ball_radius, 0.0, None)?;
    let bound = packing_count_bound(p.geometry(), r, ball_radius);
    if lf.c_k as f64 > bound + 1e-9 {
        violations.push(format!("C_K = {} exceeds the packing bound {bound}", lf.c_k));
    }
    Ok(ChainReport {
        family: p.provenance().family_tag().to_string(),
        patch_radius: rho,
        patch_types: patches.len(),
        difference_set_size: diffs.len(),
        min_difference_norm: min_diff,
        packing_radius: r,
        max_points_in_small_ball: small,
        local_finiteness: lf,
        count_bound: bound,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cutproject::{fish_set, integer_lattice};

    #[test]
    fn integer_profile() {
        let z = integer_lattice(1, 1, 30.0).unwrap();
        let lf = local_finiteness_profile(&z, 2, 3.5, 5.0, None).unwrap();
        assert_eq!(lf.c_k, 7);
    }

    #[test]
    fn fish_profile() {
        let f = fish_set(6).unwrap();
        let lf = local_finiteness_profile(&f, 1, 2.5, 0.0, None).unwrap();
        assert!(lf.c_k <= 3);
    }

    #[test]
    fn chain_on_integers() {
        let z = integer_lattice(1, 1, 30.0).unwrap();
        let c = discreteness_chain(&z, 1.5, 3.5).unwrap();
        assert!(c.holds(), "{:?}", c.violations);
        assert_eq!(c.patch_types, 1);
        assert_eq!(c.min_difference_norm, 1.0);
    }

    #[test]
    fn heis_count_bound_is_finite() {
        let b = packing_count_bound(Geometry::Heis, 0.5, 1.0);
        assert!(b.is_finite() && b > 1.0);
    }
}
