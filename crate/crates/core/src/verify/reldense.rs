use serde::{Deserialize, Serialize};

use crate::cutproject::{Geometry, PointSet};
use crate::error::{Error, Result};
use crate::index::NeighborIndex;
use crate::verify::covering_radius;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RelDenseReport {
    /// Covering radius of `P0` in the ambient group over `B_c` and `B_{c/4}`.
    pub ambient_covering: (f64, f64),
    /// `max_{p ∈ P, ‖p‖ ≤ r} d(p, P0)` for `r = c` and `r = c/4`.
    pub relative_covering: (f64, f64),
    pub resolution: f64,
    pub core_radius: f64,
    pub ambient_dense: bool,
    pub relative_dense: bool,
    pub equivalent: bool,
}

/// Relative density of `P0 ⊆ P` measured two ways: in the ambient group and
/// inside `P`. A bounded quantity stays put when the radius grows fourfold;
/// one that keeps growing signals a set that is not relatively dense.
pub fn rel_dense_subset_check(p0: &PointSet, p: &PointSet) -> Result<RelDenseReport> {
    if !p0.is_subset_of(p) {
        let bad = p0.points().iter().find(|g| !p.contains(g)).map(ToString::to_string);
        return Err(Error::NotSubset(bad.unwrap_or_default()));
    }
    let c = p0.core_radius().min(p.core_radius());
    let geometry = p.geometry();
    let resolution = match geometry {
        Geometry::Euclid(1) => None,
        _ => Some((c / 100.0).max(0.05)),
    };
    let (amb_big, h) = covering_radius(p0, c, resolution)?;
    let (amb_small, _) = covering_radius(p0, c / 4.0, resolution)?;

    let idx = NeighborIndex::auto(p0)?;
    let relative = |r: f64| -> Result<f64> {
        let mut worst = 0.0f64;
        for g in p.points_within(r) {
            if let Some((_, d)) = idx.nearest(&g.physical()?) {
                worst = worst.max(d);
            }
        }
        Ok(worst)
    };
    let rel_big = relative(c)?;
    let rel_small = relative(c / 4.0)?;
    let tol = 1e-9;
    let bounded = |big: f64, small: f64| big <= 1.5 * small + h + tol;
    let ambient_dense = bounded(amb_big, amb_small);
    let relative_dense = bounded(rel_big, rel_small);
    Ok(RelDenseReport {
        ambient_covering: (amb_big, amb_small),
        relative_covering: (rel_big, rel_small),
        resolution: h,
        core_radius: c,
        ambient_dense,
        relative_dense,
        equivalent: ambient_dense == relative_dense,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cutproject::{explicit_integers, integer_lattice};

    #[test]
    fn even_integers() {
        let z = integer_lattice(1, 1, 200.0).unwrap();
        let e = integer_lattice(1, 2, 200.0).unwrap();
        let r = rel_dense_subset_check(&e, &z).unwrap();
        assert!(r.ambient_dense && r.relative_dense && r.equivalent);
        assert_eq!(r.ambient_covering.0, 1.0);
        assert_eq!(r.relative_covering.0, 1.0);
    }

    #[test]
    fn powers_of_two_are_sparse() {
        let z = integer_lattice(1, 1, 1024.0).unwrap();
        let mut v = vec![0i64];
        for j in 0..=10 {
            v.push(1 << j);
            v.push(-(1 << j));
        }
        let p0 = explicit_integers("powers of two", &v, 1024.0).unwrap();
        let r = rel_dense_subset_check(&p0, &z).unwrap();
        assert!(!r.ambient_dense && !r.relative_dense && r.equivalent);
    }

    #[test]
    fn subset_is_required() {
        let z = integer_lattice(1, 2, 20.0).unwrap();
        let p0 = explicit_integers("odd", &[1], 20.0).unwrap();
        assert!(matches!(rel_dense_subset_check(&p0, &z), Err(Error::NotSubset(_))));
    }
}
