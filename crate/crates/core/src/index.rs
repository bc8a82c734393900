//! Grid-bucketed neighbor queries on enumerated point sets.

use std::collections::HashMap;

use crate::algebra::heis::{heis_inv_f64, heis_mul_f64, heis_norm_f64};
use crate::algebra::GroupElem;
use crate::cutproject::{Geometry, PointSet};
use crate::error::{Error, Result};

/// Left-invariant distance `‖a⁻¹b‖` on float coordinates.
pub fn float_dist(geometry: Geometry, a: &[f64], b: &[f64]) -> f64 {
    match geometry {
        Geometry::Euclid(_) => a
            .iter()
            .zip(b)
            .map(|(x, y)| (x - y) * (x - y))
            .sum::<f64>()
            .sqrt(),
        Geometry::Heis => heis_norm_f64(heis_mul_f64(
            heis_inv_f64([a[0], a[1], a[2]]),
            [b[0], b[1], b[2]],
        )),
    }
}

/// Cell size giving a bounded number of points per bucket on average.
pub fn auto_cell(set: &PointSet) -> f64 {
    let n = set.len().max(1) as f64;
    let r = set.enum_radius().max(1.0);
    match set.geometry() {
        Geometry::Euclid(1) => (2.0 * r / n).max(1e-3),
        _ => (r / n.sqrt()).clamp(0.05, 5.0),
    }
}

/// Buckets points by their first one or two physical coordinates.
///
/// Both gauges dominate the coordinate differences `|x − x'|`, `|y − y'|`,
/// so scanning the cells that meet the query box never misses a point.
/// Results are ordered by distance, then by position in the source list,
/// which for a [`PointSet`] is the canonical exact order.
#[derive(Clone, Debug)]
pub struct NeighborIndex {
    geometry: Geometry,
    coords: Vec<Vec<f64>>,
    cell: f64,
    buckets: HashMap<(i64, i64), Vec<usize>>,
    extent: f64,
}

impl NeighborIndex {
    pub fn new(points: &[GroupElem], geometry: Geometry, cell: f64) -> Result<Self> {
        if !(cell > 0.0 && cell.is_finite()) {
            return Err(Error::InvalidInput(format!("cell size must be positive, got {cell}")));
        }
        let coords = points
            .iter()
            .map(GroupElem::physical)
            .collect::<Result<Vec<_>>>()?;
        let mut buckets: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
        let mut extent = 0.0f64;
        for (i, c) in coords.iter().enumerate() {
            if c.len() != geometry.dim() {
                return Err(Error::InvalidInput(format!(
                    "point of dimension {} in a {geometry:?} index",
                    c.len()
                )));
            }
            extent = extent.max(c.iter().fold(0.0, |m, v| m.max(v.abs())));
            buckets.entry(Self::key_of(c, cell)).or_default().push(i);
        }
        Ok(NeighborIndex {
            geometry,
            coords,
            cell,
            buckets,
            extent,
        })
    }

    pub fn for_set(set: &PointSet, cell: f64) -> Result<Self> {
        NeighborIndex::new(set.points(), set.geometry(), cell)
    }

    /// Index with a cell size scaled to the point density of `set`.
    pub fn auto(set: &PointSet) -> Result<Self> {
        NeighborIndex::for_set(set, auto_cell(set))
    }

    fn key_of(c: &[f64], cell: f64) -> (i64, i64) {
        let k0 = (c[0] / cell).floor() as i64;
        let k1 = if c.len() > 1 {
            (c[1] / cell).floor() as i64
        } else {
            0
        };
        (k0, k1)
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self, i: usize) -> &[f64] {
        &self.coords[i]
    }

    pub fn dist(&self, q: &[f64], i: usize) -> f64 {
        float_dist(self.geometry, q, &self.coords[i])
    }

    fn scan(&self, q: &[f64], r: f64, mut keep: impl FnMut(f64) -> bool) -> Vec<(usize, f64)> {
        let lo0 = ((q[0] - r) / self.cell).floor() as i64;
        let hi0 = ((q[0] + r) / self.cell).floor() as i64;
        let (lo1, hi1) = if q.len() > 1 {
            (
                ((q[1] - r) / self.cell).floor() as i64,
                ((q[1] + r) / self.cell).floor() as i64,
            )
        } else {
            (0, 0)
        };
        let mut out = Vec::new();
        let cells = (hi0 - lo0 + 1).saturating_mul(hi1 - lo1 + 1);
        if cells as usize > 4 * self.buckets.len() + 16 {
            // query box larger than the data: scan buckets directly
            for idx in self.buckets.values() {
                for &i in idx {
                    let d = self.dist(q, i);
                    if keep(d) {
                        out.push((i, d));
                    }
                }
            }
        } else {
            for k0 in lo0..=hi0 {
                for k1 in lo1..=hi1 {
                    if let Some(idx) = self.buckets.get(&(k0, k1)) {
                        for &i in idx {
                            let d = self.dist(q, i);
                            if keep(d) {
                                out.push((i, d));
                            }
                        }
                    }
                }
            }
        }
        out.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
        out
    }

    /// Points with `d(q, p) ≤ r`.
    pub fn within(&self, q: &[f64], r: f64) -> Vec<(usize, f64)> {
        self.scan(q, r, |d| d <= r)
    }

    /// Points with `d(q, p) < r`.
    pub fn within_open(&self, q: &[f64], r: f64) -> Vec<(usize, f64)> {
        self.scan(q, r, |d| d < r)
    }

    /// Nearest point, ties broken by canonical order.
    pub fn nearest(&self, q: &[f64]) -> Option<(usize, f64)> {
        if self.coords.is_empty() {
            return None;
        }
        let qmax = q.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let mut r = self.cell;
        loop {
            if let Some(&hit) = self.within(q, r).first() {
                return Some(hit);
            }
            if r > 4.0 * (self.extent + qmax) + self.cell {
                // Heisenberg distances can exceed coordinate extents; finish by brute force
                return (0..self.coords.len())
                    .map(|i| (i, self.dist(q, i)))
                    .min_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
            }
            r *= 2.0;
        }
    }

    /// Nearest point other than index `skip`.
    pub fn nearest_other(&self, i: usize) -> Option<(usize, f64)> {
        let q = self.coords[i].clone();
        let mut r = self.cell;
        loop {
            if let Some(&hit) = self.within(&q, r).iter().find(|(j, _)| *j != i) {
                return Some(hit);
            }
            if self.coords.len() < 2 {
                return None;
            }
            if r > 4.0 * self.extent + self.cell {
                return (0..self.coords.len())
                    .filter(|&j| j != i)
                    .map(|j| (j, self.dist(&q, j)))
                    .min_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
            }
            r *= 2.0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cutproject::{enumerate, integer_lattice, Scheme};

    #[test]
    fn brute_force_agreement_line() {
        let p = enumerate(&Scheme::sqrt2_line(5.0).unwrap(), 20.0).unwrap();
        let idx = NeighborIndex::for_set(&p, 0.7).unwrap();
        for q in [-3.3f64, 0.0, 0.123, 7.5] {
            let got = idx.within(&[q], 1.1);
            let mut want: Vec<(usize, f64)> = (0..p.len())
                .map(|i| (i, (idx.coords(i)[0] - q).abs()))
                .filter(|(_, d)| *d <= 1.1)
                .collect();
            want.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
            assert_eq!(got, want);
            assert_eq!(idx.nearest(&[q]), want.first().copied());
        }
    }

    #[test]
    fn plane_nearest() {
        let z2 = integer_lattice(2, 1, 5.0).unwrap();
        let idx = NeighborIndex::for_set(&z2, 1.0).unwrap();
        let (_, d) = idx.nearest(&[0.5, 0.5]).unwrap();
        assert!((d - 0.5f64.sqrt()).abs() < 1e-12);
        let (_, d) = idx.nearest_other(0).unwrap();
        assert!((d - 1.0).abs() < 1e-12 || d > 0.0);
    }
}
