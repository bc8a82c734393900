use std::collections::{BTreeMap, HashSet};

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::algebra::GroupElem;
use crate::cutproject::PointSet;
use crate::error::{Error, Result};
use crate::index::NeighborIndex;
use crate::verify::{difference_set, largest_radius};

/// `x⁻¹(Λ ∩ B̄_ρ(x))` in canonical order. An empty point list stands for the
/// empty set as a point of the hull.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Patch {
    points: Vec<GroupElem>,
}

impl Patch {
    pub fn new(mut points: Vec<GroupElem>) -> Self {
        points.sort();
        points.dedup();
        Patch { points }
    }

    pub fn empty() -> Self {
        Patch { points: Vec::new() }
    }

    pub fn points(&self) -> &[GroupElem] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, g: &GroupElem) -> bool {
        self.points.binary_search(g).is_ok()
    }
}

impl Serialize for Patch {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.points.len()))?;
        for p in &self.points {
            seq.serialize_element(&p.to_string())?;
        }
        seq.end()
    }
}

/// Distinct ρ-patches with occurrence counts over the admissible centers.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PatchCatalog {
    pub radius: f64,
    /// Centers `x` have `‖x‖ ≤ centers_radius`, chosen so that `B̄_ρ(x)`
    /// lies inside the core.
    pub centers_radius: f64,
    pub centers: usize,
    pub patches: Vec<(Patch, usize)>,
}

impl PatchCatalog {
    pub fn len(&self) -> usize {
        self.patches.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patches.is_empty()
    }

    pub fn count_of(&self, p: &Patch) -> usize {
        self.patches
            .iter()
            .find(|(q, _)| q == p)
            .map_or(0, |(_, c)| *c)
    }
}

/// Patch of `p` at one of its points.
pub(crate) fn patch_at(
    p: &PointSet,
    idx: &NeighborIndex,
    i: usize,
    rho: f64,
) -> Result<Patch> {
    let x = &p.points()[i];
    let mut pts = Vec::new();
    for (j, _) in idx.within(idx.coords(i), rho) {
        let d = x.left_div(&p.points()[j])?;
        if d.norm()? <= rho {
            pts.push(d);
        }
    }
    Ok(Patch::new(pts))
}

/// Catalog of ρ-patches centered at points of `p` whose closed ρ-ball lies in
/// the core. Requires `ρ ≤ core/2`.
pub fn flc_patches(p: &PointSet, rho: f64) -> Result<PatchCatalog> {
    if !(rho > 0.0) || 2.0 * rho > p.core_radius() {
        return Err(Error::InsufficientCore {
            needed: 2.0 * rho,
            available: p.core_radius(),
        });
    }
    let geometry = p.geometry();
    let core = p.core_radius();
    let cr = largest_radius(core, |c| geometry.product_bound(c, rho) <= core);
    let idx = NeighborIndex::auto(p)?;
    let mut counts: BTreeMap<Patch, usize> = BTreeMap::new();
    let mut centers = 0;
    for (i, x) in p.points().iter().enumerate() {
        if x.norm()? > cr {
            continue;
        }
        centers += 1;
        *counts.entry(patch_at(p, &idx, i, rho)?).or_default() += 1;
    }
    Ok(PatchCatalog {
        radius: rho,
        centers_radius: cr,
        centers,
        patches: counts.into_iter().collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PatchFrequency {
    pub patch: Patch,
    pub count: usize,
    pub frequency: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PatchStats {
    pub family: String,
    pub radius: f64,
    pub centers_radius: f64,
    pub centers: usize,
    pub catalog: Vec<PatchFrequency>,
}

impl PatchStats {
    pub fn frequency_of(&self, p: &Patch) -> f64 {
        self.catalog
            .iter()
            .find(|e| &e.patch == p)
            .map_or(0.0, |e| e.frequency)
    }

    /// `max_P |freq_a(P) − freq_b(P)|` over the union of both catalogs.
    pub fn max_frequency_gap(&self, other: &PatchStats) -> f64 {
        let mut worst = 0.0f64;
        for e in self.catalog.iter() {
            worst = worst.max((e.frequency - other.frequency_of(&e.patch)).abs());
        }
        for e in other.catalog.iter() {
            worst = worst.max((e.frequency - self.frequency_of(&e.patch)).abs());
        }
        worst
    }
}

/// Patch catalog with empirical frequencies over its centers.
pub fn transversal_stats(p: &PointSet, rho: f64) -> Result<PatchStats> {
    let cat = flc_patches(p, rho)?;
    let n = cat.centers.max(1) as f64;
    Ok(PatchStats {
        family: p.provenance().family_tag().to_string(),
        radius: rho,
        centers_radius: cat.centers_radius,
        centers: cat.centers,
        catalog: cat
            .patches
            .into_iter()
            .map(|(patch, count)| PatchFrequency {
                patch,
                count,
                frequency: count as f64 / n,
            })
            .collect(),
    })
}

/// Number of pairs `a, b` inside some cataloged patch whose quotient `a⁻¹b`
/// is missing from the core difference set `Λ⁻¹Λ ∩ B_{2ρ}`.
pub fn patch_inclusion_violations(p: &PointSet, catalog: &PatchCatalog) -> Result<usize> {
    let diffs: HashSet<GroupElem> = difference_set(p, 2.0 * catalog.radius)?.into_iter().collect();
    let mut bad = 0;
    for (patch, _) in &catalog.patches {
        for a in patch.points() {
            for b in patch.points() {
                if !diffs.contains(&a.left_div(b)?) {
                    bad += 1;
                }
            }
        }
    }
    Ok(bad)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cutproject::{int_elem, integer_lattice};

    fn ints(v: &[i64]) -> Patch {
        Patch::new(v.iter().map(|&x| GroupElem::scalar(int_elem(x))).collect())
    }

    #[test]
    fn integer_catalog() {
        let z = integer_lattice(1, 1, 20.0).unwrap();
        let c = flc_patches(&z, 1.5).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c.patches[0].0, ints(&[-1, 0, 1]));
        let s = transversal_stats(&z, 1.5).unwrap();
        assert_eq!(s.catalog[0].frequency, 1.0);
    }

    #[test]
    fn rho_must_fit_twice_in_core() {
        let z = integer_lattice(1, 1, 10.0).unwrap();
        assert!(flc_patches(&z, 6.0).is_err());
    }

    #[test]
    fn patches_serialize_as_sorted_strings() {
        let p = ints(&[1, -1, 0]);
        assert_eq!(serde_json::to_string(&p).unwrap(), r#"["-1","0","1"]"#);
    }
}
