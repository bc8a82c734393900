use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::GroupElem;
use crate::cutproject::PointSet;
use crate::error::{Error, Result};
use crate::index::NeighborIndex;
use crate::verify::Ag3Witness;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Retraction {
    #[serde(skip)]
    pub point: GroupElem,
    pub point_display: String,
    pub distance: f64,
    /// `kδ` for an input from `Λ^k`.
    pub bound: f64,
}

impl Retraction {
    pub fn within_bound(&self) -> bool {
        self.distance <= self.bound + 1e-9
    }
}

/// The left-regular quasi-action `λ_g(x) = p(gx)` of `Λ^∞` on `Λ`, where `p`
/// is nearest-point retraction onto `Λ`.
pub struct QuasiAction<'a> {
    p: &'a PointSet,
    idx: NeighborIndex,
    delta: f64,
}

impl<'a> QuasiAction<'a> {
    /// `δ = max_{f ∈ F} ‖f‖` from the stored witness.
    pub fn new(p: &'a PointSet, witness: &Ag3Witness) -> Result<Self> {
        Ok(QuasiAction {
            p,
            idx: NeighborIndex::auto(p)?,
            delta: witness.max_norm,
        })
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// Nearest point of `Λ` to `x ∈ Λ^k`; ties go to the canonically smaller
    /// point and points of `Λ` map to themselves.
    pub fn retract(&self, x: &GroupElem, k: usize) -> Result<Retraction> {
        let bound = k as f64 * self.delta;
        let geometry = self.p.geometry();
        let needed = geometry.product_bound(x.norm()?, bound);
        if needed > self.p.core_radius() {
            return Err(Error::InsufficientCore {
                needed,
                available: self.p.core_radius(),
            });
        }
        let (point, distance) = if self.p.contains(x) {
            (x.clone(), 0.0)
        } else {
            let (i, _) = self
                .idx
                .nearest(&x.physical()?)
                .ok_or_else(|| Error::EmptyCore("retraction onto an empty set".into()))?;
            let q = self.p.points()[i].clone();
            let d = x.dist(&q)?;
            (q, d)
        };
        Ok(Retraction {
            point_display: point.to_string(),
            point,
            distance,
            bound,
        })
    }

    /// `λ_g(x)` for `g ∈ Λ^k`, `x ∈ Λ`.
    pub fn apply(&self, g: &GroupElem, k: usize, x: &GroupElem) -> Result<Retraction> {
        self.retract(&g.mul(x)?, k + 1)
    }

    /// `d(λ_{gh}(x), λ_g(λ_h(x)))` for `g ∈ Λ^k`, `h ∈ Λ^l`.
    pub fn defect(
        &self,
        g: &GroupElem,
        k: usize,
        h: &GroupElem,
        l: usize,
        x: &GroupElem,
    ) -> Result<f64> {
        let lhs = self.apply(&g.mul(h)?, k + l, x)?;
        let inner = self.apply(h, l, x)?;
        let rhs = self.apply(g, k, &inner.point)?;
        lhs.point.dist(&rhs.point)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DefectReport {
    pub samples: usize,
    pub k: usize,
    pub l: usize,
    pub delta: f64,
    /// `4(k + l)δ`.
    pub bound: f64,
    pub max_defect: f64,
    pub violations: usize,
    /// Retractions whose distance exceeded their `kδ` bound.
    pub retraction_overruns: usize,
}

/// Samples `g ∈ Λ^k`, `h ∈ Λ^l` as products of points of norm at most
/// `sample_radius`, and `x ∈ Λ` of the same size, and measures the defect.
pub fn quasi_action_defects(
    p: &PointSet,
    witness: &Ag3Witness,
    k: usize,
    l: usize,
    samples: usize,
    sample_radius: f64,
    seed: u64,
) -> Result<DefectReport> {
    if k == 0 || l == 0 {
        return Err(Error::InvalidInput("k and l must be at least 1".into()));
    }
    let qa = QuasiAction::new(p, witness)?;
    let pool: Vec<&GroupElem> = p.points_within(sample_radius);
    if pool.is_empty() {
        return Err(Error::EmptyCore(format!("no points within {sample_radius}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let word = |len: usize, rng: &mut ChaCha8Rng| -> Result<GroupElem> {
        let mut g = (*pool.choose(rng).expect("nonempty pool")).clone();
        for _ in 1..len {
            g = g.mul(pool.choose(rng).expect("nonempty pool"))?;
        }
        Ok(g)
    };
    let bound = 4.0 * (k + l) as f64 * qa.delta();
    let mut report = DefectReport {
        samples,
        k,
        l,
        delta: qa.delta(),
        bound,
        max_defect: 0.0,
        violations: 0,
        retraction_overruns: 0,
    };
    for _ in 0..samples {
        let g = word(k, &mut rng)?;
        let h = word(l, &mut rng)?;
        let x = word(1, &mut rng)?;
        let d = qa.defect(&g, k, &h, l, &x)?;
        for (elem, kk) in [(&g, k), (&h, l)] {
            if !qa.apply(elem, kk, &x)?.within_bound() {
                report.retraction_overruns += 1;
            }
        }
        report.max_defect = report.max_defect.max(d);
        if d > bound + 1e-9 {
            report.violations += 1;
        }
    }
    Ok(report)
}
