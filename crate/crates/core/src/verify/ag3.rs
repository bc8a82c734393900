use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::algebra::GroupElem;
use crate::cutproject::{int_elem, invisible_ball_center, Geometry, PointSet, Provenance};
use crate::error::{Ag3Failure, Ag3FailureKind, Error, Result};
use crate::index::NeighborIndex;
use crate::verify::{largest_radius, require_inverse_closed};

/// Finite `F` with `xy ∈ F·Λ` for all core pairs `x, y`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Ag3Witness {
    #[serde(skip)]
    pub f: Vec<GroupElem>,
    /// Display form of `F`, for reports.
    pub f_display: Vec<String>,
    /// Pairs with both factors of norm at most this radius were verified.
    pub verified_core_radius: f64,
    /// `max_{f∈F} ‖f‖`.
    pub max_norm: f64,
    /// Radius of the ball `F` was allowed to come from.
    pub ball_radius: f64,
    pub products_checked: usize,
}

impl Ag3Witness {
    pub fn delta(&self) -> f64 {
        self.max_norm
    }
}

fn norm_of(g: &GroupElem) -> Result<f64> {
    g.norm()
}

/// Largest `c` such that factors `f` with `‖f‖ ≤ b` and products of two
/// points of norm `≤ c` only involve points of norm `≤ enum`.
fn verified_radius(geometry: Geometry, enum_r: f64, core_r: f64, b: f64) -> f64 {
    largest_radius(core_r, |c| {
        let z = geometry.product_bound(c, c);
        geometry.product_bound(b, z) <= enum_r
    })
}

/// Builds an AG3 witness `F ⊂ Λ³ ∩ B_{R+slack}(e)` from the products that are
/// actually needed, then re-verifies it with an independent exhaustive pass.
///
/// `R` should be at least the covering radius; `slack` defaults to `R`. For
/// each distinct product `z = xy` of core points the witness uses
/// `f = zλ⁻¹` for the `λ ∈ Λ` minimising `‖zλ⁻¹‖`. For visible points the
/// exact global predicate is probed first: it yields a sum of two visible
/// points farther than the witness ball from every visible point.
pub fn find_ag3_witness(p: &PointSet, r: f64, slack: Option<f64>) -> Result<Ag3Witness> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::InvalidInput(format!("R must be positive, got {r}")));
    }
    require_inverse_closed(p)?;
    let slack = slack.unwrap_or(r);
    let ball = r + slack;
    let geometry = p.geometry();
    let c = verified_radius(geometry, p.enum_radius(), p.core_radius(), ball);
    if c <= 0.0 {
        return Err(Error::InsufficientCore {
            needed: geometry.product_bound(ball, 0.0),
            available: p.enum_radius(),
        });
    }
    if matches!(p.provenance(), Provenance::Visible { .. }) {
        global_visible_probe(ball)?;
    }
    let core: Vec<&GroupElem> = p.points_within(c);
    let mut products: BTreeSet<GroupElem> = BTreeSet::new();
    let mut first_pair: std::collections::HashMap<GroupElem, (usize, usize)> = Default::default();
    for (i, x) in core.iter().enumerate() {
        for (j, y) in core.iter().enumerate() {
            let z = x.mul(y)?;
            if products.insert(z.clone()) {
                first_pair.insert(z, (i, j));
            }
        }
    }
    let idx = NeighborIndex::auto(p)?;
    let mut f_set: BTreeSet<GroupElem> = BTreeSet::new();
    for z in &products {
        // ‖zλ⁻¹‖ = d(λ⁻¹, z⁻¹) and Λ is symmetric, so search near z⁻¹
        let zinv = z.inverse()?;
        let hit = idx.nearest(&zinv.physical()?);
        let ok = match hit {
            Some((m, _)) => {
                let lam = p.points()[m].inverse()?;
                let f = z.mul(&lam.inverse()?)?;
                if norm_of(&f)? <= ball {
                    f_set.insert(f);
                    true
                } else {
                    false
                }
            }
            None => false,
        };
        if !ok {
            let (i, j) = first_pair[z];
            let near_edge = geometry.product_bound(ball, norm_of(z)?) > p.enum_radius();
            return Err(Error::Ag3Failed(Box::new(Ag3Failure {
                kind: if near_edge {
                    Ag3FailureKind::BoundaryProximity
                } else {
                    Ag3FailureKind::Structural
                },
                pair: (core[i].to_string(), core[j].to_string()),
                product: z.to_string(),
                witness_radius: ball,
                detail: "no point of the set within the witness radius of the product".into(),
            })));
        }
    }
    let f: Vec<GroupElem> = f_set.into_iter().collect();
    let max_norm = f
        .iter()
        .map(norm_of)
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    let mut w = Ag3Witness {
        f_display: f.iter().map(ToString::to_string).collect(),
        f,
        verified_core_radius: c,
        max_norm,
        ball_radius: ball,
        products_checked: 0,
    };
    w.products_checked = reverify_ag3(p, &w)?;
    Ok(w)
}


/// Independent exhaustive check: every product of two points of norm at most
/// the verified radius is `f·λ` for some `f ∈ F` and listed `λ`. Returns the
/// number of distinct products checked.
pub fn reverify_ag3(p: &PointSet, w: &Ag3Witness) -> Result<usize> {
    let geometry = p.geometry();
    let c = w.verified_core_radius;
    if geometry.product_bound(w.max_norm, geometry.product_bound(c, c)) > p.enum_radius() + 1e-9 {
        return Err(Error::InsufficientCore {
            needed: geometry.product_bound(w.max_norm, geometry.product_bound(c, c)),
            available: p.enum_radius(),
        });
    }
    let f_inv: Vec<GroupElem> = w
        .f
        .iter()
        .map(GroupElem::inverse)
        .collect::<Result<_>>()?;
    let core = p.points_within(c);
    let mut seen: HashSet<GroupElem> = HashSet::new();
    for x in &core {
        for y in &core {
            let z = x.mul(y)?;
            if !seen.insert(z.clone()) {
                continue;
            }
            let mut found = false;
            for fi in &f_inv {
                if p.contains(&fi.mul(&z)?) {
                    found = true;
                    break;
                }
            }
            if !found {
                return Err(Error::Ag3Failed(Box::new(Ag3Failure {
                    kind: Ag3FailureKind::Structural,
                    pair: (x.to_string(), y.to_string()),
                    product: z.to_string(),
                    witness_radius: w.max_norm,
                    detail: "re-verification found no factor f with f⁻¹xy in the set".into(),
                })));
            }
        }
    }
    Ok(seen.len())
}

/// Visible points admit sums `u + v` at distance `> ρ` from every visible
/// point for every `ρ`; one with `ρ` beyond the witness ball refutes AG3.
fn global_visible_probe(ball: f64) -> Result<()> {
    let rho = ball.floor() + 1.0;
    let hole = invisible_ball_center(rho)?;
    let pt = |x: &num_bigint::BigInt, y: &num_bigint::BigInt| {
        GroupElem::Euclid(vec![int_elem(x.clone()), int_elem(y.clone())])
    };
    let ((ux, uy), (vx, vy)) = &hole.summands;
    Err(Error::Ag3Failed(Box::new(Ag3Failure {
        kind: Ag3FailureKind::Structural,
        pair: (pt(ux, uy).to_string(), pt(vx, vy).to_string()),
        product: pt(&hole.center.0, &hole.center.1).to_string(),
        witness_radius: ball,
        detail: format!(
            "both factors are visible, yet every lattice point within distance {rho} of their \
             sum is invisible (each offset is divisible by its own prime), so the sum is not in \
             F + V for any F inside the ball of radius {ball}"
        ),
    })))
}
