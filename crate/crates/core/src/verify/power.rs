use std::collections::HashSet;

use crate::algebra::GroupElem;
use crate::cutproject::{PointSet, Provenance};
use crate::error::{Error, Result};

/// Cap on the number of distinct partial products kept per stage.
const POWER_BUDGET: usize = 5_000_000;

/// Bounded-factor power `P · (P ∩ B_g)^{k−1}`, complete on the returned core.
///
/// Every product `x f_2 ⋯ f_k` with `x ∈ P`, `f_i ∈ P`, `‖f_i‖ ≤ g` whose norm
/// is at most the new core radius is listed. The core shrinks once per extra
/// factor through [`Geometry::shrink`](crate::cutproject::Geometry::shrink),
/// and partial products that can no longer land inside it are pruned.
pub fn power_set(p: &PointSet, k: usize, factor_radius: f64) -> Result<PointSet> {
    if k == 0 {
        return Err(Error::InvalidInput("power k must be >= 1".into()));
    }
    if k == 1 {
        return Ok(p.clone());
    }
    if !(factor_radius > 0.0) || factor_radius > p.core_radius() {
        return Err(Error::InsufficientCore {
            needed: factor_radius,
            available: p.core_radius(),
        });
    }
    let geometry = p.geometry();
    let mut core = p.core_radius();
    for _ in 1..k {
        core = geometry.shrink(core, factor_radius);
    }
    if !(core > 0.0) {
        return Err(Error::EmptyCore(format!(
            "core of the {k}-fold power with factor radius {factor_radius} is empty"
        )));
    }
    // bounds[j]: largest norm a product of j + 1 factors may have and still
    // reach the final core
    let mut bounds = vec![core; k];
    for j in (0..k - 1).rev() {
        bounds[j] = geometry.product_bound(bounds[j + 1], factor_radius);
    }
    bounds[0] = bounds[0].min(p.enum_radius());

    let factors: Vec<&GroupElem> = p.points_within(factor_radius);
    let mut current: Vec<GroupElem> = p.points_within(bounds[0]).into_iter().cloned().collect();
    for bound in bounds.iter().skip(1) {
        let mut next: HashSet<GroupElem> = HashSet::new();
        for x in &current {
            for f in &factors {
                let y = x.mul(f)?;
                if y.norm()? <= *bound {
                    next.insert(y);
                }
            }
            if next.len() > POWER_BUDGET {
                return Err(Error::Budget {
                    what: "power-set partial products".into(),
                    limit: POWER_BUDGET,
                });
            }
        }
        current = next.into_iter().collect();
    }
    PointSet::new(
        Provenance::Power {
            base: Box::new(p.provenance().clone()),
            k,
            factor_radius,
        },
        p.d(),
        current,
        core,
        core,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cutproject::{enumerate, integer_lattice, Scheme, Window};

    #[test]
    fn k_one_is_identity() {
        let z = integer_lattice(1, 1, 10.0).unwrap();
        assert_eq!(power_set(&z, 1, 3.0).unwrap(), z);
    }

    #[test]
    fn integers_are_closed() {
        let z = integer_lattice(1, 1, 30.0).unwrap();
        let z3 = power_set(&z, 3, 2.0).unwrap();
        assert_eq!(z3.core_radius(), 26.0);
        assert_eq!(z3.len(), 53);
    }

    #[test]
    fn sumset_lands_in_doubled_window() {
        let s = Scheme::sqrt2_line(5.0).unwrap();
        let p = enumerate(&s, 40.0).unwrap();
        let p2 = power_set(&p, 2, 10.0).unwrap();
        let big = enumerate(&s.with_window(Window::symmetric(10.0, 1).unwrap()).unwrap(), 40.0)
            .unwrap();
        assert!(p2.is_subset_of(&big));
        assert!(p.restrict(p2.core_radius()).unwrap().is_subset_of(&p2));
    }
}
