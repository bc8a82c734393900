//! Axiom and finiteness checks on finite point-set fragments.
//!
//! Every claim is quantified over a core radius inside which the fragment,
//! and any product or patch derived from it, is provably complete.

mod ag3;
mod chain;
mod delone;
mod generating;
mod power;
mod reldense;

pub use ag3::{find_ag3_witness, reverify_ag3, Ag3Witness};
pub use chain::{
    difference_set, discreteness_chain, local_finiteness_profile, packing_count_bound,
    uniform_discreteness_check, ChainReport, LocalFiniteness,
};
pub use delone::{
    covering_radius, delone_parameters, delone_parameters_with, packing_radius, DeloneReport,
};
pub use generating::{generating_check, square_generators, GeneratingReport, BFS_BUDGET};
pub(crate) use generating::{bfs_distances, envelope_filter};
pub use power::power_set;
pub use reldense::{rel_dense_subset_check, RelDenseReport};

use crate::algebra::GroupElem;
use crate::cutproject::{Geometry, PointSet};
use crate::error::{Error, Result};

/// Largest `c ∈ [0, hi]` with `ok(c)`, for a monotone predicate.
pub(crate) fn largest_radius(hi: f64, ok: impl Fn(f64) -> bool) -> f64 {
    if ok(hi) {
        return hi;
    }
    let (mut lo, mut up) = (0.0, hi);
    for _ in 0..100 {
        let mid = 0.5 * (lo + up);
        if ok(mid) {
            lo = mid;
        } else {
            up = mid;
        }
    }
    lo
}

/// Internal coordinates in the form the window constrains: conjugates for
/// the additive families, symmetric conjugate coordinates for Heisenberg.
pub(crate) fn window_coords(g: &GroupElem) -> Result<Vec<f64>> {
    match g {
        GroupElem::Heis(h) => Ok(vec![
            h.x.conj_embedding(),
            h.y.conj_embedding(),
            h.central_symmetric_doubled().conj_embedding() / 2.0,
        ]),
        _ => g.internal(),
    }
}

/// Inverse-closure only; sets such as the visible points are symmetric but
/// miss the identity.
pub(crate) fn require_inverse_closed(p: &PointSet) -> Result<()> {
    for g in p.points() {
        if !p.contains(&g.inverse()?) {
            return Err(Error::InvalidInput(format!(
                "{} is not symmetric: {g} has no inverse in the set",
                p.provenance().family_tag()
            )));
        }
    }
    Ok(())
}

/// `true` for sets on the real line (one Euclidean coordinate).
pub(crate) fn is_line(p: &PointSet) -> bool {
    p.geometry() == Geometry::Euclid(1)
}
