//! Finite sets `F ⊂ Γ` whose star images translate the open window over a
//! target box.

use std::collections::BTreeSet;

use num_bigint::BigInt;

use crate::algebra::{GroupElem, QuadInt};
use crate::cutproject::{Scheme, SchemeFamily, Window};
use crate::error::{Error, Result};

/// Strictness margin when comparing float endpoints of open intervals.
const COVER_MARGIN: f64 = 1e-12;
/// Range of `√d` coefficients searched when integers do not fit.
const RING_SEARCH: i64 = 64;
const MAX_TRANSLATES: usize = 100_000;

/// Returns `F ⊂ Γ` with `target ⊆ ⋃_{f∈F} (τ(f) + int W)`, checked before
/// returning. Rational integers (fixed by `τ`) are tried first at every step.
pub fn window_cover(scheme: &Scheme, target: &Window) -> Result<Vec<GroupElem>> {
    if target.dim() != scheme.window.dim() {
        return Err(Error::InvalidInput(format!(
            "target has dimension {}, window {}",
            target.dim(),
            scheme.window.dim()
        )));
    }
    let per_coord: Vec<Vec<QuadInt>> = match scheme.family {
        SchemeFamily::HeisQuadratic => {
            return Err(Error::InvalidInput(
                "window covers are only built for the additive families".into(),
            ))
        }
        _ => scheme
            .window
            .intervals()
            .iter()
            .zip(target.intervals())
            .map(|(&w, &t)| cover_line(scheme.d, w, t))
            .collect::<Result<_>>()?,
    };
    let f: Vec<GroupElem> = if per_coord.len() == 1 {
        per_coord[0].iter().cloned().map(GroupElem::scalar).collect()
    } else {
        let mut out = Vec::new();
        for x in &per_coord[0] {
            for y in &per_coord[1] {
                out.push(GroupElem::Euclid(vec![x.clone(), y.clone()]));
            }
        }
        out
    };
    if !verify_cover(scheme, target, &f) {
        return Err(Error::CoverNotFound {
            radius: RING_SEARCH as f64,
        });
    }
    Ok(f)
}

fn cover_line(d: u32, (lo, hi): (f64, f64), (t0, t1): (f64, f64)) -> Result<Vec<QuadInt>> {
    let zero = QuadInt::zero(d)?;
    if t0 > lo + COVER_MARGIN && t1 < hi - COVER_MARGIN {
        return Ok(vec![zero]);
    }
    let s = f64::from(d).sqrt();
    let mut p = t0;
    let mut out = Vec::new();
    while out.len() < MAX_TRANSLATES {
        // need c* in (p − hi, p − lo), as large as possible
        let upper = p - lo - COVER_MARGIN;
        let lower = p - hi + COVER_MARGIN;
        let n = upper.floor();
        let c = if n > lower {
            QuadInt::from_parts(BigInt::from(n as i64), BigInt::from(0), d)
        } else {
            let mut best: Option<(f64, QuadInt)> = None;
            for b in -RING_SEARCH..=RING_SEARCH {
                let a = (upper + b as f64 * s).floor();
                let x = QuadInt::from_parts(BigInt::from(a as i64), BigInt::from(b), d);
                let xc = x.conj_embedding();
                if xc > lower && xc < upper && best.as_ref().is_none_or(|(v, _)| xc > *v) {
                    best = Some((xc, x));
                }
            }
            match best {
                Some((_, x)) => x,
                None => {
                    return Err(Error::CoverNotFound {
                        radius: RING_SEARCH as f64,
                    })
                }
            }
        };
        p = c.conj_embedding() + hi;
        out.push(c);
        if p > t1 + COVER_MARGIN {
            return Ok(out);
        }
    }
    Err(Error::Budget {
        what: "window cover translates".into(),
        limit: MAX_TRANSLATES,
    })
}

/// Sweep test that the open intervals `(c + lo, c + hi)` cover `[t0, t1]`.
fn covers_line(centers: &[f64], (lo, hi): (f64, f64), (t0, t1): (f64, f64)) -> bool {
    let mut cur = t0;
    loop {
        let reach = centers
            .iter()
            .filter(|&&c| c + lo < cur - COVER_MARGIN && c + hi > cur + COVER_MARGIN)
            .map(|&c| c + hi)
            .fold(f64::NEG_INFINITY, f64::max);
        if reach == f64::NEG_INFINITY {
            return false;
        }
        if reach > t1 + COVER_MARGIN {
            return true;
        }
        cur = reach;
    }
}

/// Checks `target ⊆ ⋃_{f∈F} (τ(f) + int W)`.
///
/// In the plane the check is sufficient only: `F` must be a full product of
/// its coordinate projections and each projection must cover.
pub fn verify_cover(scheme: &Scheme, target: &Window, f: &[GroupElem]) -> bool {
    if target.dim() != scheme.window.dim() || f.is_empty() {
        return false;
    }
    let mut projections: Vec<BTreeSet<QuadInt>> = vec![BTreeSet::new(); target.dim()];
    for g in f {
        match g {
            GroupElem::Euclid(v) if v.len() == target.dim() && v.iter().all(|x| x.d() == scheme.d) => {
                for (set, x) in projections.iter_mut().zip(v) {
                    set.insert(x.clone());
                }
            }
            _ => return false,
        }
    }
    let product: usize = projections.iter().map(BTreeSet::len).product();
    let distinct: BTreeSet<&GroupElem> = f.iter().collect();
    if product != distinct.len() {
        return false;
    }
    projections
        .iter()
        .zip(scheme.window.intervals().iter().zip(target.intervals()))
        .all(|(set, (&w, &t))| {
            let centers: Vec<f64> = set.iter().map(QuadInt::conj_embedding).collect();
            covers_line(&centers, w, t)
        })
}
