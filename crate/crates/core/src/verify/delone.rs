use serde::{Deserialize, Serialize};

use crate::algebra::GroupElem;
use crate::cutproject::{Geometry, PointSet};
use crate::error::{Error, Result};
use crate::index::NeighborIndex;
use crate::verify::is_line;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DeloneReport {
    /// Minimum distance between two distinct core points.
    pub packing_radius: f64,
    pub covering_radius: f64,
    /// Grid step of the covering estimate; 0 when exact (the real line).
    pub covering_resolution: f64,
    pub core_radius: f64,
    pub core_points: usize,
}

pub fn delone_parameters(p: &PointSet) -> Result<DeloneReport> {
    delone_parameters_with(p, None)
}

/// As [`delone_parameters`] with an explicit sampling step for the covering
/// radius in dimension ≥ 2.
pub fn delone_parameters_with(p: &PointSet, resolution: Option<f64>) -> Result<DeloneReport> {
    let core = p.core_points();
    if core.len() < 2 {
        return Err(Error::EmptyCore(format!(
            "{} core points within radius {}",
            core.len(),
            p.core_radius()
        )));
    }
    let packing = packing_radius(p)?;
    let (covering, h) = covering_radius(p, p.core_radius(), resolution)?;
    Ok(DeloneReport {
        packing_radius: packing,
        covering_radius: covering,
        covering_resolution: h,
        core_radius: p.core_radius(),
        core_points: core.len(),
    })
}

/// Minimum distance between two distinct core points.
pub fn packing_radius(p: &PointSet) -> Result<f64> {
    let core = p.core_points();
    Ok(if is_line(p) {
        let sorted = sorted_line(&core);
        sorted
            .windows(2)
            .map(|w| w[0].dist(w[1]))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .fold(f64::INFINITY, f64::min)
    } else {
        let idx = NeighborIndex::auto(p)?;
        let core_r = p.core_radius();
        let in_core: Vec<bool> = p
            .points()
            .iter()
            .map(|g| g.norm().map(|n| n <= core_r))
            .collect::<Result<_>>()?;
        let mut best = f64::INFINITY;
        for i in (0..p.len()).filter(|&i| in_core[i]) {
            let q = idx.coords(i).to_vec();
            let mut r = crate::index::auto_cell(p);
            loop {
                let hit = idx
                    .within(&q, r.min(best))
                    .into_iter()
                    .find(|&(j, _)| j != i && in_core[j]);
                if let Some((j, _)) = hit {
                    best = best.min(p.points()[i].dist(&p.points()[j])?);
                    break;
                }
                if r >= best || r > 4.0 * core_r + 1.0 {
                    break;
                }
                r *= 2.0;
            }
        }
        best
    })
}

fn sorted_line<'a>(pts: &[&'a GroupElem]) -> Vec<&'a GroupElem> {
    let mut v = pts.to_vec();
    v.sort_by(|a, b| match (a, b) {
        (GroupElem::Euclid(x), GroupElem::Euclid(y)) => x[0].cmp_real(&y[0]),
        _ => std::cmp::Ordering::Equal,
    });
    v
}


/// Covering radius of `p` over the ball of radius `radius`.
///
/// On the line this is the exact largest half-gap between consecutive points
/// within the ball. Otherwise it is the largest distance from a grid sample of
/// step `h` to the set; samples whose nearest point could lie outside the
/// enumerated region are skipped. Returns `(R, h)`.
pub fn covering_radius(p: &PointSet, radius: f64, resolution: Option<f64>) -> Result<(f64, f64)> {
    if radius > p.enum_radius() {
        return Err(Error::InsufficientCore {
            needed: radius,
            available: p.enum_radius(),
        });
    }
    let within = p.points_within(radius);
    if within.len() < 2 {
        return Err(Error::EmptyCore(format!(
            "fewer than two points within radius {radius}"
        )));
    }
    let geometry = p.geometry();
    if is_line(p) {
        let sorted = sorted_line(&within);
        let mut half = 0.0f64;
        for w in sorted.windows(2) {
            half = half.max(w[0].dist(w[1])? / 2.0);
        }
        return Ok((half, 0.0));
    }
    let h = resolution.unwrap_or_else(|| match geometry {
        Geometry::Heis => (radius / 12.0).max(0.05),
        _ => (radius / 150.0).max(0.05),
    });
    if !(h > 0.0) {
        return Err(Error::InvalidInput(format!("resolution must be positive, got {h}")));
    }
    let idx = NeighborIndex::auto(p)?;
    let steps = (radius / h).floor() as i64;
    let enum_r = p.enum_radius();
    let mut worst = 0.0f64;
    let mut probe = |q: &[f64], qn: f64| {
        if let Some((_, d)) = idx.nearest(q) {
            // a point beyond the enumeration is at least shrink(E, |q|) away
            if d <= geometry.shrink(enum_r, qn) {
                worst = worst.max(d);
            }
        }
    };
    match geometry {
        Geometry::Euclid(2) => {
            for i in -steps..=steps {
                for j in -steps..=steps {
                    let q = [i as f64 * h, j as f64 * h];
                    let qn = (q[0] * q[0] + q[1] * q[1]).sqrt();
                    if qn <= radius {
                        probe(&q, qn);
                    }
                }
            }
        }
        Geometry::Heis => {
            for i in -steps..=steps {
                for j in -steps..=steps {
                    for k in -steps..=steps {
                        let (u, v, w) = (i as f64 * h, j as f64 * h, k as f64 * h);
                        let q = [u, v, w + u * v / 2.0];
                        probe(&q, u.abs().max(v.abs()).max(w.abs()));
                    }
                }
            }
        }
        g => {
            return Err(Error::InvalidInput(format!(
                "covering radius not implemented for {g:?}"
            )))
        }
    }
    Ok((worst, h))
}
