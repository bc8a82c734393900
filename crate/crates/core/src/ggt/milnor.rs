use serde::{Deserialize, Serialize};

use crate::algebra::GroupElem;
use crate::cutproject::PointSet;
use crate::error::{Error, Result};
use crate::verify::{bfs_distances, envelope_filter};

/// `ρ(n)`: the least `m` with `K^n ∩ Λ ⊂ F^m`, with a least-squares line.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RhoTable {
    pub kradius: f64,
    pub pairs: Vec<(usize, usize)>,
    pub slope: f64,
    pub intercept: f64,
    /// `max_n |ρ(n) − (slope·n + intercept)|`.
    pub max_residual: f64,
    /// Smallest `D` with `ρ(n) ≤ slope·n + D` for every tabulated `n`.
    pub dominating_intercept: f64,
}

impl RhoTable {
    pub fn is_monotone(&self) -> bool {
        self.pairs.windows(2).all(|w| w[0].1 <= w[1].1)
    }

    /// Plot-ready `n,rho` rows.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("n,rho\n");
        for (n, r) in &self.pairs {
            s.push_str(&format!("{n},{r}\n"));
        }
        s
    }
}

/// Word lengths over `F` of the points of `Λ` in `B_{nK}(e)` for `n ≤ n_max`.
///
/// The BFS stays inside `B_{n_max·K + 2K}` and, for model sets, inside the
/// window scaled by 3; a point it cannot reach is reported as unreachable.
pub fn ms_rho(
    p: &PointSet,
    kradius: f64,
    f: &[GroupElem],
    n_max: usize,
    budget: usize,
) -> Result<RhoTable> {
    let top = n_max as f64 * kradius;
    if top > p.core_radius() {
        return Err(Error::InsufficientCore {
            needed: top,
            available: p.core_radius(),
        });
    }
    let e = p.identity()?;
    let dist = bfs_distances(&e, f, usize::MAX, budget, envelope_filter(p, top + 2.0 * kradius))?;
    let mut pairs = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let r = n as f64 * kradius;
        let mut rho = 0;
        for x in p.points_within(r) {
            match dist.get(x) {
                Some(&l) => rho = rho.max(l),
                None if n == 0 && x.is_identity() => {}
                None => {
                    return Err(Error::Unreachable {
                        point: x.to_string(),
                        max_len: dist.values().copied().max().unwrap_or(0),
                    })
                }
            }
        }
        pairs.push((n, rho));
    }
    let (slope, intercept) = fit_line(&pairs);
    let mut max_residual = 0.0f64;
    let mut excess = f64::NEG_INFINITY;
    for &(n, r) in &pairs {
        let d = r as f64 - (slope * n as f64 + intercept);
        max_residual = max_residual.max(d.abs());
        excess = excess.max(d);
    }
    Ok(RhoTable {
        kradius,
        pairs,
        slope,
        intercept,
        max_residual,
        dominating_intercept: intercept + excess.max(0.0),
    })
}

fn fit_line(pairs: &[(usize, usize)]) -> (f64, f64) {
    let m = pairs.len() as f64;
    if pairs.len() < 2 {
        return (0.0, pairs.first().map_or(0.0, |p| p.1 as f64));
    }
    let sx: f64 = pairs.iter().map(|p| p.0 as f64).sum();
    let sy: f64 = pairs.iter().map(|p| p.1 as f64).sum();
    let sxx: f64 = pairs.iter().map(|p| (p.0 as f64).powi(2)).sum();
    let sxy: f64 = pairs.iter().map(|p| p.0 as f64 * p.1 as f64).sum();
    let slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    (slope, (sy - slope * sx) / m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cutproject::{int_elem, integer_lattice};

    #[test]
    fn integers_grow_linearly() {
        let z = integer_lattice(1, 1, 60.0).unwrap();
        let f: Vec<GroupElem> = [-1, 0, 1].iter().map(|&x| GroupElem::scalar(int_elem(x))).collect();
        let t = ms_rho(&z, 2.0, &f, 10, 1 << 20).unwrap();
        for &(n, r) in &t.pairs {
            assert_eq!(r, 2 * n);
        }
        assert!((t.slope - 2.0).abs() < 1e-12 && t.max_residual < 1e-9);
    }
}
