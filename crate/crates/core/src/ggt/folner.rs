use serde::{Deserialize, Serialize};

use crate::cutproject::PointSet;
use crate::error::{Error, Result};
use crate::index::NeighborIndex;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FolnerRow {
    pub radius: f64,
    pub size: usize,
    pub boundary: usize,
    pub ratio: f64,
}

/// For `F = Λ ∩ B_N(e)`, the `R`-boundary `{x ∈ Λ : d(x, F) < R and
/// d(x, Λ ∖ F) < R}` and its size relative to `|F|`, for each window radius `N`.
pub fn folner_report(p: &PointSet, r: f64, window_radii: &[f64]) -> Result<Vec<FolnerRow>> {
    if !(r > 0.0) {
        return Err(Error::InvalidInput(format!("R must be positive, got {r}")));
    }
    let geometry = p.geometry();
    let idx = NeighborIndex::auto(p)?;
    let norms = p
        .points()
        .iter()
        .map(|g| g.norm())
        .collect::<Result<Vec<_>>>()?;
    let mut rows = Vec::with_capacity(window_radii.len());
    for &n in window_radii {
        let needed = geometry.product_bound(geometry.product_bound(n, r), r);
        if needed > p.core_radius() {
            return Err(Error::InsufficientCore {
                needed,
                available: p.core_radius(),
            });
        }
        let reach = geometry.product_bound(n, r);
        let mut size = 0;
        let mut boundary = 0;
        for (i, &xn) in norms.iter().enumerate() {
            if xn > reach {
                continue;
            }
            let inside = xn <= n;
            size += usize::from(inside);
            let crosses = idx
                .within_open(idx.coords(i), r)
                .iter()
                .any(|&(j, _)| (norms[j] <= n) != inside);
            boundary += usize::from(crosses);
        }
        rows.push(FolnerRow {
            radius: n,
            size,
            boundary,
            ratio: if size == 0 { f64::INFINITY } else { boundary as f64 / size as f64 },
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cutproject::{fish_set, integer_lattice};

    #[test]
    fn integer_intervals() {
        let z = integer_lattice(1, 1, 100.0).unwrap();
        for row in folner_report(&z, 1.5, &[5.0, 10.0, 40.0]).unwrap() {
            let n = row.radius;
            assert_eq!(row.boundary, 4);
            assert!((row.ratio - 4.0 / (2.0 * n + 1.0)).abs() < 1e-12);
        }
    }

    #[test]
    fn fish_ratios_decrease() {
        let f = fish_set(12).unwrap();
        let rows = folner_report(&f, 3.5, &[20.0, 40.0, 80.0, 160.0]).unwrap();
        assert!(rows.windows(2).all(|w| w[1].ratio < w[0].ratio));
    }

    #[test]
    fn small_r_has_empty_boundary() {
        let z = integer_lattice(1, 1, 50.0).unwrap();
        let rows = folner_report(&z, 0.9, &[10.0]).unwrap();
        assert_eq!(rows[0].boundary, 0);
    }
}
