use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::algebra::GroupElem;
use crate::cutproject::{PointSet, Provenance};
use crate::error::{Error, Result};
use crate::verify::window_coords;

/// Default cap on BFS states.
pub const BFS_BUDGET: usize = 4_000_000;

/// `{xy : x, y ∈ P, ‖x‖, ‖y‖ ≤ K, ‖xy‖ ≤ K}` in canonical order.
pub fn square_generators(p: &PointSet, kradius: f64) -> Result<Vec<GroupElem>> {
    if kradius > p.core_radius() {
        return Err(Error::InsufficientCore {
            needed: kradius,
            available: p.core_radius(),
        });
    }
    let small = p.points_within(kradius);
    let mut out = BTreeSet::new();
    for x in &small {
        for y in &small {
            let z = x.mul(y)?;
            if z.norm()? <= kradius {
                out.insert(z);
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// Word lengths from `start` under right multiplication by `gens`, over the
/// states accepted by `keep`, up to `max_len` steps and `budget` states.
pub(crate) fn bfs_distances(
    start: &GroupElem,
    gens: &[GroupElem],
    max_len: usize,
    budget: usize,
    keep: impl Fn(&GroupElem) -> Result<bool>,
) -> Result<HashMap<GroupElem, usize>> {
    let mut dist = HashMap::new();
    dist.insert(start.clone(), 0usize);
    let mut queue = VecDeque::from([start.clone()]);
    while let Some(g) = queue.pop_front() {
        let dg = dist[&g];
        if dg >= max_len {
            continue;
        }
        for s in gens {
            let h = g.mul(s)?;
            if dist.contains_key(&h) || !keep(&h)? {
                continue;
            }
            dist.insert(h.clone(), dg + 1);
            queue.push_back(h);
            if dist.len() > budget {
                return Err(Error::Budget {
                    what: "word-metric BFS states".into(),
                    limit: budget,
                });
            }
        }
    }
    Ok(dist)
}

/// State filter used when exploring `⟨F⟩`: physical norm at most `radius`
/// and, for model sets, internal coordinates in the window scaled by 3.
pub(crate) fn envelope_filter(
    p: &PointSet,
    radius: f64,
) -> impl Fn(&GroupElem) -> Result<bool> + '_ {
    let window = base_window(p.provenance()).map(|w| w.scaled(3.0));
    move |g: &GroupElem| {
        if g.norm()? > radius {
            return Ok(false);
        }
        Ok(match &window {
            Some(w) => w.contains(&window_coords(g)?),
            None => true,
        })
    }
}

fn base_window(p: &Provenance) -> Option<crate::cutproject::Window> {
    match p {
        Provenance::ModelSet { window, .. } => Some(window.clone()),
        Provenance::Power { base, .. } => base_window(base),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GeneratingReport {
    pub kradius: f64,
    pub test_radius: f64,
    pub generators: Vec<String>,
    pub max_word_length: usize,
    pub reached: usize,
    pub targets: usize,
}

/// Checks that `F = Λ² ∩ B_K(e)` (with factors of norm at most `K`) reaches
/// every point of `Λ` in `B_test(e)` by words staying inside `B_{test+2K}`.
pub fn generating_check(p: &PointSet, kradius: f64, test_radius: f64) -> Result<GeneratingReport> {
    if test_radius > p.core_radius() {
        return Err(Error::InsufficientCore {
            needed: test_radius,
            available: p.core_radius(),
        });
    }
    let gens = square_generators(p, kradius)?;
    let e = p.identity()?;
    let dist = bfs_distances(&e, &gens, usize::MAX, BFS_BUDGET, envelope_filter(p, test_radius + 2.0 * kradius))?;
    let targets = p.points_within(test_radius);
    let mut max_len = 0;
    for t in &targets {
        match dist.get(*t) {
            Some(&l) => max_len = max_len.max(l),
            None => {
                return Err(Error::Unreachable {
                    point: t.to_string(),
                    max_len: dist.values().copied().max().unwrap_or(0),
                })
            }
        }
    }
    Ok(GeneratingReport {
        kradius,
        test_radius,
        generators: gens.iter().map(ToString::to_string).collect(),
        max_word_length: max_len,
        reached: targets.len(),
        targets: targets.len(),
    })
}
