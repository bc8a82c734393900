//! Cut-and-project schemes over real quadratic rings and the other explicit
//! point sets of the laboratory.

mod cover;
mod enumerate;
pub mod exact;
mod fish;
mod pointset;
mod visible;

use serde::{Deserialize, Serialize};

pub use cover::{verify_cover, window_cover};
pub use enumerate::{enumerate, star_map, star_map_exact, ENUMERATION_BUDGET};
pub use fish::{fish_block_spans, fish_gaps, fish_set, BlockKind, BlockSpan};
pub use pointset::{
    explicit_integers, int_elem, integer_lattice, is_visible, Geometry, PointSet, Provenance,
    INTEGER_RING,
};
pub use visible::{
    invisible_ball_center, pair_sum_coverage, visible_points, InvisibleHole, PairSumCoverage,
};

use crate::algebra::is_squarefree;
use crate::error::{Error, Result};

/// A closed coordinate box in the internal space.
///
/// For the Heisenberg family the three intervals bound the symmetric
/// coordinates `(x*, y*, z* − x*y*/2)` of the star image, which keeps the
/// model set closed under inversion when the box is symmetric.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Window {
    intervals: Vec<(f64, f64)>,
}

impl Window {
    pub fn new(intervals: Vec<(f64, f64)>) -> Result<Self> {
        if intervals.is_empty() {
            return Err(Error::InvalidInput("window needs at least one interval".into()));
        }
        for &(lo, hi) in &intervals {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(Error::InvalidInput(format!(
                    "window interval [{lo}, {hi}] has empty interior"
                )));
            }
        }
        Ok(Window { intervals })
    }

    /// `[−h, h]^dim`.
    pub fn symmetric(half_width: f64, dim: usize) -> Result<Self> {
        Window::new(vec![(-half_width, half_width); dim])
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    pub fn dim(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_symmetric(&self) -> bool {
        self.intervals.iter().all(|&(lo, hi)| lo == -hi)
    }

    /// Minkowski sum of `k` copies (for additive families).
    pub fn scaled(&self, k: f64) -> Window {
        Window {
            intervals: self.intervals.iter().map(|&(lo, hi)| (k * lo, k * hi)).collect(),
        }
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dim()
            && x.iter()
                .zip(&self.intervals)
                .all(|(v, &(lo, hi))| lo <= *v && *v <= hi)
    }

    /// Strict containment in the interior.
    pub fn contains_interior(&self, x: &[f64]) -> bool {
        x.len() == self.dim()
            && x.iter()
                .zip(&self.intervals)
                .all(|(v, &(lo, hi))| lo < *v && *v < hi)
    }

    pub fn max_abs(&self) -> f64 {
        self.intervals
            .iter()
            .map(|&(lo, hi)| lo.abs().max(hi.abs()))
            .fold(0.0, f64::max)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SchemeFamily {
    /// `G = H = R`, `Γ = Z[√d]` embedded as `x ↦ (x, x*)`.
    QuadraticLine,
    /// `G = H = R²`, `Γ = Z[√d]²` embedded componentwise.
    QuadraticPlane,
    /// `G = H = Heis(R)`, `Γ = Heis(Z[√d])` embedded componentwise.
    HeisQuadratic,
}

impl SchemeFamily {
    pub fn tag(self) -> &'static str {
        match self {
            SchemeFamily::QuadraticLine => "quad-line",
            SchemeFamily::QuadraticPlane => "quad-plane",
            SchemeFamily::HeisQuadratic => "heis-quad",
        }
    }

    pub fn from_tag(tag: &str) -> Option<SchemeFamily> {
        match tag {
            "quad-line" => Some(SchemeFamily::QuadraticLine),
            "quad-plane" => Some(SchemeFamily::QuadraticPlane),
            "heis-quad" => Some(SchemeFamily::HeisQuadratic),
            _ => None,
        }
    }

    pub fn dim(self) -> usize {
        match self {
            SchemeFamily::QuadraticLine => 1,
            SchemeFamily::QuadraticPlane => 2,
            SchemeFamily::HeisQuadratic => 3,
        }
    }

    pub fn is_additive(self) -> bool {
        !matches!(self, SchemeFamily::HeisQuadratic)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Scheme {
    pub family: SchemeFamily,
    pub d: u32,
    pub window: Window,
}

impl Scheme {
    pub fn new(family: SchemeFamily, d: u32, window: Window) -> Result<Self> {
        if !is_squarefree(d) {
            return Err(Error::InvalidInput(format!(
                "ring parameter d = {d} must be squarefree and >= 2"
            )));
        }
        if window.dim() != family.dim() {
            return Err(Error::InvalidInput(format!(
                "{} needs a {}-dimensional window, got {}",
                family.tag(),
                family.dim(),
                window.dim()
            )));
        }
        Ok(Scheme { family, d, window })
    }

    /// The running example: `Z[√2]` with window `[−5, 5]`.
    pub fn sqrt2_line(half_width: f64) -> Result<Self> {
        Scheme::new(
            SchemeFamily::QuadraticLine,
            2,
            Window::symmetric(half_width, 1)?,
        )
    }

    pub fn with_window(&self, window: Window) -> Result<Self> {
        Scheme::new(self.family, self.d, window)
    }

    pub fn provenance(&self) -> Provenance {
        Provenance::ModelSet {
            family: self.family,
            d: self.d,
            window: self.window.clone(),
        }
    }
}
