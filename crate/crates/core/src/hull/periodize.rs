use serde::{Deserialize, Serialize};

use crate::algebra::heis::{heis_inv_f64, heis_mul_f64};
use crate::algebra::GroupElem;
use crate::cutproject::{Geometry, PointSet};
use crate::error::{Error, Result};
use crate::index::{float_dist, NeighborIndex};
use crate::verify::Ag3Witness;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Profile {
    /// `1 − r/radius` on the ball.
    Triangle,
    /// `1` up to `inner`, then linear down to `0` at the radius.
    SmoothIndicator { inner: f64 },
}

/// Compactly supported radial bump `φ(d(center, ·))`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bump {
    pub center: Vec<f64>,
    pub radius: f64,
    pub profile: Profile,
}

impl Bump {
    pub fn new(center: Vec<f64>, radius: f64, profile: Profile) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidInput(format!("bump radius must be positive, got {radius}")));
        }
        if let Profile::SmoothIndicator { inner } = profile {
            if !(0.0..radius).contains(&inner) {
                return Err(Error::InvalidInput(format!(
                    "inner radius {inner} must lie in [0, {radius})"
                )));
            }
        }
        Ok(Bump {
            center,
            radius,
            profile,
        })
    }

    pub fn triangle(center: Vec<f64>, radius: f64) -> Result<Self> {
        Bump::new(center, radius, Profile::Triangle)
    }

    fn shape(&self, r: f64) -> f64 {
        if r >= self.radius {
            return 0.0;
        }
        match self.profile {
            Profile::Triangle => 1.0 - r / self.radius,
            Profile::SmoothIndicator { inner } if r <= inner => 1.0,
            Profile::SmoothIndicator { inner } => (self.radius - r) / (self.radius - inner),
        }
    }

    pub fn eval(&self, geometry: Geometry, x: &[f64]) -> f64 {
        self.shape(float_dist(geometry, &self.center, x))
    }

    /// Integral over the real line (one-dimensional bumps only).
    pub fn line_integral(&self) -> f64 {
        match self.profile {
            Profile::Triangle => self.radius,
            Profile::SmoothIndicator { inner } => inner + self.radius,
        }
    }

    fn center_norm(&self, geometry: Geometry) -> f64 {
        float_dist(geometry, &vec![0.0; self.center.len()], &self.center)
    }
}

/// A finite nonnegative-or-signed combination of bumps.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TestFunction(pub Vec<(f64, Bump)>);

impl TestFunction {
    pub fn single(b: Bump) -> Self {
        TestFunction(vec![(1.0, b)])
    }

    pub fn eval(&self, geometry: Geometry, x: &[f64]) -> f64 {
        self.0.iter().map(|(w, b)| w * b.eval(geometry, x)).sum()
    }

    /// Sum of the two functions as a descriptor.
    pub fn plus(&self, other: &TestFunction) -> TestFunction {
        TestFunction(self.0.iter().chain(&other.0).cloned().collect())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|(w, _)| *w >= 0.0)
    }

    pub fn sup_norm_bound(&self) -> f64 {
        self.0.iter().map(|(w, _)| w.abs()).sum()
    }

    /// Radius of a ball around the identity containing every support.
    pub fn support_radius(&self, geometry: Geometry) -> f64 {
        self.0
            .iter()
            .map(|(_, b)| geometry.product_bound(b.center_norm(geometry), b.radius))
            .fold(0.0, f64::max)
    }
}

fn left_translate(geometry: Geometry, g: &[f64], x: &[f64]) -> Vec<f64> {
    match geometry {
        Geometry::Euclid(_) => g.iter().zip(x).map(|(a, b)| a + b).collect(),
        Geometry::Heis => heis_mul_f64([g[0], g[1], g[2]], [x[0], x[1], x[2]]).to_vec(),
    }
}

fn inverse(geometry: Geometry, g: &[f64]) -> Vec<f64> {
    match geometry {
        Geometry::Euclid(_) => g.iter().map(|a| -a).collect(),
        Geometry::Heis => heis_inv_f64([g[0], g[1], g[2]]).to_vec(),
    }
}

/// `Σ_{x ∈ Λ} f(g x)` at a float translate, summing only over the listed
/// points near each bump.
pub(crate) fn periodize_at(
    f: &TestFunction,
    idx: &NeighborIndex,
    geometry: Geometry,
    g: &[f64],
) -> f64 {
    let ginv = inverse(geometry, g);
    let mut total = 0.0;
    for (w, b) in &f.0 {
        // d(c, gx) = d(g⁻¹c, x)
        let q = left_translate(geometry, &ginv, &b.center);
        for (i, _) in idx.within_open(&q, b.radius) {
            total += w * b.eval(geometry, &left_translate(geometry, g, idx.coords(i)));
        }
    }
    total
}

fn require_support(p: &PointSet, f: &TestFunction, g_norm: f64) -> Result<()> {
    let geometry = p.geometry();
    // gx ∈ supp f forces ‖x‖ ≤ ‖g‖ + S (Heisenberg: S + ‖g‖ + S‖g‖)
    let needed = geometry.product_bound(g_norm, f.support_radius(geometry));
    if needed > p.core_radius() {
        return Err(Error::InsufficientCore {
            needed,
            available: p.core_radius(),
        });
    }
    Ok(())
}

/// Values of the periodization `Pf(g⁻¹... )`, i.e. `Σ_{x ∈ Λ} f(g x)`, at each
/// translate `g`.
pub fn periodize(f: &TestFunction, p: &PointSet, translates: &[GroupElem]) -> Result<Vec<f64>> {
    let geometry = p.geometry();
    let idx = NeighborIndex::auto(p)?;
    translates
        .iter()
        .map(|g| {
            require_support(p, f, g.norm()?)?;
            Ok(periodize_at(f, &idx, geometry, &g.physical()?))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct InequalityViolation {
    pub g: String,
    pub t: String,
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct UnimodularityReport {
    pub samples: usize,
    pub witness_size: usize,
    pub min_slack: f64,
    pub max_slack: f64,
    pub violations: Vec<InequalityViolation>,
}

/// `Σ_λ f(gλt) ≤ Σ_{c ∈ F} Σ_λ f(gcλ)` for every sampled `(g, t)`; abelian
/// ambient groups only. `f` must be nonnegative and every `λt` that can meet
/// the support must lie in the verified core of the witness.
pub fn unimodularity_inequality_check(
    p: &PointSet,
    witness: &Ag3Witness,
    f: &TestFunction,
    ts: &[GroupElem],
    gs: &[GroupElem],
) -> Result<UnimodularityReport> {
    let geometry = p.geometry();
    if !matches!(geometry, Geometry::Euclid(_)) {
        return Err(Error::InvalidInput(
            "the periodization inequality is implemented for abelian ambient groups".into(),
        ));
    }
    if !f.is_nonnegative() {
        return Err(Error::InvalidInput("test function must be nonnegative".into()));
    }
    let s = f.support_radius(geometry);
    let idx = NeighborIndex::auto(p)?;
    let mut report = UnimodularityReport {
        samples: 0,
        witness_size: witness.f.len(),
        min_slack: f64::INFINITY,
        max_slack: f64::NEG_INFINITY,
        violations: Vec::new(),
    };
    let c_phys = witness
        .f
        .iter()
        .map(GroupElem::physical)
        .collect::<Result<Vec<_>>>()?;
    for t in ts {
        if !p.contains(t) {
            return Err(Error::InvalidInput(format!("translate {t} is not a point of the set")));
        }
        let tn = t.norm()?;
        let tp = t.physical()?;
        for g in gs {
            let gn = g.norm()?;
            // λ with gλt in the support has ‖λ‖ ≤ ‖g‖ + ‖t‖ + S
            let lam_max = gn + tn + s;
            if lam_max > witness.verified_core_radius || tn > witness.verified_core_radius {
                return Err(Error::InsufficientCore {
                    needed: lam_max.max(tn),
                    available: witness.verified_core_radius,
                });
            }
            require_support(p, f, gn + witness.max_norm)?;
            let gp = g.physical()?;
            let lhs = periodize_at(f, &idx, geometry, &left_translate(geometry, &gp, &tp));
            let rhs: f64 = c_phys
                .iter()
                .map(|c| periodize_at(f, &idx, geometry, &left_translate(geometry, &gp, c)))
                .sum();
            let slack = rhs - lhs;
            report.samples += 1;
            report.min_slack = report.min_slack.min(slack);
            report.max_slack = report.max_slack.max(slack);
            if slack < -1e-9 {
                report.violations.push(InequalityViolation {
                    g: g.to_string(),
                    t: t.to_string(),
                    lhs,
                    rhs,
                });
            }
        }
    }
    Ok(report)
}

/// A ball of translates on the real line.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AverageWindow {
    pub center: f64,
    pub radius: f64,
}

/// Birkhoff-type averages `(1/|W|) ∫_W Pf(g) dg` over each window, by the
/// midpoint rule with step at most `step`.
pub fn ergodic_average(
    p: &PointSet,
    f: &TestFunction,
    windows: &[AverageWindow],
    step: f64,
) -> Result<Vec<(AverageWindow, f64)>> {
    let geometry = p.geometry();
    if geometry != Geometry::Euclid(1) {
        return Err(Error::InvalidInput("ergodic averages are taken on the real line".into()));
    }
    if !(step > 0.0) {
        return Err(Error::InvalidInput(format!("step must be positive, got {step}")));
    }
    let idx = NeighborIndex::auto(p)?;
    let mut out = Vec::with_capacity(windows.len());
    for w in windows {
        if !(w.radius > 0.0) {
            return Err(Error::InvalidInput(format!("window radius must be positive, got {}", w.radius)));
        }
        require_support(p, f, w.center.abs() + w.radius)?;
        let n = (2.0 * w.radius / step).ceil().max(1.0) as usize;
        let h = 2.0 * w.radius / n as f64;
        let total: f64 = (0..n)
            .map(|i| {
                let g = w.center - w.radius + (i as f64 + 0.5) * h;
                periodize_at(f, &idx, geometry, &[g])
            })
            .sum();
        out.push((*w, total / n as f64));
    }
    Ok(out)
}
