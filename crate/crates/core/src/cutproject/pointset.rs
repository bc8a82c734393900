use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{GroupElem, HeisElem, QuadInt};
use crate::cutproject::exact::conj_in_closed;
use crate::cutproject::fish::fish_contains;
use crate::cutproject::{SchemeFamily, Window};
use crate::error::{Error, Result};

/// Ring parameter used for point sets with rational-integer coordinates.
pub const INTEGER_RING: u32 = 2;

/// How a point set was produced; also the membership predicate when one is
/// available beyond the enumerated region.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Provenance {
    ModelSet {
        family: SchemeFamily,
        d: u32,
        window: Window,
    },
    /// `step · Z^dim`.
    Lattice { dim: usize, step: i64 },
    Fish { blocks: usize },
    Visible { n: i64 },
    Explicit { label: String, dim: usize },
    Power {
        base: Box<Provenance>,
        k: usize,
        factor_radius: f64,
    },
}

impl Provenance {
    pub fn family_tag(&self) -> &'static str {
        match self {
            Provenance::ModelSet { family, .. } => family.tag(),
            Provenance::Lattice { .. } => "lattice",
            Provenance::Fish { .. } => "fish",
            Provenance::Visible { .. } => "visible",
            Provenance::Explicit { .. } => "explicit",
            Provenance::Power { .. } => "power",
        }
    }

    pub fn geometry(&self) -> Geometry {
        match self {
            Provenance::ModelSet { family, .. } => match family {
                SchemeFamily::QuadraticLine => Geometry::Euclid(1),
                SchemeFamily::QuadraticPlane => Geometry::Euclid(2),
                SchemeFamily::HeisQuadratic => Geometry::Heis,
            },
            Provenance::Lattice { dim, .. } | Provenance::Explicit { dim, .. } => {
                Geometry::Euclid(*dim)
            }
            Provenance::Fish { .. } => Geometry::Euclid(1),
            Provenance::Visible { .. } => Geometry::Euclid(2),
            Provenance::Power { base, .. } => base.geometry(),
        }
    }

    /// Whether the generating construction yields a symmetric set containing
    /// the identity.
    pub fn is_symmetric(&self) -> bool {
        match self {
            Provenance::ModelSet { window, .. } => window.is_symmetric(),
            Provenance::Lattice { .. } | Provenance::Fish { .. } => true,
            Provenance::Power { base, .. } => base.is_symmetric(),
            Provenance::Visible { .. } | Provenance::Explicit { .. } => false,
        }
    }

    /// The defining membership predicate, evaluated exactly for any element
    /// of the ambient lattice. `None` when the construction has no global
    /// predicate.
    pub fn contains(&self, g: &GroupElem) -> Option<bool> {
        match (self, g) {
            (Provenance::ModelSet { family, d, window }, _) => {
                Some(model_set_contains(*family, *d, window, g))
            }
            (Provenance::Lattice { dim, step }, GroupElem::Euclid(v)) => Some(
                v.len() == *dim
                    && v.iter().all(|x| {
                        x.is_rational() && x.a().is_multiple_of(&BigInt::from(*step))
                    }),
            ),
            (Provenance::Fish { .. }, GroupElem::Euclid(v)) => Some(
                v.len() == 1 && v[0].is_rational() && fish_contains(v[0].a()),
            ),
            (Provenance::Visible { .. }, GroupElem::Euclid(v)) => Some(
                v.len() == 2
                    && v.iter().all(QuadInt::is_rational)
                    && is_visible(v[0].a(), v[1].a()),
            ),
            _ => None,
        }
    }
}

fn model_set_contains(family: SchemeFamily, d: u32, window: &Window, g: &GroupElem) -> bool {
    let coords: Vec<&QuadInt> = match (family, g) {
        (SchemeFamily::QuadraticLine, GroupElem::Euclid(v)) if v.len() == 1 => v.iter().collect(),
        (SchemeFamily::QuadraticPlane, GroupElem::Euclid(v)) if v.len() == 2 => {
            v.iter().collect()
        }
        (SchemeFamily::HeisQuadratic, GroupElem::Heis(h)) => {
            let iv = window.intervals();
            return iv.len() == 3
                && h.d() == d
                && conj_in_closed(&h.x, iv[0].0, iv[0].1)
                && conj_in_closed(&h.y, iv[1].0, iv[1].1)
                && conj_in_closed(&h.central_symmetric_doubled(), 2.0 * iv[2].0, 2.0 * iv[2].1);
        }
        _ => return false,
    };
    coords.len() == window.dim()
        && coords.iter().all(|x| x.d() == d)
        && coords
            .iter()
            .zip(window.intervals())
            .all(|(x, &(lo, hi))| conj_in_closed(x, lo, hi))
}

/// `gcd(|x|, |y|) = 1` with the convention `gcd(0, k) = |k|`.
pub fn is_visible(x: &BigInt, y: &BigInt) -> bool {
    x.abs().gcd(&y.abs()).is_one()
}

/// Metric shape of the ambient group, used to bound norms of products.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Geometry {
    Euclid(usize),
    Heis,
}

impl Geometry {
    /// Upper bound for `‖gh‖` given `‖g‖ ≤ r1`, `‖h‖ ≤ r2`.
    pub fn product_bound(self, r1: f64, r2: f64) -> f64 {
        match self {
            Geometry::Euclid(_) => r1 + r2,
            // central symmetric part: |w + w' + (x y' − x' y)/2| <= r1 + r2 + r1 r2
            Geometry::Heis => r1 + r2 + r1 * r2,
        }
    }

    /// Upper bound for `‖g⁻¹‖` given `‖g‖ ≤ r`.
    pub fn inverse_bound(self, r: f64) -> f64 {
        // both gauges are inversion invariant
        r
    }

    /// Largest `c` such that `‖x‖ ≤ E` whenever `‖x·w‖ ≤ c` and `‖w‖ ≤ r`,
    /// i.e. the radius that stays complete after right-multiplying by
    /// elements of norm at most `r`.
    pub fn shrink(self, outer: f64, r: f64) -> f64 {
        let h = self.inverse_bound(r);
        match self {
            Geometry::Euclid(_) => outer - h,
            Geometry::Heis => (outer - h) / (1.0 + h),
        }
    }

    pub fn dim(self) -> usize {
        match self {
            Geometry::Euclid(n) => n,
            Geometry::Heis => 3,
        }
    }

    /// Ambient identity for a ring parameter.
    pub fn identity(self, d: u32) -> Result<GroupElem> {
        match self {
            Geometry::Euclid(n) => Ok(GroupElem::Euclid(vec![QuadInt::zero(d)?; n])),
            Geometry::Heis => Ok(GroupElem::Heis(HeisElem::identity(d)?)),
        }
    }
}

/// A finite fragment of a point set.
///
/// `enum_radius` is the radius of the ball around the identity inside which
/// the fragment is complete; `core_radius` is the smaller radius inside which
/// derived constructions (products, patches) are still complete.
#[derive(Clone, Debug)]
pub struct PointSet {
    provenance: Provenance,
    d: u32,
    points: Vec<GroupElem>,
    enum_radius: f64,
    core_radius: f64,
    boundary_points: usize,
    members: HashSet<GroupElem>,
}

impl PartialEq for PointSet {
    fn eq(&self, other: &Self) -> bool {
        self.provenance == other.provenance
            && self.d == other.d
            && self.points == other.points
            && self.enum_radius == other.enum_radius
            && self.core_radius == other.core_radius
            && self.boundary_points == other.boundary_points
    }
}

impl PointSet {
    pub fn new(
        provenance: Provenance,
        d: u32,
        mut points: Vec<GroupElem>,
        enum_radius: f64,
        core_radius: f64,
    ) -> Result<Self> {
        if !(enum_radius >= 0.0 && core_radius >= 0.0) {
            return Err(Error::InvalidInput(format!(
                "radii must be non-negative (enum {enum_radius}, core {core_radius})"
            )));
        }
        if core_radius > enum_radius {
            return Err(Error::InvalidInput(format!(
                "core radius {core_radius} exceeds enumeration radius {enum_radius}"
            )));
        }
        let geometry = provenance.geometry();
        for p in &points {
            let ok = match (geometry, p) {
                (Geometry::Euclid(n), GroupElem::Euclid(v)) => {
                    v.len() == n && v.iter().all(|x| x.d() == d)
                }
                (Geometry::Heis, GroupElem::Heis(h)) => h.d() == d,
                _ => false,
            };
            if !ok {
                return Err(Error::InvalidInput(format!(
                    "point {p} does not belong to a {geometry:?} set over Z[√{d}]"
                )));
            }
        }
        points.sort();
        points.dedup();
        let members = points.iter().cloned().collect();
        Ok(PointSet {
            provenance,
            d,
            points,
            enum_radius,
            core_radius,
            boundary_points: 0,
            members,
        })
    }

    pub(crate) fn with_boundary_points(mut self, n: usize) -> Self {
        self.boundary_points = n;
        self
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn points(&self) -> &[GroupElem] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn enum_radius(&self) -> f64 {
        self.enum_radius
    }

    pub fn core_radius(&self) -> f64 {
        self.core_radius
    }

    /// Number of enumerated points whose internal coordinates sit exactly on
    /// the window boundary.
    pub fn boundary_points(&self) -> usize {
        self.boundary_points
    }

    pub fn geometry(&self) -> Geometry {
        self.provenance.geometry()
    }

    pub fn identity(&self) -> Result<GroupElem> {
        self.geometry().identity(self.d)
    }

    pub fn contains(&self, g: &GroupElem) -> bool {
        self.members.contains(g)
    }

    /// Copy with a smaller core radius.
    pub fn with_core(&self, core_radius: f64) -> Result<PointSet> {
        let mut p = self.clone();
        if core_radius > self.enum_radius || core_radius < 0.0 {
            return Err(Error::InvalidInput(format!(
                "core radius {core_radius} outside [0, {}]",
                self.enum_radius
            )));
        }
        p.core_radius = core_radius;
        Ok(p)
    }

    /// Points with `‖p‖ ≤ radius`.
    pub fn points_within(&self, radius: f64) -> Vec<&GroupElem> {
        self.points
            .iter()
            .filter(|p| p.norm().map(|n| n <= radius).unwrap_or(false))
            .collect()
    }

    pub fn core_points(&self) -> Vec<&GroupElem> {
        self.points_within(self.core_radius)
    }

    /// `x ∈ P ⇒ x⁻¹ ∈ P` for every listed point, and `e ∈ P`.
    pub fn is_symmetric_with_identity(&self) -> Result<bool> {
        if !self.contains(&self.identity()?) {
            return Ok(false);
        }
        for p in &self.points {
            if !self.contains(&p.inverse()?) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Exact subset test on listed points.
    pub fn is_subset_of(&self, other: &PointSet) -> bool {
        self.points.iter().all(|p| other.contains(p))
    }

    /// Restrict to points within `radius`; enumeration and core radii shrink
    /// accordingly.
    pub fn restrict(&self, radius: f64) -> Result<PointSet> {
        let r = radius.min(self.enum_radius);
        let pts = self.points_within(r).into_iter().cloned().collect();
        PointSet::new(
            self.provenance.clone(),
            self.d,
            pts,
            r,
            self.core_radius.min(r),
        )
    }
}

impl fmt::Display for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} set: {} points, enum radius {}, core radius {}",
            self.provenance.family_tag(),
            self.points.len(),
            self.enum_radius,
            self.core_radius
        )
    }
}

/// Rational integer as a ring element of the integer convention ring.
pub fn int_elem(n: impl Into<BigInt>) -> QuadInt {
    QuadInt::from_parts(n.into(), BigInt::zero(), INTEGER_RING)
}

/// `step · Z^dim ∩ B_radius`.
pub fn integer_lattice(dim: usize, step: i64, radius: f64) -> Result<PointSet> {
    if dim == 0 || dim > 2 || step <= 0 || !(radius > 0.0) {
        return Err(Error::InvalidInput(format!(
            "lattice needs dim in 1..=2, step > 0, radius > 0 (got {dim}, {step}, {radius})"
        )));
    }
    let m = (radius / step as f64).floor() as i64;
    let mut pts = Vec::new();
    if dim == 1 {
        for i in -m..=m {
            pts.push(GroupElem::Euclid(vec![int_elem(i * step)]));
        }
    } else {
        for i in -m..=m {
            for j in -m..=m {
                let (x, y) = ((i * step) as f64, (j * step) as f64);
                if (x * x + y * y).sqrt() <= radius {
                    pts.push(GroupElem::Euclid(vec![int_elem(i * step), int_elem(j * step)]));
                }
            }
        }
    }
    PointSet::new(Provenance::Lattice { dim, step }, INTEGER_RING, pts, radius, radius)
}

/// A user-supplied finite set of integer points, complete within `radius`.
pub fn explicit_integers(label: &str, values: &[i64], radius: f64) -> Result<PointSet> {
    let pts = values
        .iter()
        .filter(|v| (**v as f64).abs() <= radius)
        .map(|&v| GroupElem::Euclid(vec![int_elem(v)]))
        .collect();
    PointSet::new(
        Provenance::Explicit {
            label: label.to_string(),
            dim: 1,
        },
        INTEGER_RING,
        pts,
        radius,
        radius,
    )
}
