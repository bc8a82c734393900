use std::cmp::Ordering;

use num_bigint::BigInt;

use crate::algebra::{GroupElem, HeisElem, QuadInt};
use crate::cutproject::exact::{cmp_quad_dyadic, conj_in_closed, conj_on_boundary, in_closed, Dyadic};
use crate::cutproject::{PointSet, Scheme, SchemeFamily};
use crate::error::{Error, Result};

/// Maximum number of candidate coefficient pairs (or product points) an
/// enumeration may visit.
pub const ENUMERATION_BUDGET: usize = 50_000_000;

/// Galois-conjugate embedding `τ(x)` of a lattice element.
pub fn star_map(scheme: &Scheme, x: &GroupElem) -> Result<Vec<f64>> {
    check_in_lattice(scheme, x)?;
    x.internal()
}

/// Exact star map: the conjugate element itself.
pub fn star_map_exact(scheme: &Scheme, x: &GroupElem) -> Result<GroupElem> {
    check_in_lattice(scheme, x)?;
    Ok(match x {
        GroupElem::Euclid(v) => GroupElem::Euclid(v.iter().map(QuadInt::conjugate).collect()),
        GroupElem::Heis(h) => GroupElem::Heis(h.conjugate()),
        _ => unreachable!("checked above"),
    })
}

fn check_in_lattice(scheme: &Scheme, x: &GroupElem) -> Result<()> {
    let ok = match (scheme.family, x) {
        (SchemeFamily::QuadraticLine, GroupElem::Euclid(v)) => {
            v.len() == 1 && v[0].d() == scheme.d
        }
        (SchemeFamily::QuadraticPlane, GroupElem::Euclid(v)) => {
            v.len() == 2 && v.iter().all(|c| c.d() == scheme.d)
        }
        (SchemeFamily::HeisQuadratic, GroupElem::Heis(h)) => h.d() == scheme.d,
        _ => false,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::NotInLattice(format!(
            "{x} is not in the {} lattice over Z[√{}]",
            scheme.family.tag(),
            scheme.d
        )))
    }
}

/// Scans `x = a + b√d` whose physical value may lie in `phys` and whose
/// conjugate may lie in `internal` (float ranges used only to bound the
/// coefficient loops) and keeps those passing the exact `accept` test.
///
/// From `x + x* = 2a` and `x − x* = 2b√d`, a physical range `[P1, P2]` and an
/// internal range `[I1, I2]` give `b ∈ [(P1 − I2)/2√d, (P2 − I1)/2√d]` and,
/// for fixed `b`, `a ∈ [P1 − b√d, P2 − b√d] ∩ [I1 + b√d, I2 + b√d]`.
fn scan_line(
    d: u32,
    phys: (f64, f64),
    internal: (f64, f64),
    budget: &mut usize,
    mut accept: impl FnMut(&QuadInt) -> bool,
) -> Result<Vec<QuadInt>> {
    let s = f64::from(d).sqrt();
    let b_lo = ((phys.0 - internal.1) / (2.0 * s)).floor() as i64 - 1;
    let b_hi = ((phys.1 - internal.0) / (2.0 * s)).ceil() as i64 + 1;
    // every b row visits at least min(width) + 1 values of a
    let per_row = (phys.1 - phys.0).min(internal.1 - internal.0).max(0.0) + 1.0;
    if (b_hi - b_lo + 1) as f64 * per_row > *budget as f64 {
        return Err(Error::Budget {
            what: "enumeration coefficient range".into(),
            limit: ENUMERATION_BUDGET,
        });
    }
    let mut out = Vec::new();
    for b in b_lo..=b_hi {
        let bs = b as f64 * s;
        let a_min = (phys.0 - bs).max(internal.0 + bs).floor() as i64 - 1;
        let a_max = (phys.1 - bs).min(internal.1 + bs).ceil() as i64 + 1;
        if a_max < a_min {
            continue;
        }
        let span = (a_max - a_min + 1) as usize;
        if span > *budget {
            return Err(Error::Budget {
                what: "enumeration coefficient range".into(),
                limit: ENUMERATION_BUDGET,
            });
        }
        *budget -= span;
        for a in a_min..=a_max {
            let x = QuadInt::from_parts(BigInt::from(a), BigInt::from(b), d);
            if accept(&x) {
                out.push(x);
            }
        }
    }
    out.sort_by(|x, y| x.cmp_real(y));
    Ok(out)
}

/// All `x ∈ Z[√d]` with `|x| ≤ radius` and `lo ≤ x* ≤ hi`, in increasing
/// real order, plus the number of them with `x*` on the window boundary.
fn line_points(
    d: u32,
    radius: f64,
    lo: f64,
    hi: f64,
    budget: &mut usize,
) -> Result<(Vec<QuadInt>, usize)> {
    let pts = scan_line(d, (-radius, radius), (lo, hi), budget, |x| {
        in_closed(x, -radius, radius) && conj_in_closed(x, lo, hi)
    })?;
    let boundary = pts.iter().filter(|x| conj_on_boundary(x, lo, hi)).count();
    Ok((pts, boundary))
}

/// Complete list of lattice points in the metric ball `B_R(e)` whose star
/// image lies in the window.
pub fn enumerate(scheme: &Scheme, radius: f64) -> Result<PointSet> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::InvalidInput(format!("radius must be positive, got {radius}")));
    }
    let mut budget = ENUMERATION_BUDGET;
    let per_coord = scheme
        .window
        .intervals()
        .iter()
        .map(|&(lo, hi)| line_points(scheme.d, radius, lo, hi, &mut budget))
        .collect::<Result<Vec<_>>>()?;

    let (points, boundary) = match scheme.family {
        SchemeFamily::QuadraticLine => {
            let (pts, b) = per_coord.into_iter().next().expect("one coordinate");
            (pts.into_iter().map(GroupElem::scalar).collect::<Vec<_>>(), b)
        }
        SchemeFamily::QuadraticPlane => {
            let r2 = Dyadic::from_f64(radius)
                .ok_or_else(|| Error::InvalidInput("radius not finite".into()))?
                .square();
            let (xs, _) = &per_coord[0];
            let (ys, _) = &per_coord[1];
            check_product_budget(xs.len() * ys.len())?;
            let lo_hi = scheme.window.intervals();
            let mut pts = Vec::new();
            let mut boundary = 0;
            for x in xs {
                let xx = x * x;
                for y in ys {
                    let n2 = &xx + &(y * y);
                    if cmp_quad_dyadic(&n2, &r2) != Ordering::Greater {
                        if conj_on_boundary(x, lo_hi[0].0, lo_hi[0].1)
                            || conj_on_boundary(y, lo_hi[1].0, lo_hi[1].1)
                        {
                            boundary += 1;
                        }
                        pts.push(GroupElem::Euclid(vec![x.clone(), y.clone()]));
                    }
                }
            }
            (pts, boundary)
        }
        SchemeFamily::HeisQuadratic => {
            // window and ball are boxes in symmetric coordinates (x, y, z − xy/2)
            let (xs, _) = &per_coord[0];
            let (ys, _) = &per_coord[1];
            check_product_budget(xs.len() * ys.len())?;
            let (clo, chi) = scheme.window.intervals()[2];
            let lo_hi = scheme.window.intervals();
            let mut pts = Vec::new();
            let mut boundary = 0;
            for x in xs {
                for y in ys {
                    let xy = x * y;
                    let shift = xy.embedding() / 2.0;
                    let shift_c = xy.conj_embedding() / 2.0;
                    let zs = scan_line(
                        scheme.d,
                        (shift - radius, shift + radius),
                        (shift_c + clo, shift_c + chi),
                        &mut budget,
                        |z| {
                            let w = &(z + z) - &xy;
                            in_closed(&w, -2.0 * radius, 2.0 * radius)
                                && conj_in_closed(&w, 2.0 * clo, 2.0 * chi)
                        },
                    )?;
                    for z in zs {
                        let h = HeisElem {
                            x: x.clone(),
                            y: y.clone(),
                            z,
                        };
                        if conj_on_boundary(x, lo_hi[0].0, lo_hi[0].1)
                            || conj_on_boundary(y, lo_hi[1].0, lo_hi[1].1)
                            || conj_on_boundary(&h.central_symmetric_doubled(), 2.0 * clo, 2.0 * chi)
                        {
                            boundary += 1;
                        }
                        pts.push(GroupElem::Heis(h));
                    }
                }
            }
            (pts, boundary)
        }
    };
    Ok(PointSet::new(scheme.provenance(), scheme.d, points, radius, radius)?
        .with_boundary_points(boundary))
}

fn check_product_budget(n: usize) -> Result<()> {
    if n > ENUMERATION_BUDGET {
        Err(Error::Budget {
            what: "enumeration product size".into(),
            limit: ENUMERATION_BUDGET,
        })
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cutproject::Window;

    fn q(a: i64, b: i64) -> GroupElem {
        GroupElem::scalar(QuadInt::new(a, b, 2).unwrap())
    }

    #[test]
    fn star_map_examples() {
        let s = Scheme::sqrt2_line(5.0).unwrap();
        assert_eq!(star_map(&s, &q(0, 0)).unwrap(), vec![0.0]);
        let t = star_map(&s, &q(1, 1)).unwrap()[0];
        assert!((t - (1.0 - 2f64.sqrt())).abs() < 1e-12);
        let wrong_ring = GroupElem::scalar(QuadInt::new(1, 1, 3).unwrap());
        assert!(matches!(star_map(&s, &wrong_ring), Err(Error::NotInLattice(_))));
    }

    #[test]
    fn running_example_membership() {
        let s = Scheme::sqrt2_line(5.0).unwrap();
        let p = enumerate(&s, 20.0).unwrap();
        assert!(p.contains(&q(0, 0)));
        assert!(p.contains(&q(1, 1)));
        // 5 and -5 sit exactly on the window boundary of a closed window
        assert!(p.contains(&q(5, 0)));
        assert!(!p.contains(&q(6, 0)));
        assert!(p.boundary_points() >= 2);
        assert!(p.is_symmetric_with_identity().unwrap());
    }

    #[test]
    fn brute_force_agreement() {
        let s = Scheme::sqrt2_line(5.0).unwrap();
        let r = 30.0;
        let p = enumerate(&s, r).unwrap();
        let r2 = 2f64.sqrt();
        let amax = ((r + 5.0) / 2.0) as i64 + 1;
        let bmax = ((r + 5.0) / (2.0 * r2)) as i64 + 1;
        let mut expect = Vec::new();
        for a in -amax..=amax {
            for b in -bmax..=bmax {
                let x = a as f64 + b as f64 * r2;
                let xs = a as f64 - b as f64 * r2;
                if x.abs() <= r && xs.abs() <= 5.0 {
                    expect.push(q(a, b));
                }
            }
        }
        expect.sort();
        assert_eq!(p.points(), &expect[..]);
    }

    #[test]
    fn rejects_bad_radius() {
        let s = Scheme::sqrt2_line(5.0).unwrap();
        assert!(enumerate(&s, 0.0).is_err());
        assert!(enumerate(&s, f64::NAN).is_err());
    }

    #[test]
    fn budget_is_enforced() {
        let s = Scheme::sqrt2_line(5.0).unwrap();
        assert!(matches!(enumerate(&s, 1e9), Err(Error::Budget { .. })));
    }

    #[test]
    fn heis_model_set_is_symmetric() {
        let s = Scheme::new(
            SchemeFamily::HeisQuadratic,
            2,
            Window::symmetric(1.0, 3).unwrap(),
        )
        .unwrap();
        let p = enumerate(&s, 3.0).unwrap();
        assert!(p.len() > 10);
        assert!(p.is_symmetric_with_identity().unwrap());
        for g in p.points() {
            assert!(g.norm().unwrap() <= 3.0 + 1e-12);
            assert_eq!(s.provenance().contains(g), Some(true));
        }
    }
}
