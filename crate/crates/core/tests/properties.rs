use std::collections::HashMap;
use std::sync::OnceLock;

use aplab_core::algebra::{cartan_t, GroupElem, QuadInt, Sl2};
use aplab_core::cutproject::{
    enumerate, fish_set, int_elem, integer_lattice, star_map, star_map_exact, PointSet, Scheme,
    SchemeFamily, Window,
};
use aplab_core::ggt::{word_lengths, WordFamily, WordGroup};
use aplab_core::hull::{flc_patches, patch_inclusion_violations, periodize, Bump, TestFunction};
use aplab_core::index::NeighborIndex;
use aplab_core::io::{pointset_from_csv, pointset_to_csv};
use aplab_core::stationary::{simulate_series, trajectories_csv, AffineWalkConfig};
use aplab_core::verify::{delone_parameters, local_finiteness_profile};
use proptest::prelude::*;

fn quad(a: i64, b: i64) -> QuadInt {
    QuadInt::new(a, b, 2).unwrap()
}

fn sqrt2_set() -> &'static PointSet {
    static SET: OnceLock<PointSet> = OnceLock::new();
    SET.get_or_init(|| enumerate(&Scheme::sqrt2_line(5.0).unwrap(), 120.0).unwrap())
}

fn fish() -> &'static PointSet {
    static SET: OnceLock<PointSet> = OnceLock::new();
    SET.get_or_init(|| fish_set(16).unwrap())
}

fn word_table(family: WordFamily) -> &'static (WordGroup, HashMap<GroupElem, usize>) {
    static TABLES: OnceLock<Vec<(WordGroup, HashMap<GroupElem, usize>)>> = OnceLock::new();
    let all = TABLES.get_or_init(|| {
        [WordFamily::ZPowers(2), WordFamily::HeisZ, WordFamily::Bs12, WordFamily::Sl2Z]
            .into_iter()
            .map(|f| {
                let g = WordGroup::standard(f).unwrap();
                let t = word_lengths(&g, 6, 1 << 22).unwrap();
                (g, t)
            })
            .collect()
    });
    all.iter().find(|(g, _)| g.family == family).unwrap()
}

fn triangle(c: f64, r: f64) -> TestFunction {
    TestFunction::single(Bump::triangle(vec![c], r).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn star_map_is_additive(a1 in -10_000i64..10_000, b1 in -10_000i64..10_000,
                            a2 in -10_000i64..10_000, b2 in -10_000i64..10_000) {
        let s = Scheme::sqrt2_line(5.0).unwrap();
        let (x, y) = (GroupElem::scalar(quad(a1, b1)), GroupElem::scalar(quad(a2, b2)));
        let xy = x.mul(&y).unwrap();
        prop_assert_eq!(
            star_map_exact(&s, &xy).unwrap(),
            star_map_exact(&s, &x).unwrap().mul(&star_map_exact(&s, &y).unwrap()).unwrap()
        );
        let (fx, fy, fxy) = (star_map(&s, &x).unwrap()[0], star_map(&s, &y).unwrap()[0], star_map(&s, &xy).unwrap()[0]);
        prop_assert!((fxy - fx - fy).abs() <= 1e-9 * (1.0 + fx.abs() + fy.abs()));
    }

    #[test]
    fn norm_is_multiplicative(a1 in -1000i64..1000, b1 in -1000i64..1000,
                              a2 in -1000i64..1000, b2 in -1000i64..1000) {
        let (x, y) = (quad(a1, b1), quad(a2, b2));
        let xy = x.try_mul(&y).unwrap();
        prop_assert_eq!(xy.norm(), x.norm() * y.norm());
        prop_assert_eq!(xy.conjugate(), x.conjugate().try_mul(&y.conjugate()).unwrap());
    }

    #[test]
    fn larger_windows_give_larger_sets(lo in -4.0f64..-0.5, hi in 0.5f64..4.0,
                                       grow_lo in 0.0f64..2.0, grow_hi in 0.0f64..2.0) {
        let small = Scheme::new(SchemeFamily::QuadraticLine, 2, Window::new(vec![(lo, hi)]).unwrap()).unwrap();
        let big = small.with_window(Window::new(vec![(lo - grow_lo, hi + grow_hi)]).unwrap()).unwrap();
        let (p, q) = (enumerate(&small, 40.0).unwrap(), enumerate(&big, 40.0).unwrap());
        prop_assert!(p.is_subset_of(&q));
        prop_assert!(p.len() <= q.len());
    }

    #[test]
    fn csv_round_trip_is_exact(half in 0.5f64..6.0, radius in 5.0f64..60.0, blocks in 1usize..9) {
        for p in [
            enumerate(&Scheme::sqrt2_line(half).unwrap(), radius).unwrap(),
            fish_set(blocks).unwrap(),
            integer_lattice(2, blocks as i64, radius).unwrap(),
        ] {
            let text = pointset_to_csv(&p).unwrap();
            let q = pointset_from_csv(&text, "prop").unwrap();
            prop_assert_eq!(&q, &p);
            prop_assert_eq!(pointset_to_csv(&q).unwrap(), text);
        }
    }

    #[test]
    fn patches_embed_in_the_difference_set(blocks in 4usize..12, rho in 1.0f64..6.0) {
        let p = fish_set(blocks).unwrap();
        prop_assume!(2.0 * rho <= p.core_radius());
        let cat = flc_patches(&p, rho).unwrap();
        prop_assert_eq!(patch_inclusion_violations(&p, &cat).unwrap(), 0);
    }

    #[test]
    fn periodization_is_linear(c1 in -3.0f64..3.0, r1 in 0.3f64..4.0, c2 in -3.0f64..3.0,
                               r2 in 0.3f64..4.0, w in 0.1f64..3.0, g in -60i64..60) {
        let (f1, mut f2) = (triangle(c1, r1), triangle(c2, r2));
        f2.0[0].0 = w;
        let ts = [GroupElem::scalar(int_elem(g))];
        for p in [fish(), &integer_lattice(1, 1, 100.0).unwrap()] {
            let a = periodize(&f1, p, &ts).unwrap()[0];
            let b = periodize(&f2, p, &ts).unwrap()[0];
            let ab = periodize(&f1.plus(&f2), p, &ts).unwrap()[0];
            prop_assert!((ab - a - b).abs() <= 1e-12 * (1.0 + ab.abs()));
        }
    }

    #[test]
    fn periodization_is_bounded_by_local_counts(r in 0.3f64..5.0, w in 0.1f64..3.0, g in -40.0f64..40.0) {
        // a ball of radius s around g that meets Λ at x0 lies in B_{2s}(x0)
        let p = sqrt2_set();
        let mut f = triangle(0.0, r);
        f.0[0].0 = w;
        let c = local_finiteness_profile(p, 1, 2.0 * r, 0.0, None).unwrap();
        prop_assume!(g.abs() + r <= c.centers_radius);
        let idx = NeighborIndex::auto(p).unwrap();
        let lam = &p.points()[idx.nearest(&[g]).unwrap().0];
        let v = periodize(&f, p, std::slice::from_ref(lam)).unwrap()[0];
        prop_assert!(v <= c.c_k as f64 * f.sup_norm_bound() + 1e-12);
    }

    #[test]
    fn every_covering_ball_is_occupied(g in -100.0f64..100.0) {
        let p = sqrt2_set();
        let r = delone_parameters(p).unwrap().covering_radius;
        let idx = NeighborIndex::auto(p).unwrap();
        let (_, d) = idx.nearest(&[g]).unwrap();
        prop_assert!(d <= r + 1e-12, "empty ball of radius {d} at {g}");
    }

    #[test]
    fn cartan_projection_is_bi_invariant(t in 0.0f64..8.0, th1 in -3.2f64..3.2, th2 in -3.2f64..3.2) {
        let a = Sl2::diagonal(t);
        let g = Sl2::rotation(th1).mul(&a).mul(&Sl2::rotation(th2));
        let (_, t0) = cartan_t(&a).unwrap();
        let (_, t1) = cartan_t(&g).unwrap();
        prop_assert!((t1 - t0).abs() <= 1e-6 * (1.0 + t0), "{t0} vs {t1}");
        prop_assert!((t0 - t).abs() <= 1e-9 * (1.0 + t));
    }

    #[test]
    fn affine_walk_is_deterministic(b in -2.0f64..2.0, a in -1.0f64..0.5, p in 0.1f64..0.9, seed in any::<u64>()) {
        let cfg = AffineWalkConfig::new(vec![(b, a, p), (1.0, -0.7, 1.0 - p)], seed, 8, 25).unwrap();
        let x = simulate_series(&cfg).unwrap();
        let y = simulate_series(&cfg).unwrap();
        prop_assert_eq!(trajectories_csv(&x), trajectories_csv(&y));
        prop_assert_eq!(x, y);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn word_metrics_satisfy_metric_axioms(fam in 0usize..4, i in any::<prop::sample::Index>(),
                                          j in any::<prop::sample::Index>(), k in any::<prop::sample::Index>()) {
        let family = [WordFamily::ZPowers(2), WordFamily::HeisZ, WordFamily::Bs12, WordFamily::Sl2Z][fam];
        let (_, table) = word_table(family);
        let mut ball: Vec<&GroupElem> = table.iter().filter(|(_, &l)| l <= 3).map(|(g, _)| g).collect();
        ball.sort();
        let (x, y, z) = (ball[i.index(ball.len())], ball[j.index(ball.len())], ball[k.index(ball.len())]);
        // every quotient of two radius-3 elements has length at most 6
        let d = |u: &GroupElem, v: &GroupElem| table[&u.left_div(v).unwrap()];
        prop_assert_eq!(d(x, x), 0);
        prop_assert_eq!(d(x, y), d(y, x));
        prop_assert!(x == y || d(x, y) > 0);
        prop_assert!(d(x, z) <= d(x, y) + d(y, z));
        // left translation is an isometry
        let g = ball[(i.index(ball.len()) + 1) % ball.len()];
        let (gx, gy) = (g.mul(x).unwrap(), g.mul(y).unwrap());
        if let Some(&l) = table.get(&gx.left_div(&gy).unwrap()) {
            prop_assert_eq!(l, d(x, y));
        }
    }
}
