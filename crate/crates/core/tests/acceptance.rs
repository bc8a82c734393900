//! Acceptance gate. Each test prints one `criterion N: PASS|FAIL` line with
//! its measurements and wall time, then asserts.

use std::collections::{HashMap, VecDeque};
use std::time::{Duration, Instant};

use aplab_core::algebra::{Bs, GroupElem, Sl2};
use aplab_core::cutproject::{
    enumerate, fish_block_spans, fish_set, int_elem, integer_lattice, pair_sum_coverage,
    visible_points, BlockKind, PointSet, Scheme, SchemeFamily, Window,
};
use aplab_core::ggt::{
    bs_distortion, bs_word_length, cartan_syndetic, ms_rho, quasi_action_defects, word_ball,
    WordFamily, WordGroup,
};
use aplab_core::hull::{
    ergodic_average, flc_patches, unimodularity_inequality_check, AverageWindow, Bump, Patch,
    Profile, TestFunction,
};
use aplab_core::stationary::{
    convergence_report, simulate_series, trajectories_csv, AffineWalkConfig,
};
use aplab_core::verify::{
    delone_parameters, discreteness_chain, find_ag3_witness, local_finiteness_profile,
    reverify_ag3, square_generators,
};
use aplab_core::Error;

const MIN_PACKING: f64 = 0.1;
const RHO_RESIDUAL: f64 = 2.0;
const FISH_GAP: f64 = 0.5;
const CARTAN_TOL: f64 = 1e-9;
const WALK_LIMIT_TOL: f64 = 1e-6;
const RATIO_MARGIN: f64 = 0.05;

fn report(n: u32, ok: bool, limit: Duration, start: Instant, detail: String) {
    let t = start.elapsed();
    let pass = ok && t < limit;
    println!(
        "criterion {n}: {} ({detail}) [{:.2}s of {}s]",
        if pass { "PASS" } else { "FAIL" },
        t.as_secs_f64(),
        limit.as_secs()
    );
    assert!(ok, "criterion {n} failed: {detail}");
    assert!(t < limit, "criterion {n} over time: {t:?} > {limit:?}");
}

fn sqrt2(radius: f64) -> PointSet {
    enumerate(&Scheme::sqrt2_line(5.0).unwrap(), radius).unwrap()
}

fn int(x: i64) -> GroupElem {
    GroupElem::scalar(int_elem(x))
}

/// Minimum gap between distinct core points, from the sorted embeddings.
fn brute_min_gap(p: &PointSet) -> f64 {
    let mut xs: Vec<f64> = p.core_points().iter().map(|g| g.physical().unwrap()[0]).collect();
    xs.sort_by(f64::total_cmp);
    xs.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min)
}

#[test]
fn criterion_01_model_set_axioms() {
    let start = Instant::now();
    let p = sqrt2(200.0);
    let d = delone_parameters(&p).unwrap();
    let oracle = brute_min_gap(&p);
    let w = find_ag3_witness(&p, d.covering_radius, None).unwrap();
    let rechecked = reverify_ag3(&p, &w).unwrap();
    let ok = d.packing_radius >= MIN_PACKING
        && (d.packing_radius - oracle).abs() <= 1e-12
        && d.covering_radius.is_finite()
        && rechecked > 0
        && rechecked == w.products_checked;
    report(
        1,
        ok,
        Duration::from_secs(10),
        start,
        format!(
            "r = {:.4} (oracle {:.4}), R = {:.4}, |F| = {}, {} products re-verified on core {:.1}",
            d.packing_radius,
            oracle,
            d.covering_radius,
            w.f.len(),
            rechecked,
            w.verified_core_radius
        ),
    );
}

#[test]
fn criterion_02_discreteness_chain() {
    let start = Instant::now();
    let heis = Scheme::new(SchemeFamily::HeisQuadratic, 2, Window::symmetric(1.0, 3).unwrap()).unwrap();
    let cases: Vec<(&str, PointSet, f64, f64)> = vec![
        ("Z", integer_lattice(1, 1, 100.0).unwrap(), 3.0, 4.0),
        ("fish", fish_set(10).unwrap(), 3.0, 4.0),
        ("quad-line", sqrt2(200.0), 2.0, 1.0),
        ("heis", enumerate(&heis, 8.0).unwrap(), 1.0, 1.0),
    ];
    let mut ok = true;
    let mut detail = Vec::new();
    for (name, p, rho, k) in &cases {
        let c = discreteness_chain(p, *rho, *k).unwrap();
        ok &= c.holds() && p.len() > 10;
        detail.push(format!("{name} ({} points): {} violations {:?}", p.len(), c.violations.len(), c.violations));
    }
    let (p1, p2) = (sqrt2(200.0), sqrt2(400.0));
    let a = local_finiteness_profile(&p1, 6, 1.0, 1.0, None).unwrap();
    let b = local_finiteness_profile(&p2, 6, 1.0, 1.0, Some(a.centers_radius)).unwrap();
    ok &= a.c_k == b.c_k && a.c_k > 0;
    detail.push(format!("C_K(Λ^6) = {} at radius 200, {} at 400", a.c_k, b.c_k));
    report(2, ok, Duration::from_secs(60), start, detail.join("; "));
}

#[test]
fn criterion_03_visible_points_negative_control() {
    let start = Instant::now();
    let v = visible_points(200).unwrap();
    let (failed, pair) = match find_ag3_witness(&v, 1.0, None) {
        Err(Error::Ag3Failed(f)) => (true, format!("{} + {}", f.pair.0, f.pair.1)),
        Err(e) => (false, format!("unexpected error {e}")),
        Ok(_) => (false, "witness found".into()),
    };
    let cov = pair_sum_coverage(&v, 100).unwrap();
    let ok = failed && cov.complete() && cov.targets == 201 * 201;
    report(
        3,
        ok,
        Duration::from_secs(30),
        start,
        format!("AG3 fails on {pair}; V+V covers {} of {} box points", cov.targets - cov.uncovered.len(), cov.targets),
    );
}

#[test]
fn criterion_04_milnor_schwarz() {
    let start = Instant::now();
    let p = sqrt2(200.0);
    let k = 0.7;
    let f = square_generators(&p, k).unwrap();
    let t = ms_rho(&p, k, &f, 10, 1 << 22).unwrap();
    let z = integer_lattice(1, 1, 60.0).unwrap();
    let zt = ms_rho(&z, 2.0, &[int(-1), int(0), int(1)], 10, 1 << 22).unwrap();
    // oracle: the farthest integer in [−2n, 2n] needs 2n unit steps
    let z_exact = zt.pairs.iter().all(|&(n, r)| r == (2 * n as i64).unsigned_abs() as usize);
    let ok = t.pairs.len() == 11 && t.is_monotone() && t.max_residual <= RHO_RESIDUAL && z_exact;
    report(
        4,
        ok,
        Duration::from_secs(60),
        start,
        format!(
            "rho = {:?}, slope {:.3}, residual {:.3}; Z control exact: {z_exact}",
            t.pairs.iter().map(|p| p.1).collect::<Vec<_>>(),
            t.slope,
            t.max_residual
        ),
    );
}

#[test]
fn criterion_05_quasi_action_defect() {
    let start = Instant::now();
    let p = sqrt2(200.0);
    let d = delone_parameters(&p).unwrap();
    let w = find_ag3_witness(&p, d.covering_radius, None).unwrap();
    let r = quasi_action_defects(&p, &w, 2, 2, 1000, 10.0, 2024).unwrap();
    let ok = r.samples >= 1000 && r.violations == 0 && r.delta == w.max_norm;
    report(
        5,
        ok,
        Duration::from_secs(30),
        start,
        format!(
            "{} samples, max defect {:.4} vs 4(k+l)δ = {:.4}, δ = {:.4}",
            r.samples, r.max_defect, r.bound, r.delta
        ),
    );
}

/// Shortest path to `a^{2^n}` through elements of at most two syllables,
/// on the model `Z[1/2] ⋊ Z` with `(t, s)(t', s') = (t + 2^s t', s + s')`.
/// `t` is stored as `8t` since admissible elements have denominators ≤ 8.
fn constrained_oracle(n: u32) -> usize {
    let m_cap = 1i64 << (n + 1);
    let admissible = |t8: i64, s: i64| -> bool {
        let e = if t8 == 0 { 0 } else { 3 - i64::from(t8.trailing_zeros().min(3)) };
        let p = e.max(-s).max(0);
        let q = s + p;
        let m = if t8 == 0 { 0 } else { (t8 << p) >> 3 };
        let syll = p + q + i64::from(t8 != 0);
        syll <= 2 && p <= 3 && q <= 3 && m.abs() <= m_cap
    };
    let target = (8i64 << n, 0i64);
    let mut dist = HashMap::from([((0i64, 0i64), 0usize)]);
    let mut queue = VecDeque::from([(0i64, 0i64)]);
    while let Some((t8, s)) = queue.pop_front() {
        let d = dist[&(t8, s)];
        // right multiplication by a^{±1} adds ±2^s; by b^{±1} shifts s
        let mut next = vec![(t8, s + 1), (t8, s - 1)];
        if s >= -3 {
            let step = 8i64 << (s + 3) >> 3;
            next.push((t8 + step, s));
            next.push((t8 - step, s));
        }
        for h in next {
            if dist.contains_key(&h) || !admissible(h.0, h.1) {
                continue;
            }
            if h == target {
                return d + 1;
            }
            dist.insert(h, d + 1);
            queue.push_back(h);
        }
    }
    panic!("a^(2^{n}) unreachable");
}

#[test]
fn criterion_06_bs_distortion() {
    let start = Instant::now();
    let mut ok = true;
    let mut detail = Vec::new();
    for n in 0..=4u32 {
        let word = Bs::conjugation_word(n as usize);
        let explicit = Bs::from_word(&word).unwrap() == Bs::a_two_pow(n) && word.len() == 2 * n as usize + 1;
        let bfs = bs_word_length(n, 1 << 22).unwrap();
        ok &= explicit && bfs <= 2 * n as usize + 1;
        detail.push(format!("|a^{}| = {bfs}", 1u32 << n));
    }
    let mut prev = 0;
    let mut lens = Vec::new();
    for n in 8..=14u32 {
        let d = bs_distortion(n, 2, 1 << 22).unwrap();
        let oracle = constrained_oracle(n);
        ok &= d.constrained_length == oracle
            && d.constrained_length >= prev
            && d.constrained_length >= 1 << (n - 3)
            && d.unconstrained_upper <= 2 * n as usize + 1;
        prev = d.constrained_length;
        lens.push(d.constrained_length);
    }
    detail.push(format!("constrained k=2 for n=8..14: {lens:?}"));
    report(6, ok, Duration::from_secs(120), start, detail.join(", "));
}

#[test]
fn criterion_07_fish_two_limits() {
    let start = Instant::now();
    let blocks = 12;
    let p = fish_set(blocks).unwrap();
    // Birkhoff averages of Pf are density × ∫f: with ∫f = 6 they are 3 on
    // runs of gap 2 and 2 on runs of gap 3
    let f = TestFunction::single(Bump::new(vec![0.0], 3.5, Profile::SmoothIndicator { inner: 2.5 }).unwrap());
    let support = 3.5;
    let pinned = |kind: BlockKind| {
        fish_block_spans(blocks)
            .into_iter()
            .filter(|s| s.kind == kind && s.half_length() > support + 4.0)
            .map(|s| AverageWindow {
                center: s.midpoint(),
                radius: s.half_length() - support - 1.0,
            })
            .collect::<Vec<_>>()
    };
    let (twos, threes) = (pinned(BlockKind::Twos), pinned(BlockKind::Threes));
    let a2 = ergodic_average(&p, &f, &twos, 0.01).unwrap();
    let a3 = ergodic_average(&p, &f, &threes, 0.01).unwrap();
    let min2 = a2.iter().map(|x| x.1).fold(f64::INFINITY, f64::min);
    let max3 = a3.iter().map(|x| x.1).fold(f64::NEG_INFINITY, f64::max);
    let cat = flc_patches(&p, 7.0).unwrap();
    let all2 = Patch::new((-3..=3).map(|i| int(2 * i)).collect());
    let all3 = Patch::new((-2..=2).map(|i| int(3 * i)).collect());
    let both = cat.count_of(&all2) > 0 && cat.count_of(&all3) > 0;
    let ok = !twos.is_empty() && !threes.is_empty() && min2 - max3 >= FISH_GAP && both;
    report(
        7,
        ok,
        Duration::from_secs(10),
        start,
        format!(
            "{} two-windows min {:.4}, {} three-windows max {:.4}; ρ=7 catalog of {} has both pure patches: {both}",
            twos.len(),
            min2,
            threes.len(),
            max3,
            cat.len()
        ),
    );
}

#[test]
fn criterion_08_periodization_inequality() {
    let start = Instant::now();
    let f = TestFunction(vec![
        (1.0, Bump::triangle(vec![0.0], 1.5).unwrap()),
        (0.5, Bump::new(vec![1.0], 2.0, Profile::SmoothIndicator { inner: 0.5 }).unwrap()),
    ]);
    let cases = [
        ("Z", integer_lattice(1, 1, 200.0).unwrap(), 0.5),
        ("fish", fish_set(12).unwrap(), 1.5),
        ("quad-line", sqrt2(200.0), 0.25),
    ];
    let mut ok = true;
    let mut detail = Vec::new();
    for (name, p, r) in &cases {
        let w = find_ag3_witness(p, *r, None).unwrap();
        // ‖g‖ + ‖t‖ + 3 must stay within the verified core
        let reach = (w.verified_core_radius - 3.0) / 2.0;
        let samples: Vec<GroupElem> = p.points_within(reach).into_iter().cloned().collect();
        let u = unimodularity_inequality_check(p, &w, &f, &samples, &samples).unwrap();
        ok &= u.violations.is_empty() && u.samples == samples.len() * samples.len();
        detail.push(format!("{name}: {} samples, min slack {:.3e}, {} violations", u.samples, u.min_slack, u.violations.len()));
    }
    report(8, ok, Duration::from_secs(30), start, detail.join("; "));
}

#[test]
fn criterion_09_cartan_gaps() {
    let start = Instant::now();
    let grid: Vec<GroupElem> = (0..=400).map(|i| GroupElem::Sl2(Sl2::diagonal(i as f64 * 0.05))).collect();
    let g = cartan_syndetic(&grid, CARTAN_TOL).unwrap();
    let sl2z = WordGroup::standard(WordFamily::Sl2Z).unwrap();
    let ball: Vec<GroupElem> = word_ball(&sl2z, 6, 1 << 22).unwrap().into_iter().map(|x| x.0).collect();
    let b = cartan_syndetic(&ball, CARTAN_TOL).unwrap();
    let ok = g.violations.is_empty() && b.violations.is_empty();
    report(
        9,
        ok,
        Duration::from_secs(30),
        start,
        format!(
            "grid: {} gaps, max {:.4}; SL2(Z) ball of {}: {} distinct t, max gap {:.4}; violations {} + {}",
            g.gaps.len(),
            g.max_gap,
            ball.len(),
            b.ts.len(),
            b.max_gap,
            g.violations.len(),
            b.violations.len()
        ),
    );
}

#[test]
fn criterion_10_affine_walk() {
    let start = Instant::now();
    let det = AffineWalkConfig::new(vec![(1.0, -1.0, 1.0)], 1, 1, 60).unwrap();
    let tr = simulate_series(&det).unwrap();
    let limit = 1.0 / (1.0 - (-1.0f64).exp());
    // oracle: partial sums of the geometric series Σ e^{−k}
    let partial: f64 = (0..60).map(|k| (-(k as f64)).exp()).sum();
    let b_inf = *tr[0].b.last().unwrap();
    let det_ok = (b_inf - limit).abs() <= WALK_LIMIT_TOL && (b_inf - partial).abs() <= 1e-12;

    let cfg = AffineWalkConfig::new(vec![(1.0, -1.0, 0.5), (-2.0, 0.3, 0.3), (0.5, -0.2, 0.2)], 77, 1000, 60).unwrap();
    let t1 = simulate_series(&cfg).unwrap();
    let t2 = simulate_series(&cfg).unwrap();
    let stable = trajectories_csv(&t1) == trajectories_csv(&t2);
    let c = convergence_report(&cfg, &t1, RATIO_MARGIN).unwrap();
    let ratio = c.fitted_ratio.unwrap_or(f64::INFINITY);
    let ok = det_ok && stable && c.contractive && c.trials >= 1000 && ratio <= c.q + RATIO_MARGIN;
    report(
        10,
        ok,
        Duration::from_secs(30),
        start,
        format!(
            "B_60 = {b_inf:.9} vs {limit:.9}; q = {:.4}, fitted ratio {ratio:.4} over {} trials; reruns identical: {stable}",
            c.q, c.trials
        ),
    );
}
