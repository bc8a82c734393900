//! The contracting random walk on the `ax+b` group.
//!
//! With increments `(b_k, a_k)` drawn from a finitely supported `μ`, the left
//! products `g_1⋯g_n = (B_n, a_1 + … + a_n)` have translation part
//! `B_n = Σ_{k≤n} e^{A_k} b_k` where `A_1 = 0` and `A_k = a_1 + … + a_{k−1}`.
//! When `q = Σ p_i e^{a_i} < 1` the series converges almost surely.

use rand::distributions::{Distribution, WeightedIndex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{aff_mul, Affine};
use crate::error::{Error, Result};

/// Name of the generator used for every trial, recorded in outputs.
pub const RNG_NAME: &str = "ChaCha8 (rand_chacha 0.3), trial seed = seed XOR trial, seed_from_u64";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub b: f64,
    pub a: f64,
    pub prob: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AffineWalkConfig {
    pub support: Vec<Atom>,
    pub seed: u64,
    pub trials: usize,
    pub horizon: usize,
}

impl AffineWalkConfig {
    pub fn new(support: Vec<(f64, f64, f64)>, seed: u64, trials: usize, horizon: usize) -> Result<Self> {
        let cfg = AffineWalkConfig {
            support: support.into_iter().map(|(b, a, prob)| Atom { b, a, prob }).collect(),
            seed,
            trials,
            horizon,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.support.is_empty() {
            return Err(Error::InvalidInput("empty support".into()));
        }
        let mut total = 0.0;
        for at in &self.support {
            if !(at.prob > 0.0) || !at.b.is_finite() || !at.a.is_finite() {
                return Err(Error::InvalidInput(format!(
                    "support atom ({}, {}) with probability {} is invalid",
                    at.b, at.a, at.prob
                )));
            }
            total += at.prob;
        }
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidInput(format!("probabilities sum to {total}, not 1")));
        }
        if self.trials == 0 || self.horizon == 0 {
            return Err(Error::InvalidInput("trials and horizon must be positive".into()));
        }
        Ok(())
    }

    pub fn max_abs_b(&self) -> f64 {
        self.support.iter().map(|at| at.b.abs()).fold(0.0, f64::max)
    }
}

/// `q = Σ p_i e^{a_i}` and whether it is below 1.
pub fn contraction_factor(cfg: &AffineWalkConfig) -> (f64, bool) {
    let q: f64 = cfg.support.iter().map(|at| at.prob * at.a.exp()).sum();
    (q, q < 1.0)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Trajectory {
    pub trial: usize,
    /// `B_1, …, B_n`.
    pub b: Vec<f64>,
    /// `a_1 + … + a_n` for each `n`, the `a`-part of `g_1⋯g_n`.
    pub a: Vec<f64>,
    /// `e^{A_k} b_k`.
    pub terms: Vec<f64>,
    /// Largest `|B_n − b-part of g_1⋯g_n|` along the trajectory.
    pub product_mismatch: f64,
}

/// Runs every trial; trial `i` draws from ChaCha8 seeded with `seed ⊕ i`.
/// Each step is also multiplied out with the group law and compared with
/// the series.
pub fn simulate_series(cfg: &AffineWalkConfig) -> Result<Vec<Trajectory>> {
    cfg.validate()?;
    let dist = WeightedIndex::new(cfg.support.iter().map(|at| at.prob))
        .map_err(|e| Error::InvalidInput(format!("weights: {e}")))?;
    (0..cfg.trials)
        .map(|trial| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ trial as u64);
            let mut t = Trajectory {
                trial,
                b: Vec::with_capacity(cfg.horizon),
                a: Vec::with_capacity(cfg.horizon),
                terms: Vec::with_capacity(cfg.horizon),
                product_mismatch: 0.0,
            };
            let (mut big_a, mut big_b) = (0.0f64, 0.0f64);
            let mut prod = Affine::identity();
            for n in 1..=cfg.horizon {
                let at = &cfg.support[dist.sample(&mut rng)];
                let term = big_a.exp() * at.b;
                if !term.is_finite() {
                    return Err(Error::Overflow(format!(
                        "e^A overflow at step {n} of trial {trial}"
                    )));
                }
                big_b += term;
                big_a += at.a;
                prod = aff_mul(&prod, &Affine::new(at.b, at.a)?)?.0;
                let scale = 1.0f64.max(big_b.abs());
                t.product_mismatch = t.product_mismatch.max((prod.b - big_b).abs() / scale);
                t.terms.push(term);
                t.b.push(big_b);
                t.a.push(big_a);
            }
            Ok(t)
        })
        .collect()
}

/// Plot-ready `trial,n,B_n,A_n` rows with the generator named in a comment.
pub fn trajectories_csv(traj: &[Trajectory]) -> String {
    let mut s = format!("# rng: {RNG_NAME}\ntrial,n,B_n,A_n\n");
    for t in traj {
        for (i, (b, a)) in t.b.iter().zip(&t.a).enumerate() {
            s.push_str(&format!("{},{},{:e},{:e}\n", t.trial, i + 1, b, a));
        }
    }
    s
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ConvergenceReport {
    pub q: f64,
    pub contractive: bool,
    pub trials: usize,
    pub horizon: usize,
    /// `(n, mean_i |B_{2n} − B_n|, 3·max|b|·q^{n−1}/(1−q))`.
    pub tail_table: Vec<(usize, f64, f64)>,
    pub fitted_ratio: Option<f64>,
    /// `Some(ratio ≤ q + margin)` for contractive input, `None` otherwise.
    pub verdict: Option<bool>,
    pub ratio_margin: f64,
    /// Tail rows above their bound.
    pub tail_bound_violations: usize,
    /// `k` with `|mean e^{A_k} − q^{k−1}|` beyond three standard errors.
    pub moment_violations: Vec<usize>,
    pub max_product_mismatch: f64,
    pub mean_limit: f64,
}

/// Tail decay of the simulated series and its geometric rate, fitted by
/// least squares on `ln mean|B_{2n} − B_n|` over `5 ≤ n ≤ horizon/2`.
pub fn convergence_report(
    cfg: &AffineWalkConfig,
    traj: &[Trajectory],
    ratio_margin: f64,
) -> Result<ConvergenceReport> {
    if traj.is_empty() {
        return Err(Error::InvalidInput("no trajectories".into()));
    }
    let (q, contractive) = contraction_factor(cfg);
    let horizon = traj.iter().map(|t| t.b.len()).min().unwrap_or(0);
    let trials = traj.len() as f64;
    let bmax = cfg.max_abs_b();
    let mut tail_table = Vec::new();
    for n in 1..=horizon / 2 {
        let mean = traj
            .iter()
            .map(|t| t.terms[n..2 * n].iter().sum::<f64>().abs())
            .sum::<f64>()
            / trials;
        let bound = if contractive {
            3.0 * bmax * q.powi(n as i32 - 1) / (1.0 - q)
        } else {
            f64::INFINITY
        };
        tail_table.push((n, mean, bound));
    }
    let tail_bound_violations = tail_table
        .iter()
        .filter(|&&(n, m, b)| n >= 5 && m > b)
        .count();
    let fit: Vec<(f64, f64)> = tail_table
        .iter()
        .filter(|&&(n, m, _)| n >= 5 && m > 0.0)
        .map(|&(n, m, _)| (n as f64, m.ln()))
        .collect();
    let all_zero = tail_table.iter().filter(|r| r.0 >= 5).all(|r| r.1 == 0.0);
    let fitted_ratio = if fit.len() >= 2 {
        let k = fit.len() as f64;
        let sx: f64 = fit.iter().map(|p| p.0).sum();
        let sy: f64 = fit.iter().map(|p| p.1).sum();
        let sxx: f64 = fit.iter().map(|p| p.0 * p.0).sum();
        let sxy: f64 = fit.iter().map(|p| p.0 * p.1).sum();
        Some(((k * sxy - sx * sy) / (k * sxx - sx * sx)).exp())
    } else if all_zero && horizon >= 10 {
        Some(0.0)
    } else {
        None
    };
    let verdict = if contractive {
        fitted_ratio.map(|r| r <= q + ratio_margin)
    } else {
        None
    };
    // E[e^{A_k}] = q^{k−1}, A_k being the sum of the first k − 1 increments
    let mut moment_violations = Vec::new();
    for k in 1..=horizon.min(12) {
        let vals: Vec<f64> = traj
            .iter()
            .map(|t| if k == 1 { 1.0 } else { t.a[k - 2].exp() })
            .collect();
        let mean = vals.iter().sum::<f64>() / trials;
        let var = vals.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (trials - 1.0).max(1.0);
        let se = (var / trials).sqrt();
        let target = q.powi(k as i32 - 1);
        if (mean - target).abs() > 3.0 * se + 1e-12 * target.max(1.0) {
            moment_violations.push(k);
        }
    }
    Ok(ConvergenceReport {
        q,
        contractive,
        trials: traj.len(),
        horizon,
        tail_table,
        fitted_ratio,
        verdict,
        ratio_margin,
        tail_bound_violations,
        moment_violations,
        max_product_mismatch: traj.iter().map(|t| t.product_mismatch).fold(0.0, f64::max),
        mean_limit: traj.iter().map(|t| t.b[horizon - 1]).sum::<f64>() / trials,
    })
}
