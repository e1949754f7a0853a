#![allow(dead_code)]

use std::path::PathBuf;

use markowitz::market_data::read_price_table;
use markowitz::{compute_returns, estimate_moments, MomentEstimates, SymMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

pub fn fixture_moments() -> MomentEstimates {
    let prices = read_price_table(&fixture_dir().join("portfolio.txt")).unwrap();
    estimate_moments(&compute_returns(&prices)).unwrap()
}

/// `GᵀG + εI` with `G` uniform in `[-scale, scale]`.
pub fn random_spd(rng: &mut impl Rng, n: usize, scale: f64, eps: f64) -> SymMatrix {
    let g: Vec<Vec<f64>> = (0..n)
        .map(|_| (0..n).map(|_| rng.random_range(-scale..scale)).collect())
        .collect();
    SymMatrix::from_fn(n, |i, j| {
        let s: f64 = (0..n).map(|k| g[k][i] * g[k][j]).sum();
        if i == j {
            s + eps
        } else {
            s
        }
    })
    .unwrap()
}

pub fn random_symmetric(rng: &mut impl Rng, n: usize) -> SymMatrix {
    SymMatrix::from_fn(n, |_, _| rng.random_range(-1.0..1.0)).unwrap()
}

/// Random SPD instance with returns in `[lo, hi]`.
pub fn random_moments(rng: &mut impl Rng, n: usize, scale: f64, lo: f64, hi: f64) -> MomentEstimates {
    let cov = random_spd(rng, n, scale, 1e-6 * scale * scale);
    let r = (0..n).map(|_| rng.random_range(lo..hi)).collect();
    MomentEstimates::unlabelled(r, cov).unwrap()
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Calls `visit` with every weight vector whose entries lie on the grid
/// `{-2, -1.95, …, 3}` and sum to one.
pub fn for_each_budget_point(n: usize, mut visit: impl FnMut(&[f64])) {
    let tick = |k: usize| -2.0 + 0.05 * k as f64;
    let mut partial = vec![0usize; n - 1];
    let mut w = vec![0.0; n];
    loop {
        let mut head = 0.0;
        for (slot, &k) in w.iter_mut().zip(&partial) {
            *slot = tick(k);
            head += *slot;
        }
        let last = 1.0 - head;
        if (-2.0 - 1e-9..=3.0 + 1e-9).contains(&last) {
            w[n - 1] = last;
            visit(&w);
        }
        let mut pos = 0;
        loop {
            if pos == n - 1 {
                return;
            }
            partial[pos] += 1;
            if partial[pos] <= 100 {
                break;
            }
            partial[pos] = 0;
            pos += 1;
        }
    }
}

/// Brute-force minimum variance over budget-grid points whose return is within
/// `window` of `rho`. `None` when no grid point qualifies.
pub fn grid_min_variance(m: &MomentEstimates, rho: f64, window: f64) -> Option<f64> {
    let mut best: Option<f64> = None;
    for_each_budget_point(m.assets(), |w| {
        if (w.iter().sum::<f64>() - 1.0).abs() < 1e-9
            && (dot(&m.mean_returns, w) - rho).abs() < window
        {
            let v = m.covariance.quad_form(w);
            best = Some(best.map_or(v, |b| b.min(v)));
        }
    });
    best
}

/// Target returns reachable by budget-grid points: `rᵀw` for a few in-range `w`.
pub fn reachable_targets(rng: &mut impl Rng, m: &MomentEstimates, count: usize) -> Vec<f64> {
    let n = m.assets();
    (0..count)
        .map(|_| {
            let mut w: Vec<f64> = (0..n - 1).map(|_| rng.random_range(-0.5..1.0)).collect();
            w.push(1.0 - w.iter().sum::<f64>());
            dot(&m.mean_returns, &w)
        })
        .collect()
}
