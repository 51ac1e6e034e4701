//! Seeded random laws for sweeps and property suites.

use crate::dist::{center, moments, standardize, FiniteDist};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type SeededRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Mean-zero law on `k` ≥ 2 distinct points drawn uniformly from [−5, 5],
/// with uniform random weights.
pub fn random_centered(rng: &mut impl Rng, k: usize) -> FiniteDist {
    assert!(k >= 2, "need at least two support points");
    loop {
        let support: Vec<f64> = (0..k).map(|_| rng.random_range(-5.0..5.0)).collect();
        let probs = random_weights(rng, k);
        let Ok(d) = FiniteDist::from_unsorted(support, probs) else {
            continue;
        };
        if d.len() != k || gaps_too_small(&d) {
            continue;
        }
        let d = center(&d);
        if moments(&d).variance > 1e-3 {
            return d;
        }
    }
}

/// `k` weights drawn from [0.05, 1), normalized.
pub fn random_weights(rng: &mut impl Rng, k: usize) -> Vec<f64> {
    let w: Vec<f64> = (0..k).map(|_| rng.random_range(0.05..1.0)).collect();
    let total: f64 = w.iter().sum();
    w.into_iter().map(|x| x / total).collect()
}

fn gaps_too_small(d: &FiniteDist) -> bool {
    d.support().windows(2).any(|w| w[1] - w[0] < 1e-3)
}

/// [`random_centered`] rescaled to unit variance.
pub fn random_standardized(rng: &mut impl Rng, k: usize) -> FiniteDist {
    standardize(&random_centered(rng, k)).expect("positive variance")
}

/// Mean-zero two-point law on x < 0 < y with |x|, y log-uniform in [10⁻¹, 10].
pub fn random_two_point(rng: &mut impl Rng) -> FiniteDist {
    let x = -log_uniform(rng, 1e-1, 1e1);
    let y = log_uniform(rng, 1e-1, 1e1);
    FiniteDist::two_point(x, y).expect("x < 0 < y")
}

/// x < y < 0 < z with |x|, z log-uniform in [10⁻², 10²] and y/x uniform in (0, 1).
pub fn random_qp_triple(rng: &mut impl Rng) -> (f64, f64, f64) {
    loop {
        let x = -log_uniform(rng, 1e-2, 1e2);
        let y = x * rng.random_range(0.0..1.0);
        let z = log_uniform(rng, 1e-2, 1e2);
        if x < y && y < 0.0 {
            return (x, y, z);
        }
    }
}

/// A standardized law on three points. Lattice laws use distinct integers
/// from [−5, 5]; the others use uniform reals.
pub fn random_three_point(rng: &mut impl Rng, lattice: bool) -> FiniteDist {
    if !lattice {
        return random_standardized(rng, 3);
    }
    loop {
        let mut support: Vec<f64> = (0..3).map(|_| rng.random_range(-5..=5) as f64).collect();
        support.sort_by(f64::total_cmp);
        support.dedup();
        if support.len() != 3 {
            continue;
        }
        let probs = random_weights(rng, 3);
        let d = FiniteDist::from_unsorted(support, probs).expect("valid weights");
        return standardize(&d).expect("three distinct atoms");
    }
}

pub fn log_uniform(rng: &mut impl Rng, lo: f64, hi: f64) -> f64 {
    (rng.random_range(lo.ln()..hi.ln())).exp()
}
