//! Brute-force reference computations shared by the integration suites.
//! None of these call into the exact kernels under test.
#![allow(dead_code)]

use rayon::prelude::*;
use zbstein::FiniteDist;

pub fn phi(x: f64) -> f64 {
    0.5 * libm::erfc(-x / std::f64::consts::SQRT_2)
}

pub fn normal_density(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (2.0 * std::f64::consts::PI).sqrt()
}

/// P(X ≤ x) by direct summation.
pub fn step_cdf(d: &FiniteDist, x: f64) -> f64 {
    d.iter().filter(|(a, _)| *a <= x).map(|(_, p)| p).sum()
}

/// P(X ≤ x) by binary search over cumulative sums.
pub struct StepCdf {
    support: Vec<f64>,
    cum: Vec<f64>,
}

impl StepCdf {
    pub fn new(d: &FiniteDist) -> Self {
        let mut acc = 0.0;
        let cum = d
            .probs()
            .iter()
            .map(|p| {
                acc += p;
                acc
            })
            .collect();
        Self {
            support: d.support().to_vec(),
            cum,
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        let k = self.support.partition_point(|a| *a <= x);
        if k == 0 {
            0.0
        } else {
            self.cum[k - 1]
        }
    }
}

/// CDF of the zero-bias law of a centered d: G*(t) = E[X min(X, t)] / σ².
pub struct ZeroBiasCdf {
    support: Vec<f64>,
    probs: Vec<f64>,
    variance: f64,
}

impl ZeroBiasCdf {
    pub fn new(d: &FiniteDist) -> Self {
        let variance = d.iter().map(|(x, p)| x * x * p).sum();
        Self {
            support: d.support().to_vec(),
            probs: d.probs().to_vec(),
            variance,
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        let lo = self.support[0];
        let hi = self.support[self.support.len() - 1];
        if t <= lo {
            return 0.0;
        }
        if t >= hi {
            return 1.0;
        }
        let s: f64 = self
            .support
            .iter()
            .zip(&self.probs)
            .map(|(x, p)| p * x * x.min(t))
            .sum();
        s / self.variance
    }
}

/// Midpoint Riemann sum of |f − g| over [lo, hi] with n cells.
pub fn riemann_l1(f: impl Fn(f64) -> f64 + Sync, g: impl Fn(f64) -> f64 + Sync, lo: f64, hi: f64, n: usize) -> f64 {
    let h = (hi - lo) / n as f64;
    let chunk = 4096;
    (0..n.div_ceil(chunk))
        .into_par_iter()
        .map(|c| {
            let end = ((c + 1) * chunk).min(n);
            (c * chunk..end)
                .map(|i| {
                    let x = lo + (i as f64 + 0.5) * h;
                    (f(x) - g(x)).abs()
                })
                .sum::<f64>()
        })
        .sum::<f64>()
        * h
}

/// Riemann estimate of ‖F_d − Φ‖₁ over the support padded by 10 on both
/// sides (the normal tails beyond contribute below 1e-23).
pub fn riemann_step_normal(d: &FiniteDist, n: usize) -> f64 {
    let f = StepCdf::new(d);
    riemann_l1(|x| f.eval(x), phi, d.min() - 10.0, d.max() + 10.0, n)
}

/// Brute-force tensor-grid evaluation of
/// (σ√(2π))⁻¹ ∫_{−1/2}^{1/2} ∫_{−L}^{L} |(ω/2)(1 − x²) + hu| e^{−x²/2} dx du
/// with midpoint cells.
pub fn tensor_a(omega: f64, h: f64, sigma: f64, nx: usize, nu: usize, half_width: f64) -> f64 {
    let dx = 2.0 * half_width / nx as f64;
    let du = 1.0 / nu as f64;
    let xs: Vec<(f64, f64)> = (0..nx)
        .map(|i| {
            let x = -half_width + (i as f64 + 0.5) * dx;
            (0.5 * omega * (1.0 - x * x), (-0.5 * x * x).exp())
        })
        .collect();
    let total: f64 = (0..nu)
        .into_par_iter()
        .map(|j| {
            let shift = h * (-0.5 + (j as f64 + 0.5) * du);
            xs.iter().map(|(q, w)| (q + shift).abs() * w).sum::<f64>()
        })
        .sum();
    total * dx * du / (sigma * (2.0 * std::f64::consts::PI).sqrt())
}

/// Moments computed by plain summation: (mean, variance, E|X|³).
pub fn raw_moments(d: &FiniteDist) -> (f64, f64, f64) {
    let mean: f64 = d.iter().map(|(x, p)| x * p).sum();
    let var: f64 = d.iter().map(|(x, p)| (x - mean).powi(2) * p).sum();
    let abs3: f64 = d.iter().map(|(x, p)| (x - mean).abs().powi(3) * p).sum();
    (mean, var, abs3)
}

/// Several midpoint Riemann sums over one grid: `eval(x)` returns the K
/// integrands at x.
pub fn riemann_many<const K: usize>(lo: f64, hi: f64, n: usize, eval: impl Fn(f64) -> [f64; K] + Sync) -> [f64; K] {
    let h = (hi - lo) / n as f64;
    let chunk = 4096;
    let sums = (0..n.div_ceil(chunk))
        .into_par_iter()
        .map(|c| {
            let mut acc = [0.0; K];
            for i in c * chunk..((c + 1) * chunk).min(n) {
                let v = eval(lo + (i as f64 + 0.5) * h);
                for k in 0..K {
                    acc[k] += v[k];
                }
            }
            acc
        })
        .reduce(|| [0.0; K], |mut a, b| {
            for k in 0..K {
                a[k] += b[k];
            }
            a
        });
    sums.map(|s| s * h)
}

/// Midpoint Riemann sums whose integrands also need Φ at the midpoint.
/// Φ is advanced cell to cell by Simpson's rule on the density and
/// re-anchored with `erfc` at the start of every chunk.
pub fn riemann_with_phi<const K: usize>(lo: f64, hi: f64, n: usize, eval: impl Fn(f64, f64) -> [f64; K] + Sync) -> [f64; K] {
    let h = (hi - lo) / n as f64;
    let chunk = 4096;
    let sums = (0..n.div_ceil(chunk))
        .into_par_iter()
        .map(|c| {
            let mut acc = [0.0; K];
            let first = c * chunk;
            let mut x = lo + (first as f64 + 0.5) * h;
            let mut big_phi = phi(x);
            let mut dens = normal_density(x);
            for _ in first..((c + 1) * chunk).min(n) {
                let v = eval(x, big_phi);
                for k in 0..K {
                    acc[k] += v[k];
                }
                let next = x + h;
                let dens_next = normal_density(next);
                big_phi += h / 6.0 * (dens + 4.0 * normal_density(x + 0.5 * h) + dens_next);
                x = next;
                dens = dens_next;
            }
            acc
        })
        .reduce(|| [0.0; K], |mut a, b| {
            for k in 0..K {
                a[k] += b[k];
            }
            a
        });
    sums.map(|s| s * h)
}
