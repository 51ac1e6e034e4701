//! The zero-bias transformation of finite-support mean-zero laws.
//!
//! For X with mean zero and variance σ², the zero-bias law X* has density
//! g*(x) = σ⁻² E[X 1(X > x)], which for an atomic X is constant between
//! consecutive atoms. The result is therefore a piecewise-constant density
//! (piecewise-linear CDF) whose breakpoints are exactly the input atoms.

use crate::dist::{check_weights, merge_tol, require_centered, FiniteDist};
use crate::error::{Error, Result};
use crate::tolerances::{CENTER_TOL, MASS_TOL};
use serde::{Deserialize, Serialize};

/// A law with piecewise-constant density on `[b₀, b_{m−1}]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawZeroBias")]
pub struct ZeroBiasDist {
    breakpoints: Vec<f64>,
    densities: Vec<f64>,
}

#[derive(Deserialize)]
struct RawZeroBias {
    breakpoints: Vec<f64>,
    densities: Vec<f64>,
}

impl TryFrom<RawZeroBias> for ZeroBiasDist {
    type Error = Error;

    fn try_from(raw: RawZeroBias) -> Result<Self> {
        ZeroBiasDist::new(raw.breakpoints, raw.densities)
    }
}

impl ZeroBiasDist {
    pub fn new(breakpoints: Vec<f64>, densities: Vec<f64>) -> Result<Self> {
        if breakpoints.len() < 2 || densities.len() + 1 != breakpoints.len() {
            return Err(Error::InvalidDistribution(format!(
                "{} breakpoints need {} densities, got {}",
                breakpoints.len(),
                breakpoints.len().saturating_sub(1),
                densities.len()
            )));
        }
        if breakpoints.iter().chain(&densities).any(|v| !v.is_finite()) {
            return Err(Error::InvalidDistribution("non-finite value".into()));
        }
        if breakpoints.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidDistribution(
                "breakpoints are not strictly increasing".into(),
            ));
        }
        if densities.iter().any(|&d| d < 0.0) {
            return Err(Error::InvalidDistribution("negative density".into()));
        }
        let z = Self {
            breakpoints,
            densities,
        };
        let mass = z.total_mass();
        if (mass - 1.0).abs() > MASS_TOL {
            return Err(Error::InvalidDistribution(format!(
                "density integrates to {mass}"
            )));
        }
        Ok(z)
    }

    /// Uniform law on [a, b].
    pub fn uniform(a: f64, b: f64) -> Result<Self> {
        Self::new(vec![a, b], vec![1.0 / (b - a)])
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn densities(&self) -> &[f64] {
        &self.densities
    }

    pub fn min(&self) -> f64 {
        self.breakpoints[0]
    }

    pub fn max(&self) -> f64 {
        self.breakpoints[self.breakpoints.len() - 1]
    }

    /// `(left, right, density)` for each segment.
    pub fn segments(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        self.breakpoints
            .windows(2)
            .zip(&self.densities)
            .map(|(w, &d)| (w[0], w[1], d))
    }

    fn total_mass(&self) -> f64 {
        self.segments().map(|(a, b, d)| d * (b - a)).sum()
    }

    /// CDF values at each breakpoint.
    pub fn cumulative(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.breakpoints.len());
        let mut acc = 0.0;
        out.push(0.0);
        for (a, b, d) in self.segments() {
            acc += d * (b - a);
            out.push(acc);
        }
        *out.last_mut().unwrap() = 1.0;
        out
    }

    pub fn cdf(&self, x: f64) -> f64 {
        if x <= self.min() {
            return 0.0;
        }
        if x >= self.max() {
            return 1.0;
        }
        let k = self.breakpoints.partition_point(|&b| b <= x) - 1;
        let below: f64 = self
            .segments()
            .take(k)
            .map(|(a, b, d)| d * (b - a))
            .sum();
        (below + self.densities[k] * (x - self.breakpoints[k])).min(1.0)
    }

    pub fn density(&self, x: f64) -> f64 {
        if x < self.min() || x >= self.max() {
            return 0.0;
        }
        let k = self.breakpoints.partition_point(|&b| b <= x) - 1;
        self.densities[k]
    }

    /// E[Yᵏ] by exact segment integration.
    pub fn raw_moment(&self, k: i32) -> f64 {
        self.segments()
            .map(|(a, b, d)| d * (b.powi(k + 1) - a.powi(k + 1)) / f64::from(k + 1))
            .sum()
    }

    /// The law of aY.
    pub fn scale(&self, a: f64) -> Result<Self> {
        if a == 0.0 {
            return Err(Error::ZeroScale);
        }
        let mut breakpoints: Vec<f64> = self.breakpoints.iter().map(|&b| a * b).collect();
        let mut densities: Vec<f64> = self.densities.iter().map(|&d| d / a.abs()).collect();
        if a < 0.0 {
            breakpoints.reverse();
            densities.reverse();
        }
        Ok(Self {
            breakpoints,
            densities,
        })
    }
}

/// The zero-bias law of a mean-zero, positive-variance `d`.
pub fn zero_bias(d: &FiniteDist) -> Result<ZeroBiasDist> {
    require_centered(d)?;
    if d.len() < 2 {
        return Err(Error::DegenerateDistribution(0.0));
    }
    let support = d.support();
    let probs = d.probs();
    let m = support.len();

    // E[X 1(X > aₖ)] from whichever side has no sign changes.
    let mut upper = vec![0.0; m];
    let mut acc = 0.0;
    for k in (0..m).rev() {
        upper[k] = acc;
        acc += support[k] * probs[k];
    }
    let mut lower = vec![0.0; m];
    acc = 0.0;
    for k in 0..m {
        acc += support[k] * probs[k];
        lower[k] = -acc;
    }
    let raw: Vec<f64> = (0..m - 1)
        .map(|k| {
            let v = if support[k + 1] >= 0.0 { upper[k] } else { lower[k] };
            v.max(0.0)
        })
        .collect();
    // Normalizing by the realized mass equals dividing by σ² for an exactly
    // centered input and absorbs the residual mean of a gated one.
    let mass: f64 = support
        .windows(2)
        .zip(&raw)
        .map(|(w, r)| r * (w[1] - w[0]))
        .sum();
    if mass <= 0.0 {
        return Err(Error::DegenerateDistribution(0.0));
    }
    Ok(ZeroBiasDist {
        breakpoints: support.to_vec(),
        densities: raw.into_iter().map(|r| r / mass).collect(),
    })
}

/// Zero-bias law of the mixture Σ wₛ mₛ of mean-zero components, formed as
/// the ν-mixture of the component zero-bias laws with ν-weights
/// wₛσₛ²/σ_μ². Point-mass-at-zero components have σₛ² = 0 and drop out.
pub fn zero_bias_mixture(weights: &[f64], components: &[FiniteDist]) -> Result<ZeroBiasDist> {
    check_weights(weights, components.len())?;
    let mut variances = Vec::with_capacity(components.len());
    for (index, c) in components.iter().enumerate() {
        let m = c.moments();
        if m.mean.abs() > CENTER_TOL {
            return Err(Error::NonCenteredComponent {
                index,
                mean: m.mean,
            });
        }
        variances.push(if c.len() > 1 { m.variance } else { 0.0 });
    }
    let mix_var: f64 = weights.iter().zip(&variances).map(|(w, v)| w * v).sum();
    if mix_var <= 0.0 {
        return Err(Error::DegenerateMixture);
    }
    let mut parts = Vec::new();
    for ((&w, &v), c) in weights.iter().zip(&variances).zip(components) {
        let nu = w * v / mix_var;
        if nu > 0.0 {
            parts.push((nu, zero_bias(c)?));
        }
    }
    Ok(mix_zero_bias(&parts))
}

/// The ν-mixture of piecewise-constant-density laws.
pub fn mix_zero_bias(parts: &[(f64, ZeroBiasDist)]) -> ZeroBiasDist {
    let mut grid: Vec<f64> = parts
        .iter()
        .flat_map(|(_, z)| z.breakpoints.iter().copied())
        .collect();
    grid.sort_unstable_by(f64::total_cmp);
    let tol = merge_tol(grid[grid.len() - 1] - grid[0]);
    grid.dedup_by(|b, a| *b - *a < tol);
    let densities: Vec<f64> = grid
        .windows(2)
        .map(|w| {
            let mid = 0.5 * (w[0] + w[1]);
            parts.iter().map(|(nu, z)| nu * z.density(mid)).sum()
        })
        .collect();
    let mass: f64 = grid
        .windows(2)
        .zip(&densities)
        .map(|(w, d)| d * (w[1] - w[0]))
        .sum();
    ZeroBiasDist {
        breakpoints: grid,
        densities: densities.into_iter().map(|d| d / mass).collect(),
    }
}

/// E|Y| for a piecewise-constant-density law, splitting the segment that
/// straddles zero.
pub fn zb_mean_abs(z: &ZeroBiasDist) -> f64 {
    z.segments()
        .map(|(a, b, d)| {
            if a >= 0.0 {
                d * (b * b - a * a) / 2.0
            } else if b <= 0.0 {
                d * (a * a - b * b) / 2.0
            } else {
                d * (a * a + b * b) / 2.0
            }
        })
        .sum()
}
