//! End-to-end checks of the L¹ Berry–Esseen bound on exactly convolved
//! sums, the asymptotic constant, the search over three-point laws and the
//! Bernoulli lower bound.

use crate::dist::{
    iid_normalized_sum, moments, normalized_sum_guarded, require_centered, standardize,
    FiniteDist,
};
use crate::error::{Error, Result};
use crate::functionals::{a_functional, b_functional, psi_lower_bound};
use crate::normal;
use crate::tolerances::{BOUND_SLACK, MAX_SUPPORT, PSI_HALF};
use crate::wasserstein::w1_step_normal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// ‖Fₙ − Φ‖₁ against the third-moment bound and its B-weighted refinement.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub n: usize,
    pub w1: f64,
    /// σ⁻³ Σ E|Xᵢ|³.
    pub be_bound: f64,
    /// σ⁻³ Σ B(Gᵢ) E|Xᵢ|³.
    pub bg_bound: f64,
    pub ratio_be: f64,
    pub ratio_bg: f64,
    pub sqrtn_w1: f64,
    pub a_value: Option<f64>,
}

impl BoundReport {
    /// Descriptions of every failed invariant; empty when the report is clean.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.ratio_be > 1.0 + BOUND_SLACK {
            out.push(format!("n = {}: ratio_be = {} > 1", self.n, self.ratio_be));
        }
        if self.ratio_bg > 1.0 + BOUND_SLACK {
            out.push(format!("n = {}: ratio_bg = {} > 1", self.n, self.ratio_bg));
        }
        if self.bg_bound > self.be_bound + 1e-12 * self.be_bound.max(1.0) {
            out.push(format!(
                "n = {}: bg_bound {} exceeds be_bound {}",
                self.n, self.bg_bound, self.be_bound
            ));
        }
        out
    }

    pub fn is_clean(&self) -> bool {
        self.violations().is_empty()
    }

    pub const CSV_HEADER: &'static str = "n,w1,be_bound,bg_bound,ratio_be,ratio_bg,sqrtn_w1,a_value";

    pub fn csv_row(&self) -> String {
        let a = self.a_value.map(|a| a.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{}",
            self.n, self.w1, self.be_bound, self.bg_bound, self.ratio_be, self.ratio_bg, self.sqrtn_w1, a
        )
    }

    fn new(n: usize, w1: f64, be_bound: f64, bg_bound: f64, a_value: Option<f64>) -> Self {
        Self {
            n,
            w1,
            be_bound,
            bg_bound,
            ratio_be: w1 / be_bound,
            ratio_bg: w1 / bg_bound,
            sqrtn_w1: (n as f64).sqrt() * w1,
            a_value,
        }
    }
}

/// Bound report for the normalized sum of independent centered summands.
pub fn verify_bound(components: &[FiniteDist]) -> Result<BoundReport> {
    if components.is_empty() {
        return Err(Error::InvalidDistribution("no summands".into()));
    }
    let mut variance = 0.0;
    let mut be = 0.0;
    let mut bg = 0.0;
    for c in components {
        let m = require_centered(c)?;
        variance += m.variance;
        be += m.abs_third;
        bg += b_functional(c)? * m.abs_third;
    }
    let fn_law = normalized_sum_guarded(components, MAX_SUPPORT)?;
    let sigma3 = variance.powf(1.5);
    Ok(BoundReport::new(
        components.len(),
        w1_step_normal(&fn_law),
        be / sigma3,
        bg / sigma3,
        None,
    ))
}

/// Bound report for n i.i.d. copies of g, with A(g) attached.
pub fn verify_iid(g: &FiniteDist, n: usize) -> Result<BoundReport> {
    let m = require_centered(g)?;
    let a = a_functional(g)?;
    iid_report(g, n, &m, b_functional(g)?, a)
}

fn iid_report(
    g: &FiniteDist,
    n: usize,
    m: &crate::dist::MomentSummary,
    b: f64,
    a: f64,
) -> Result<BoundReport> {
    let fn_law = iid_normalized_sum(g, n, MAX_SUPPORT)?;
    let be = m.abs_third / (m.variance.powf(1.5) * (n as f64).sqrt());
    Ok(BoundReport::new(n, w1_step_normal(&fn_law), be, b * be, Some(a)))
}

/// One i.i.d. report per n of an increasing schedule.
pub fn asymptotic_sweep(g: &FiniteDist, n_schedule: &[usize]) -> Result<Vec<BoundReport>> {
    if n_schedule.is_empty() {
        return Err(Error::DomainError("empty n schedule".into()));
    }
    if n_schedule[0] == 0 || n_schedule.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::DomainError(format!(
            "n schedule must be positive and increasing: {n_schedule:?}"
        )));
    }
    let m = require_centered(g)?;
    let b = b_functional(g)?;
    let a = a_functional(g)?;
    n_schedule
        .par_iter()
        .map(|&n| iid_report(g, n, &m, b, a))
        .collect()
}

/// Running maximum over later entries of ratio_be, i.e. sup_{n ≥ m} of
/// √n‖Fₙ − Φ‖₁σ³/E|X|³ restricted to the schedule.
pub fn cm_envelope(reports: &[BoundReport]) -> Vec<f64> {
    let mut out = vec![0.0; reports.len()];
    let mut running = f64::NEG_INFINITY;
    for (i, r) in reports.iter().enumerate().rev() {
        running = running.max(r.ratio_be);
        out[i] = running;
    }
    out
}

/// `steps` equally spaced points from `lo` to `hi` inclusive; one step
/// gives `lo` alone.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridRange {
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
}

impl GridRange {
    pub fn new(lo: f64, hi: f64, steps: usize) -> Result<Self> {
        if steps == 0 || !lo.is_finite() || !hi.is_finite() || hi < lo {
            return Err(Error::DomainError(format!("bad grid range {lo}:{hi}:{steps}")));
        }
        Ok(Self { lo, hi, steps })
    }

    pub fn points(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.lo];
        }
        let h = (self.hi - self.lo) / (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| if i + 1 == self.steps { self.hi } else { self.lo + h * i as f64 })
            .collect()
    }
}

impl FromStr for GridRange {
    type Err = Error;

    /// `lo:hi:steps`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::DomainError(format!("expected lo:hi:steps, got {s:?}"));
        let parts: Vec<&str> = s.split(':').collect();
        let [lo, hi, steps] = parts[..] else {
            return Err(bad());
        };
        let lo = lo.trim().parse().map_err(|_| bad())?;
        let hi = hi.trim().parse().map_err(|_| bad())?;
        let steps = steps.trim().parse().map_err(|_| bad())?;
        Self::new(lo, hi, steps)
    }
}

impl fmt::Display for GridRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.lo, self.hi, self.steps)
    }
}

/// Grid over standardized laws α m₁ + (1 − α) m₀ with m₁ on {x, z} and m₀
/// on {y, z}, where y is fixed by the unit-variance constraint.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct D3GridSpec {
    pub x: GridRange,
    pub z: GridRange,
    pub alpha: GridRange,
}

impl D3GridSpec {
    pub fn len(&self) -> usize {
        self.x.steps * self.z.steps * self.alpha.steps
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl FromStr for D3GridSpec {
    type Err = Error;

    /// `x=lo:hi:steps,z=lo:hi:steps,alpha=lo:hi:steps`, keys in any order.
    fn from_str(s: &str) -> Result<Self> {
        let (mut x, mut z, mut alpha) = (None, None, None);
        for item in s.split(',') {
            let (key, range) = item
                .split_once('=')
                .ok_or_else(|| Error::DomainError(format!("expected key=range, got {item:?}")))?;
            let range: GridRange = range.parse()?;
            match key.trim() {
                "x" => x = Some(range),
                "z" => z = Some(range),
                "alpha" | "a" => alpha = Some(range),
                other => return Err(Error::DomainError(format!("unknown grid key {other:?}"))),
            }
        }
        let missing = |k: &str| Error::DomainError(format!("grid is missing {k}"));
        Ok(Self {
            x: x.ok_or_else(|| missing("x"))?,
            z: z.ok_or_else(|| missing("z"))?,
            alpha: alpha.ok_or_else(|| missing("alpha"))?,
        })
    }
}

/// The standardized law at (x, z, α), or `None` outside the admissible
/// region xz < −1, 0 ≤ α < 1, α|x|z < 1.
pub fn d3_point(x: f64, z: f64, alpha: f64) -> Option<FiniteDist> {
    if !(x < 0.0 && z > 0.0 && x * z < -1.0 && (0.0..1.0).contains(&alpha)) {
        return None;
    }
    if alpha * -x * z >= 1.0 {
        return None;
    }
    let y = (-1.0 / z - alpha * x) / (1.0 - alpha);
    let m0 = FiniteDist::two_point(y, z).ok()?;
    if alpha == 0.0 {
        return Some(m0);
    }
    let m1 = FiniteDist::two_point(x, z).ok()?;
    FiniteDist::mixture(&[alpha, 1.0 - alpha], &[m1, m0]).ok()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchResult {
    pub best_b: f64,
    pub argmax: FiniteDist,
    /// Admissible grid points evaluated.
    pub grid_size: usize,
    /// Points with B > 1 + 1e-9.
    pub violations: usize,
}

/// Exhaustive evaluation of B over the admissible points of the grid.
pub fn search_d3(grid: &D3GridSpec) -> Result<SearchResult> {
    let xs = grid.x.points();
    let zs = grid.z.points();
    let alphas = grid.alpha.points();
    let total = xs.len() * zs.len() * alphas.len();
    let evaluated: Vec<(usize, f64)> = (0..total)
        .into_par_iter()
        .filter_map(|idx| {
            let a = alphas[idx % alphas.len()];
            let z = zs[(idx / alphas.len()) % zs.len()];
            let x = xs[idx / (alphas.len() * zs.len())];
            let law = d3_point(x, z, a)?;
            b_functional(&law).ok().map(|b| (idx, b))
        })
        .collect();
    if evaluated.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let violations = evaluated
        .iter()
        .filter(|(_, b)| *b > 1.0 + BOUND_SLACK)
        .count();
    let &(best_idx, best_b) = evaluated
        .iter()
        .max_by(|a, b| a.1.total_cmp(&b.1).then(b.0.cmp(&a.0)))
        .expect("nonempty");
    let argmax = d3_point(
        xs[best_idx / (alphas.len() * zs.len())],
        zs[(best_idx / alphas.len()) % zs.len()],
        alphas[best_idx % alphas.len()],
    )
    .expect("evaluated point is admissible");
    Ok(SearchResult {
        best_b,
        argmax,
        grid_size: evaluated.len(),
        violations,
    })
}

/// B of the standardized laws of Yₙ = X + n⁻¹1(X = 0), for a law with an
/// atom at zero. Returns (n, B(Yₙ)) per n followed by the limit value
/// B(X) itself under n = 0.
pub fn zero_middle_sequence(d: &FiniteDist, ns: &[usize]) -> Result<Vec<(usize, f64)>> {
    let zero = d
        .support()
        .iter()
        .position(|x| *x == 0.0)
        .ok_or_else(|| Error::DomainError("law has no atom at zero".into()))?;
    let mut out = Vec::with_capacity(ns.len() + 1);
    for &n in ns {
        if n == 0 {
            return Err(Error::DomainError("n must be positive".into()));
        }
        let mut support = d.support().to_vec();
        support[zero] = 1.0 / n as f64;
        let shifted = FiniteDist::from_unsorted(support, d.probs().to_vec())?;
        out.push((n, b_functional(&standardize(&shifted)?)?));
    }
    out.push((0, b_functional(&standardize(d)?)?));
    Ok(out)
}

/// ψ over a grid of Bernoulli parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LowerBoundTable {
    pub rows: Vec<(f64, f64)>,
    /// The row with the largest ψ (first one on ties).
    pub max: (f64, f64),
}

pub fn lower_bound_sweep(p_grid: &[f64]) -> Result<LowerBoundTable> {
    if p_grid.is_empty() {
        return Err(Error::DomainError("empty p grid".into()));
    }
    let rows = p_grid
        .par_iter()
        .map(|&p| psi_lower_bound(p).map(|psi| (p, psi)))
        .collect::<Result<Vec<_>>>()?;
    let max = rows
        .iter()
        .copied()
        .reduce(|best, r| if r.1 > best.1 { r } else { best })
        .expect("nonempty");
    if p_grid.contains(&0.5) && max.1 < PSI_HALF - 1e-5 {
        return Err(Error::InvariantViolation(format!(
            "max psi {} below {PSI_HALF}",
            max.1
        )));
    }
    Ok(LowerBoundTable { rows, max })
}

/// `n` equally spaced equally likely points, standardized: a discrete
/// stand-in for the uniform law.
pub fn uniform_grid(n: usize) -> Result<FiniteDist> {
    if n < 2 {
        return Err(Error::DomainError("need at least two points".into()));
    }
    let support = (0..n).map(|i| i as f64).collect();
    standardize(&FiniteDist::new(support, vec![1.0 / n as f64; n])?)
}

/// `n` equally spaced points on [−width, width] weighted by the normal
/// density, standardized.
pub fn normal_grid(n: usize, width: f64) -> Result<FiniteDist> {
    if n < 2 || width.is_nan() || width <= 0.0 {
        return Err(Error::DomainError(format!("bad normal grid ({n}, {width})")));
    }
    let h = 2.0 * width / (n - 1) as f64;
    let support: Vec<f64> = (0..n).map(|i| -width + h * i as f64).collect();
    let weights: Vec<f64> = support.iter().map(|&x| normal::pdf(x)).collect();
    let total: f64 = weights.iter().sum();
    let probs = weights.iter().map(|w| w / total).collect();
    standardize(&FiniteDist::new(support, probs)?)
}

/// The moment ratio E|X|³/σ³, kept here for reporting in sweeps.
pub fn third_moment_ratio(d: &FiniteDist) -> f64 {
    let m = moments(d);
    m.abs_third / m.variance.powf(1.5)
}
