//! Finite-support distributions on the real line.
//!
//! A [`FiniteDist`] stores a strictly increasing support and strictly
//! positive probabilities. All constructors canonicalize: points closer
//! than the merge tolerance are fused, masses are renormalized, and zero
//! masses (for instance from underflow in long convolutions) are dropped.

use crate::error::{Error, Result};
use crate::tolerances::{
    CENTER_TOL, INPUT_MASS_TOL, LATTICE_MAX_ITER, LATTICE_REL, MASS_TOL, MERGE_REL,
};
use serde::{Deserialize, Serialize};

/// A probability law with finitely many atoms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawDist")]
pub struct FiniteDist {
    support: Vec<f64>,
    probs: Vec<f64>,
}

#[derive(Deserialize)]
struct RawDist {
    support: Vec<f64>,
    probs: Vec<f64>,
}

impl TryFrom<RawDist> for FiniteDist {
    type Error = Error;

    fn try_from(raw: RawDist) -> Result<Self> {
        FiniteDist::from_unsorted(raw.support, raw.probs)
    }
}

/// Mean, variance and third-moment summaries of a law.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentSummary {
    pub mean: f64,
    /// Central second moment σ².
    pub variance: f64,
    /// Raw third moment EX³.
    pub third: f64,
    /// Raw absolute third moment E|X|³.
    pub abs_third: f64,
    /// ω = |E(X − EX)³| / (3σ²); `None` when σ² = 0.
    pub omega: Option<f64>,
}

impl MomentSummary {
    pub fn std_dev(&self) -> f64 {
        self.variance.sqrt()
    }
}

/// Result of lattice detection.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LatticeInfo {
    pub is_lattice: bool,
    /// Maximal span h; 0 for a single atom and for nonlattice laws.
    pub span: f64,
    /// A support point of the lattice (the smallest atom).
    pub offset: f64,
}

pub(crate) fn merge_tol(span: f64) -> f64 {
    MERGE_REL * span.abs().max(1.0)
}

impl FiniteDist {
    /// Builds a law from an already canonical support. Rejects anything that
    /// is not strictly increasing, positive and normalized to [`MASS_TOL`].
    pub fn new(support: Vec<f64>, probs: Vec<f64>) -> Result<Self> {
        validate_finite(&support, &probs)?;
        if support.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidDistribution(
                "support is not strictly increasing".into(),
            ));
        }
        let span = support[support.len() - 1] - support[0];
        let tol = merge_tol(span);
        if support.windows(2).any(|w| w[1] - w[0] < tol) {
            return Err(Error::InvalidDistribution(
                "support points closer than the merge tolerance".into(),
            ));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > MASS_TOL {
            return Err(Error::InvalidDistribution(format!(
                "total mass {total} differs from one"
            )));
        }
        Ok(Self { support, probs })
    }

    /// Builds a law from arbitrary-order input, as read from external
    /// files: sorts, fuses near-coincident atoms, accepts a mass error up to
    /// [`INPUT_MASS_TOL`] and renormalizes.
    pub fn from_unsorted(support: Vec<f64>, probs: Vec<f64>) -> Result<Self> {
        validate_finite(&support, &probs)?;
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > INPUT_MASS_TOL {
            return Err(Error::InvalidDistribution(format!(
                "total mass {total} differs from one by more than {INPUT_MASS_TOL:e}"
            )));
        }
        Ok(Self::from_points(support.into_iter().zip(probs).collect()))
    }

    /// Canonicalizes weighted points whose masses are known to sum to one up
    /// to rounding. Zero masses are dropped.
    pub(crate) fn from_points(mut points: Vec<(f64, f64)>) -> Self {
        points.retain(|&(_, p)| p > 0.0);
        assert!(!points.is_empty(), "distribution with no mass");
        points.sort_unstable_by(|a, b| a.0.total_cmp(&b.0));
        let span = points[points.len() - 1].0 - points[0].0;
        let tol = merge_tol(span);
        let mut support = Vec::with_capacity(points.len());
        let mut probs: Vec<f64> = Vec::with_capacity(points.len());
        let mut anchor = f64::NEG_INFINITY;
        for (x, p) in points {
            if x - anchor < tol {
                *probs.last_mut().unwrap() += p;
            } else {
                anchor = x;
                support.push(x);
                probs.push(p);
            }
        }
        let total: f64 = probs.iter().sum();
        for p in &mut probs {
            *p /= total;
        }
        Self { support, probs }
    }

    /// The point mass δₓ.
    pub fn point_mass(x: f64) -> Self {
        Self {
            support: vec![x],
            probs: vec![1.0],
        }
    }

    /// The symmetric law on {−1, 1}.
    pub fn rademacher() -> Self {
        Self {
            support: vec![-1.0, 1.0],
            probs: vec![0.5, 0.5],
        }
    }

    /// The unique mean-zero law on {x, y} with x < 0 < y.
    pub fn two_point(x: f64, y: f64) -> Result<Self> {
        if !(x < 0.0 && y > 0.0) || !x.is_finite() || !y.is_finite() {
            return Err(Error::OrderingViolation(format!(
                "two-point law needs x < 0 < y, got x = {x}, y = {y}"
            )));
        }
        let len = y - x;
        Ok(Self {
            support: vec![x, y],
            probs: vec![y / len, -x / len],
        })
    }

    /// (ξ − p)/√(pq) for ξ ~ Bernoulli(p): atoms −√(p/q), √(q/p) with
    /// masses q, p.
    pub fn standardized_bernoulli(p: f64) -> Result<Self> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::DomainError(format!("p = {p} not in (0, 1)")));
        }
        let q = 1.0 - p;
        Ok(Self {
            support: vec![-(p / q).sqrt(), (q / p).sqrt()],
            probs: vec![q, p],
        })
    }

    /// The weighted mixture Σ wₛ mₛ as a single law.
    pub fn mixture(weights: &[f64], components: &[FiniteDist]) -> Result<Self> {
        check_weights(weights, components.len())?;
        let points = weights
            .iter()
            .zip(components)
            .filter(|(w, _)| **w > 0.0)
            .flat_map(|(&w, c)| c.iter().map(move |(x, p)| (x, w * p)))
            .collect();
        Ok(Self::from_points(points))
    }

    pub fn support(&self) -> &[f64] {
        &self.support
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    /// `(atom, mass)` pairs in increasing atom order.
    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.support.iter().copied().zip(self.probs.iter().copied())
    }

    pub fn min(&self) -> f64 {
        self.support[0]
    }

    pub fn max(&self) -> f64 {
        self.support[self.support.len() - 1]
    }

    /// F(x) = P(X ≤ x).
    pub fn cdf(&self, x: f64) -> f64 {
        let k = self.support.partition_point(|&a| a <= x);
        self.probs[..k].iter().sum()
    }

    /// Cumulative masses F(a₁), …, F(aₘ).
    pub fn cumulative(&self) -> Vec<f64> {
        self.probs
            .iter()
            .scan(0.0, |acc, &p| {
                *acc += p;
                Some(*acc)
            })
            .collect()
    }

    /// Tail masses P(X > aₖ) for k = 1..m, summed from the top so that
    /// they stay accurate where F is close to one.
    pub fn tail_masses(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.probs.len()];
        let mut acc = 0.0;
        for k in (0..self.probs.len()).rev() {
            out[k] = acc;
            acc += self.probs[k];
        }
        out
    }

    /// E f(X).
    pub fn expect(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.iter().map(|(x, p)| p * f(x)).sum()
    }

    pub fn moments(&self) -> MomentSummary {
        moments(self)
    }
}

fn validate_finite(support: &[f64], probs: &[f64]) -> Result<()> {
    if support.is_empty() {
        return Err(Error::InvalidDistribution("empty support".into()));
    }
    if support.len() != probs.len() {
        return Err(Error::InvalidDistribution(format!(
            "support has {} points but probs has {}",
            support.len(),
            probs.len()
        )));
    }
    if support.iter().chain(probs).any(|v| !v.is_finite()) {
        return Err(Error::InvalidDistribution("non-finite value".into()));
    }
    if probs.iter().any(|&p| p <= 0.0) {
        return Err(Error::InvalidDistribution(
            "probabilities must be strictly positive".into(),
        ));
    }
    Ok(())
}

pub(crate) fn check_weights(weights: &[f64], n: usize) -> Result<()> {
    if weights.len() != n || n == 0 {
        return Err(Error::InvalidDistribution(format!(
            "{} weights for {n} components",
            weights.len()
        )));
    }
    if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
        return Err(Error::InvalidDistribution(
            "mixture weights must be finite and nonnegative".into(),
        ));
    }
    let total: f64 = weights.iter().sum();
    if (total - 1.0).abs() > MASS_TOL {
        return Err(Error::InvalidDistribution(format!(
            "mixture weights sum to {total}"
        )));
    }
    Ok(())
}

/// Exact weighted moment sums.
pub fn moments(d: &FiniteDist) -> MomentSummary {
    let mean = d.expect(|x| x);
    let variance = d.expect(|x| (x - mean) * (x - mean));
    let third = d.expect(|x| x * x * x);
    let abs_third = d.expect(|x| (x * x * x).abs());
    let central_third = d.expect(|x| (x - mean).powi(3));
    let omega = (variance > 0.0).then(|| central_third.abs() / (3.0 * variance));
    MomentSummary {
        mean,
        variance,
        third,
        abs_third,
        omega,
    }
}

/// Fails unless the law has positive variance (beyond the merge tolerance).
pub(crate) fn require_variance(d: &FiniteDist) -> Result<MomentSummary> {
    let m = moments(d);
    if m.variance <= merge_tol(d.max() - d.min()) {
        return Err(Error::DegenerateDistribution(m.variance));
    }
    Ok(m)
}

/// Fails unless the law is centered within [`CENTER_TOL`] with positive
/// variance.
pub(crate) fn require_centered(d: &FiniteDist) -> Result<MomentSummary> {
    let m = moments(d);
    if m.mean.abs() > CENTER_TOL {
        return Err(Error::NonCenteredInput(m.mean));
    }
    require_variance(d)
}

/// The law of (X − EX)/σ.
pub fn standardize(d: &FiniteDist) -> Result<FiniteDist> {
    let m = require_variance(d)?;
    let sd = m.std_dev();
    let support = d.support.iter().map(|&x| (x - m.mean) / sd).collect();
    Ok(FiniteDist {
        support,
        probs: d.probs.clone(),
    })
}

/// The law of X − EX.
pub fn center(d: &FiniteDist) -> FiniteDist {
    let mean = d.expect(|x| x);
    FiniteDist {
        support: d.support.iter().map(|&x| x - mean).collect(),
        probs: d.probs.clone(),
    }
}

/// The law of aX.
pub fn scale(d: &FiniteDist, a: f64) -> Result<FiniteDist> {
    if a == 0.0 {
        return Err(Error::ZeroScale);
    }
    if !a.is_finite() {
        return Err(Error::DomainError(format!("scale factor {a}")));
    }
    let mut support: Vec<f64> = d.support.iter().map(|&x| a * x).collect();
    let mut probs = d.probs.clone();
    if a < 0.0 {
        support.reverse();
        probs.reverse();
    }
    Ok(FiniteDist { support, probs })
}

/// The law of X₁ + X₂ for independent X₁ ~ d1, X₂ ~ d2.
pub fn convolve(d1: &FiniteDist, d2: &FiniteDist) -> FiniteDist {
    convolve_guarded(d1, d2, usize::MAX).expect("unbounded convolution cannot fail")
}

/// [`convolve`] that refuses to produce more than `max_support` atoms.
///
/// Laws sharing a lattice are convolved on integer indices; everything
/// else goes through sorted pairwise sums.
pub fn convolve_guarded(d1: &FiniteDist, d2: &FiniteDist, max_support: usize) -> Result<FiniteDist> {
    if let Some(out) = convolve_on_lattice(d1, d2, max_support)? {
        return Ok(out);
    }
    let pairs = d1.len().saturating_mul(d2.len());
    if pairs > max_support.saturating_mul(64) {
        return Err(Error::SupportBlowup {
            size: pairs,
            limit: max_support,
        });
    }
    let mut points = Vec::with_capacity(pairs);
    for (x, p) in d1.iter() {
        points.extend(d2.iter().map(|(y, q)| (x + y, p * q)));
    }
    let out = FiniteDist::from_points(points);
    if out.len() > max_support {
        return Err(Error::SupportBlowup {
            size: out.len(),
            limit: max_support,
        });
    }
    Ok(out)
}

const DENSE_LIMIT: usize = 50_000_000;

fn convolve_on_lattice(
    d1: &FiniteDist,
    d2: &FiniteDist,
    max_support: usize,
) -> Result<Option<FiniteDist>> {
    let span = match (exact_lattice_span(d1), exact_lattice_span(d2)) {
        (Some(h1), Some(h2)) => match (h1 > 0.0, h2 > 0.0) {
            (true, true) => match real_gcd(h1, h2, LATTICE_REL * h1.max(h2)) {
                Some(h) => h,
                None => return Ok(None),
            },
            (true, false) => h1,
            (false, true) => h2,
            (false, false) => {
                return Ok(Some(FiniteDist::point_mass(d1.min() + d2.min())));
            }
        },
        _ => return Ok(None),
    };
    let (Some(i1), Some(i2)) = (lattice_indices(d1, span), lattice_indices(d2, span)) else {
        return Ok(None);
    };
    let len = i1[i1.len() - 1] + i2[i2.len() - 1] + 1;
    if len > DENSE_LIMIT || len > 16 * d1.len() * d2.len() + 16 {
        return Ok(None);
    }
    let mut dense = vec![0.0; len];
    for (&k1, &p) in i1.iter().zip(&d1.probs) {
        for (&k2, &q) in i2.iter().zip(&d2.probs) {
            dense[k1 + k2] += p * q;
        }
    }
    let offset = d1.min() + d2.min();
    let count = dense.iter().filter(|&&p| p > 0.0).count();
    if count > max_support {
        return Err(Error::SupportBlowup {
            size: count,
            limit: max_support,
        });
    }
    let points = dense
        .into_iter()
        .enumerate()
        .filter(|(_, p)| *p > 0.0)
        .map(|(k, p)| (offset + k as f64 * span, p))
        .collect();
    Ok(Some(FiniteDist::from_points(points)))
}

/// Span for which every atom sits on `min + k·span` to within the merge
/// tolerance. `Some(0.0)` for a single atom.
fn exact_lattice_span(d: &FiniteDist) -> Option<f64> {
    if d.len() == 1 {
        return Some(0.0);
    }
    let h = gaps_gcd(&d.support)?;
    lattice_indices(d, h).map(|_| h)
}

fn lattice_indices(d: &FiniteDist, span: f64) -> Option<Vec<usize>> {
    let tol = merge_tol(d.max() - d.min());
    let base = d.min();
    d.support
        .iter()
        .map(|&x| {
            let k = ((x - base) / span).round();
            ((x - base - k * span).abs() <= tol).then_some(k as usize)
        })
        .collect()
}

/// Real gcd of two positive numbers by the Euclidean algorithm with
/// nearest-integer remainders. `None` if it does not settle within
/// [`LATTICE_MAX_ITER`] steps.
pub(crate) fn real_gcd(a: f64, b: f64, tol: f64) -> Option<f64> {
    let (mut a, mut b) = (a.max(b), a.min(b));
    for _ in 0..LATTICE_MAX_ITER {
        if b <= tol {
            return (a > tol).then_some(a);
        }
        let r = (a - (a / b).round() * b).abs();
        a = b;
        b = r;
    }
    None
}

fn gaps_gcd(support: &[f64]) -> Option<f64> {
    let gaps: Vec<f64> = support.windows(2).map(|w| w[1] - w[0]).collect();
    let largest = gaps.iter().copied().fold(0.0, f64::max);
    let tol = LATTICE_REL * largest;
    gaps[1..]
        .iter()
        .try_fold(gaps[0], |h, &g| real_gcd(h, g, tol))
}

/// Detects whether the support lies on `offset + span·ℤ` and returns the
/// maximal such span.
pub fn lattice_span(d: &FiniteDist) -> LatticeInfo {
    let offset = d.min();
    let not_lattice = LatticeInfo {
        is_lattice: false,
        span: 0.0,
        offset,
    };
    if d.len() == 1 {
        return LatticeInfo {
            is_lattice: true,
            span: 0.0,
            offset,
        };
    }
    let Some(h) = gaps_gcd(&d.support) else {
        return not_lattice;
    };
    let on_lattice = d.support.iter().all(|&x| {
        let k = ((x - offset) / h).round();
        (x - offset - k * h).abs() <= LATTICE_REL * h
    });
    if on_lattice {
        LatticeInfo {
            is_lattice: true,
            span: h,
            offset,
        }
    } else {
        not_lattice
    }
}

/// Law of (X₁ + … + Xₙ)/σ with σ² = Σ Var Xᵢ.
pub fn normalized_sum(components: &[FiniteDist]) -> Result<FiniteDist> {
    normalized_sum_guarded(components, usize::MAX)
}

pub fn normalized_sum_guarded(components: &[FiniteDist], max_support: usize) -> Result<FiniteDist> {
    if components.is_empty() {
        return Err(Error::InvalidDistribution("no summands".into()));
    }
    let mut total_var = 0.0;
    for c in components {
        let m = require_centered(c)?;
        total_var += m.variance;
    }
    let mut acc = components[0].clone();
    for c in &components[1..] {
        acc = convolve_guarded(&acc, c, max_support)?;
    }
    scale(&acc, 1.0 / total_var.sqrt())
}

/// Law of (X₁ + … + Xₙ)/(σ√n) for i.i.d. Xᵢ ~ g. Lattice laws use binary
/// powering; nonlattice laws with few atoms enumerate atom counts.
pub fn iid_normalized_sum(g: &FiniteDist, n: usize, max_support: usize) -> Result<FiniteDist> {
    if n == 0 {
        return Err(Error::DomainError("n must be positive".into()));
    }
    let m = require_centered(g)?;
    let sum = convolution_power(g, n, max_support)?;
    scale(&sum, 1.0 / (m.variance * n as f64).sqrt())
}

/// The n-fold convolution of g with itself.
pub fn convolution_power(g: &FiniteDist, n: usize, max_support: usize) -> Result<FiniteDist> {
    if n == 0 {
        return Err(Error::DomainError("n must be positive".into()));
    }
    if g.len() > 1 && !lattice_span(g).is_lattice {
        if let Some(count) = composition_count(n, g.len()) {
            if count <= max_support {
                return Ok(multinomial_sum(g, n));
            }
        }
    }
    let mut base = g.clone();
    let mut acc: Option<FiniteDist> = None;
    let mut k = n;
    loop {
        if k & 1 == 1 {
            acc = Some(match acc {
                None => base.clone(),
                Some(a) => convolve_guarded(&a, &base, max_support)?,
            });
        }
        k >>= 1;
        if k == 0 {
            break;
        }
        base = convolve_guarded(&base, &base, max_support)?;
    }
    Ok(acc.expect("n > 0"))
}

/// C(n + k − 1, k − 1), the number of ways to split n draws over k atoms.
fn composition_count(n: usize, k: usize) -> Option<usize> {
    let mut c: usize = 1;
    for i in 1..k {
        c = c.checked_mul(n + i)? / i;
    }
    Some(c)
}

/// Sum of n i.i.d. draws from g, one atom per vector of atom counts,
/// weighted by the multinomial probability.
fn multinomial_sum(g: &FiniteDist, n: usize) -> FiniteDist {
    let k = g.len();
    let log_p: Vec<f64> = g.probs.iter().map(|p| p.ln()).collect();
    let log_fact: Vec<f64> = (0..=n).map(|c| libm::lgamma(c as f64 + 1.0)).collect();
    let mut points = Vec::with_capacity(composition_count(n, k).unwrap_or(0));
    let mut counts = vec![0usize; k];
    fn fill(
        i: usize,
        left: usize,
        counts: &mut [usize],
        g: &FiniteDist,
        log_p: &[f64],
        log_fact: &[f64],
        points: &mut Vec<(f64, f64)>,
    ) {
        let k = counts.len();
        if i == k - 1 {
            counts[i] = left;
            let n = counts.iter().sum::<usize>();
            let mut lw = log_fact[n];
            let mut x = 0.0;
            for j in 0..k {
                lw += counts[j] as f64 * log_p[j] - log_fact[counts[j]];
                x += counts[j] as f64 * g.support[j];
            }
            points.push((x, lw.exp()));
            return;
        }
        for c in 0..=left {
            counts[i] = c;
            fill(i + 1, left - c, counts, g, log_p, log_fact, points);
        }
    }
    fill(0, n, &mut counts, g, &log_p, &log_fact, &mut points);
    FiniteDist::from_points(points)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    fn assert_law(d: &FiniteDist, support: &[f64], probs: &[f64], tol: f64) {
        assert_eq!(d.len(), support.len(), "{d:?}");
        for (i, (x, p)) in d.iter().enumerate() {
            assert!(close(x, support[i], tol), "atom {i}: {x} vs {}", support[i]);
            assert!(close(p, probs[i], tol), "mass {i}: {p} vs {}", probs[i]);
        }
    }

    #[test]
    fn moments_of_rademacher() {
        let m = moments(&FiniteDist::rademacher());
        assert_eq!(m.mean, 0.0);
        assert_eq!(m.variance, 1.0);
        assert_eq!(m.third, 0.0);
        assert_eq!(m.abs_third, 1.0);
        assert_eq!(m.omega, Some(0.0));
    }

    #[test]
    fn moments_of_asymmetric_two_point() {
        // EX² = −xy and E|X|³ = −xy(x² + y²)/(y − x) with x = −1, y = 2.
        let d = FiniteDist::two_point(-1.0, 2.0).unwrap();
        assert_law(&d, &[-1.0, 2.0], &[2.0 / 3.0, 1.0 / 3.0], 1e-15);
        let m = moments(&d);
        assert!(close(m.mean, 0.0, 1e-15));
        assert!(close(m.variance, 2.0, 1e-14));
        assert!(close(m.abs_third, 10.0 / 3.0, 1e-14));
        assert!(close(m.third, 2.0, 1e-14));
    }

    #[test]
    fn point_mass_has_no_omega() {
        let m = moments(&FiniteDist::point_mass(5.0));
        assert_eq!(m.mean, 5.0);
        assert_eq!(m.variance, 0.0);
        assert!(m.omega.is_none());
    }

    #[test]
    fn standardize_examples() {
        let d = FiniteDist::new(vec![0.0, 1.0], vec![0.5, 0.5]).unwrap();
        assert_law(&standardize(&d).unwrap(), &[-1.0, 1.0], &[0.5, 0.5], 1e-15);

        let p: f64 = 0.3;
        let q = 1.0 - p;
        let b = FiniteDist::new(vec![0.0, 1.0], vec![q, p]).unwrap();
        let s = standardize(&b).unwrap();
        assert_law(&s, &[-(p / q).sqrt(), (q / p).sqrt()], &[q, p], 1e-14);
        let m = moments(&s);
        assert!(m.mean.abs() <= 1e-12 && (m.variance - 1.0).abs() <= 1e-12);

        assert!(matches!(
            standardize(&FiniteDist::point_mass(5.0)),
            Err(Error::DegenerateDistribution(_))
        ));
    }

    #[test]
    fn scale_examples() {
        let r = FiniteDist::rademacher();
        assert_eq!(scale(&r, -1.0).unwrap(), r);
        let d = FiniteDist::two_point(-1.0, 2.0).unwrap();
        assert_law(&scale(&d, 2.0).unwrap(), &[-2.0, 4.0], &[2.0 / 3.0, 1.0 / 3.0], 1e-15);
        assert_law(&scale(&d, -1.0).unwrap(), &[-2.0, 1.0], &[1.0 / 3.0, 2.0 / 3.0], 1e-15);
        assert_eq!(scale(&d, 0.0), Err(Error::ZeroScale));
    }

    #[test]
    fn convolve_examples() {
        let r = FiniteDist::rademacher();
        assert_law(&convolve(&r, &r), &[-2.0, 0.0, 2.0], &[0.25, 0.5, 0.25], 1e-15);

        let d = FiniteDist::two_point(-1.0, 2.0).unwrap();
        assert_eq!(convolve(&d, &FiniteDist::point_mass(0.0)), d);
        assert_law(
            &convolve(&d, &d),
            &[-2.0, 1.0, 4.0],
            &[4.0 / 9.0, 4.0 / 9.0, 1.0 / 9.0],
            1e-15,
        );
    }

    #[test]
    fn lattice_and_pairwise_routes_agree() {
        let a = FiniteDist::new(vec![-1.0, 0.5, 3.5], vec![0.2, 0.5, 0.3]).unwrap();
        let b = FiniteDist::new(vec![-2.0, 1.0], vec![0.6, 0.4]).unwrap();
        let lattice = convolve(&a, &b);
        let mut points = Vec::new();
        for (x, p) in a.iter() {
            for (y, q) in b.iter() {
                points.push((x + y, p * q));
            }
        }
        let brute = FiniteDist::from_points(points);
        assert_eq!(lattice.len(), brute.len());
        for ((x, p), (y, q)) in lattice.iter().zip(brute.iter()) {
            assert!(close(x, y, 1e-13) && close(p, q, 1e-15));
        }
    }

    #[test]
    fn normalized_sum_examples() {
        let r = FiniteDist::rademacher();
        assert_eq!(normalized_sum(std::slice::from_ref(&r)).unwrap(), r);

        let four = normalized_sum(&vec![r.clone(); 4]).unwrap();
        assert_law(
            &four,
            &[-2.0, -1.0, 0.0, 1.0, 2.0],
            &[1.0 / 16.0, 4.0 / 16.0, 6.0 / 16.0, 4.0 / 16.0, 1.0 / 16.0],
            1e-15,
        );

        let d = FiniteDist::two_point(-1.0, 2.0).unwrap();
        let two = normalized_sum(&[d.clone(), d]).unwrap();
        assert_law(&two, &[-1.0, 0.5, 2.0], &[4.0 / 9.0, 4.0 / 9.0, 1.0 / 9.0], 1e-15);
        assert!(close(moments(&two).variance, 1.0, 1e-9));

        let off = FiniteDist::new(vec![0.0, 1.0], vec![0.5, 0.5]).unwrap();
        assert!(matches!(normalized_sum(&[off]), Err(Error::NonCenteredInput(_))));
        assert!(matches!(
            normalized_sum(&[FiniteDist::point_mass(0.0)]),
            Err(Error::DegenerateDistribution(_))
        ));
    }

    #[test]
    fn iid_power_matches_repeated_convolution() {
        let d = FiniteDist::new(vec![-1.0, 0.0, 2.0], vec![0.4, 0.4, 0.2]).unwrap();
        let via_power = iid_normalized_sum(&d, 7, usize::MAX).unwrap();
        let via_list = normalized_sum(&vec![d; 7]).unwrap();
        assert_eq!(via_power.len(), via_list.len());
        for ((x, p), (y, q)) in via_power.iter().zip(via_list.iter()) {
            assert!(close(x, y, 1e-12) && close(p, q, 1e-14));
        }
    }

    #[test]
    fn binomial_powers_stay_exact() {
        let r = FiniteDist::rademacher();
        let s = iid_normalized_sum(&r, 4096, 1_000_000).unwrap();
        let m = moments(&s);
        assert!(close(m.variance, 1.0, 1e-12) && close(m.mean, 0.0, 1e-12));
        assert!((s.probs().iter().sum::<f64>() - 1.0).abs() <= 1e-12);
        assert!(lattice_span(&s).is_lattice);
    }

    #[test]
    fn guard_rejects_large_supports() {
        let d = FiniteDist::new(vec![-1.0, 0.0, 2f64.sqrt()], vec![0.3, 0.4, 0.3]).unwrap();
        let d = center(&d);
        let err = iid_normalized_sum(&d, 64, 500).unwrap_err();
        assert!(matches!(err, Error::SupportBlowup { .. }));
    }

    #[test]
    fn lattice_examples() {
        let l = lattice_span(&FiniteDist::rademacher());
        assert!(l.is_lattice && close(l.span, 2.0, 1e-15));

        let t = FiniteDist::new(vec![-1.0, 0.0, 1.0], vec![0.25, 0.5, 0.25]).unwrap();
        let l = lattice_span(&t);
        assert!(l.is_lattice && close(l.span, 1.0, 1e-15));

        let irr = center(&FiniteDist::new(vec![0.0, 1.0, 1.0 + 2f64.sqrt()], vec![0.3, 0.4, 0.3]).unwrap());
        assert!(!lattice_span(&irr).is_lattice);

        let one = lattice_span(&FiniteDist::point_mass(3.0));
        assert!(one.is_lattice && one.span == 0.0);

        // gcd of 0.6 and 0.9 is 0.3
        let g = FiniteDist::new(vec![0.0, 0.6, 1.5], vec![0.2, 0.3, 0.5]).unwrap();
        let l = lattice_span(&g);
        assert!(l.is_lattice && close(l.span, 0.3, 1e-12), "{l:?}");
    }

    #[test]
    fn loader_canonicalizes() {
        let d: FiniteDist =
            serde_json::from_str(r#"{"support":[2,-1,0.5],"probs":[0.25,0.5,0.25]}"#).unwrap();
        assert_eq!(d.support(), &[-1.0, 0.5, 2.0]);
        assert_eq!(d.probs(), &[0.5, 0.25, 0.25]);

        let near: FiniteDist =
            serde_json::from_str(r#"{"support":[0,1],"probs":[0.5,0.5000000001]}"#).unwrap();
        assert!((near.probs().iter().sum::<f64>() - 1.0).abs() <= 1e-12);

        for bad in [
            r#"{"support":[0,1],"probs":[0.5,0.6]}"#,
            r#"{"support":[0,1],"probs":[1.0,0.0]}"#,
            r#"{"support":[0],"probs":[1,2]}"#,
            r#"{"support":[],"probs":[]}"#,
        ] {
            assert!(serde_json::from_str::<FiniteDist>(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn strict_constructor_rejects_bad_input() {
        assert!(FiniteDist::new(vec![1.0, 0.0], vec![0.5, 0.5]).is_err());
        assert!(FiniteDist::new(vec![0.0, 1e-14], vec![0.5, 0.5]).is_err());
        assert!(FiniteDist::new(vec![0.0, 1.0], vec![0.5, 0.5 + 1e-9]).is_err());
        assert!(FiniteDist::new(vec![0.0, f64::NAN], vec![0.5, 0.5]).is_err());
    }
}
