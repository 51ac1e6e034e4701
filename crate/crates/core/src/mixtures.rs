//! Constructive mixture decompositions.
//!
//! * [`reduce_to_d3`] writes a standardized law on m > 3 atoms as a finite
//!   mixture of standardized laws on at most three atoms, by repeatedly
//!   moving the probability vector along a null direction of the moment
//!   matrix until a coordinate hits zero.
//! * [`two_point_mixture`] writes a mean-zero law without an atom at zero as
//!   a mixture of mean-zero two-point laws.
//! * [`three_point_split`] and the coupling checks handle the three-point
//!   case x < y < 0 < z as a mixture α m₁ + (1 − α) m₀ of the two-point laws
//!   on {x, z} and {y, z}.

use crate::dist::{merge_tol, moments, scale, FiniteDist};
use crate::error::{Error, Result};
use crate::tolerances::{
    CENTER_TOL, COUPLING_SLACK, MAX_REDUCTION_DEPTH, MIN_COMPONENT_WEIGHT, QP_ROUTE_TOL,
    STANDARD_TOL,
};
use crate::wasserstein::w1_step_pwl;
use crate::zerobias::{zero_bias, zero_bias_mixture};
use serde::{Deserialize, Serialize};

/// Σ wₛ mₛ with strictly positive weights summing to one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MixtureDecomposition {
    pub weights: Vec<f64>,
    pub components: Vec<FiniteDist>,
}

impl MixtureDecomposition {
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// The mixed law.
    pub fn recompose(&self) -> Result<FiniteDist> {
        FiniteDist::mixture(&self.weights, &self.components)
    }

    fn normalized(mut parts: Vec<(f64, FiniteDist)>) -> Self {
        parts.retain(|(w, _)| *w >= MIN_COMPONENT_WEIGHT);
        let total: f64 = parts.iter().map(|(w, _)| w).sum();
        let (weights, components) = parts.into_iter().map(|(w, c)| (w / total, c)).unzip();
        Self {
            weights,
            components,
        }
    }
}

/// Decomposes a standardized law into laws with at most three atoms, each
/// with mean zero and variance one.
pub fn reduce_to_d3(d: &FiniteDist) -> Result<MixtureDecomposition> {
    let m = moments(d);
    if m.mean.abs() > STANDARD_TOL || (m.variance - 1.0).abs() > STANDARD_TOL {
        return Err(Error::NotStandardized {
            mean: m.mean,
            variance: m.variance,
        });
    }
    let mut parts: Vec<(f64, Vec<f64>, Vec<f64>)> = Vec::new();
    split_recursive(d.support().to_vec(), d.probs().to_vec(), 1.0, 0, &mut parts)?;

    // Identical supports carry identical laws (three moment constraints on
    // at most three atoms), so duplicates are merged by summing weights.
    let tol = merge_tol(d.max() - d.min());
    let mut merged: Vec<(f64, FiniteDist)> = Vec::new();
    for (w, support, probs) in parts {
        let comp = FiniteDist::from_points(support.into_iter().zip(probs).collect());
        match merged.iter_mut().find(|(_, c)| same_support(c, &comp, tol)) {
            Some((acc, _)) => *acc += w,
            None => merged.push((w, comp)),
        }
    }
    Ok(MixtureDecomposition::normalized(merged))
}

fn same_support(a: &FiniteDist, b: &FiniteDist, tol: f64) -> bool {
    a.len() == b.len()
        && a.support()
            .iter()
            .zip(b.support())
            .all(|(x, y)| (x - y).abs() <= tol)
}

fn split_recursive(
    support: Vec<f64>,
    probs: Vec<f64>,
    weight: f64,
    depth: usize,
    out: &mut Vec<(f64, Vec<f64>, Vec<f64>)>,
) -> Result<()> {
    if support.len() <= 3 {
        out.push((weight, support, probs));
        return Ok(());
    }
    if depth >= MAX_REDUCTION_DEPTH {
        return Err(Error::MixtureBlowup(MAX_REDUCTION_DEPTH));
    }
    let v = moment_null_vector(&support);
    // Largest steps keeping p ± t v nonnegative.
    let step = |sign: f64| {
        v.iter()
            .zip(&probs)
            .enumerate()
            .filter(|(_, (vi, _))| sign * **vi < 0.0)
            .map(|(i, (vi, p))| (p / (sign * vi).abs(), i))
            .min_by(|a, b| a.0.total_cmp(&b.0))
            .expect("null vector has entries of both signs")
    };
    let (t1, hit1) = step(1.0);
    let (t2, hit2) = step(-1.0);
    let total = t1 + t2;
    for (t, hit, sign, share) in [(t1, hit1, 1.0, t2 / total), (t2, hit2, -1.0, t1 / total)] {
        let moved: Vec<f64> = probs
            .iter()
            .zip(&v)
            .enumerate()
            .map(|(i, (p, vi))| if i == hit { 0.0 } else { p + sign * t * vi })
            .collect();
        let floor = 1e-15 * moved.iter().copied().fold(0.0, f64::max);
        let (s, p): (Vec<f64>, Vec<f64>) = support
            .iter()
            .zip(&moved)
            .filter(|(_, p)| **p > floor)
            .map(|(x, p)| (*x, *p))
            .unzip();
        let mass: f64 = p.iter().sum();
        let p = p.into_iter().map(|q| q / mass).collect();
        split_recursive(s, p, weight * share, depth + 1, out)?;
    }
    Ok(())
}

/// A nonzero v with Σvᵢ = Σaᵢvᵢ = Σaᵢ²vᵢ = 0, by Gauss–Jordan elimination
/// with partial pivoting on the 3×m moment matrix. The last free column is
/// set to one and the other free columns to zero.
fn moment_null_vector(support: &[f64]) -> Vec<f64> {
    let m = support.len();
    let mut rows: Vec<Vec<f64>> = vec![
        vec![1.0; m],
        support.to_vec(),
        support.iter().map(|a| a * a).collect(),
    ];
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut row = 0;
    for col in 0..m {
        if row == 3 {
            break;
        }
        let scale = rows.iter().map(|r| r[col].abs()).fold(0.0, f64::max);
        let mut best = row;
        for r in row + 1..3 {
            if rows[r][col].abs() > rows[best][col].abs() {
                best = r;
            }
        }
        if rows[best][col].abs() <= 1e-12 * scale.max(f64::MIN_POSITIVE) {
            continue;
        }
        rows.swap(row, best);
        let pivot = rows[row][col];
        for x in rows[row].iter_mut() {
            *x /= pivot;
        }
        for r in 0..3 {
            if r != row {
                let factor = rows[r][col];
                if factor != 0.0 {
                    let pivot_row = rows[row].clone();
                    for (x, p) in rows[r].iter_mut().zip(&pivot_row) {
                        *x -= factor * p;
                    }
                }
            }
        }
        pivots.push((row, col));
        row += 1;
    }
    let free = (0..m)
        .rev()
        .find(|c| pivots.iter().all(|&(_, pc)| pc != *c))
        .expect("3×m matrix with m > 3 has a free column");
    let mut v = vec![0.0; m];
    v[free] = 1.0;
    for &(r, c) in &pivots {
        v[c] = -rows[r][free];
    }
    v
}

/// Greedy decomposition into mean-zero two-point laws: the most negative
/// remaining atom is paired with the most positive one, at the largest
/// weight that exhausts one of them.
pub fn two_point_mixture(d: &FiniteDist) -> Result<MixtureDecomposition> {
    let m = moments(d);
    if m.mean.abs() > CENTER_TOL {
        return Err(Error::NonCenteredInput(m.mean));
    }
    let tol = merge_tol(d.max() - d.min());
    if d.support().iter().any(|x| x.abs() < tol) {
        return Err(Error::AtomAtZero);
    }
    let mut neg: Vec<(f64, f64)> = d.iter().filter(|(x, _)| *x < 0.0).collect();
    let mut pos: Vec<(f64, f64)> = d.iter().filter(|(x, _)| *x > 0.0).collect();
    pos.reverse();
    if neg.is_empty() || pos.is_empty() {
        return Err(Error::OneSidedSupport);
    }
    let mut parts = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < neg.len() && j < pos.len() {
        let (x, rx) = neg[i];
        let (z, rz) = pos[j];
        let (px, pz) = (z / (z - x), -x / (z - x));
        let (wx, wz) = (rx / px, rz / pz);
        let w = wx.min(wz);
        parts.push((w, FiniteDist::two_point(x, z)?));
        neg[i].1 -= w * px;
        pos[j].1 -= w * pz;
        let exhausted = 1e-14;
        if wx <= wz || neg[i].1 <= exhausted {
            i += 1;
        }
        if wz <= wx || pos[j].1 <= exhausted {
            j += 1;
        }
    }
    Ok(MixtureDecomposition::normalized(parts))
}

/// A three-point law x < y < 0 < z written as α m₁ + (1 − α) m₀.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThreePointSplit {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub alpha: f64,
    /// ν-weight of m₁ in the zero-bias mixture: αx/(αx + (1 − α)y).
    pub beta: f64,
    /// Mean-zero law on {x, z}.
    pub m1: FiniteDist,
    /// Mean-zero law on {y, z}.
    pub m0: FiniteDist,
    /// True when the source law had its middle atom above zero and was
    /// reflected into the orientation x < y < 0 < z.
    pub reflected: bool,
}

impl ThreePointSplit {
    /// Split with a prescribed α ∈ [0, 1] on atoms x < y < 0 < z.
    pub fn new(x: f64, y: f64, z: f64, alpha: f64) -> Result<Self> {
        check_ordering(x, y, z)?;
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::DomainError(format!("alpha = {alpha} not in [0, 1]")));
        }
        let beta = alpha * x / (alpha * x + (1.0 - alpha) * y);
        Ok(Self {
            x,
            y,
            z,
            alpha,
            beta,
            m1: FiniteDist::two_point(x, z)?,
            m0: FiniteDist::two_point(y, z)?,
            reflected: false,
        })
    }

    /// X_α = α m₁ + (1 − α) m₀, in the canonical orientation.
    pub fn mixture(&self) -> FiniteDist {
        FiniteDist::mixture(&[self.alpha, 1.0 - self.alpha], &[self.m1.clone(), self.m0.clone()])
            .expect("weights are a probability vector")
    }

    /// X_α mapped back to the orientation of the source law.
    pub fn source_law(&self) -> FiniteDist {
        let law = self.mixture();
        if self.reflected {
            scale(&law, -1.0).expect("nonzero scale")
        } else {
            law
        }
    }

    fn scale(&self) -> f64 {
        self.x.abs().max(self.z.abs()).max(1.0)
    }
}

fn check_ordering(x: f64, y: f64, z: f64) -> Result<()> {
    if x < y && y < 0.0 && 0.0 < z && x.is_finite() && z.is_finite() {
        Ok(())
    } else {
        Err(Error::OrderingViolation(format!(
            "need x < y < 0 < z, got ({x}, {y}, {z})"
        )))
    }
}

/// Writes a mean-zero law on three nonzero atoms as α m₁ + (1 − α) m₀,
/// reflecting first when the middle atom is positive.
pub fn three_point_split(d: &FiniteDist) -> Result<ThreePointSplit> {
    if d.len() != 3 {
        return Err(Error::WrongSupportSize {
            expected: 3,
            found: d.len(),
        });
    }
    let mean = moments(d).mean;
    if mean.abs() > CENTER_TOL {
        return Err(Error::NonCenteredInput(mean));
    }
    let tol = merge_tol(d.max() - d.min());
    let middle = d.support()[1];
    if middle.abs() < tol {
        return Err(Error::ZeroMiddlePoint);
    }
    let reflected = middle > 0.0;
    let canonical = if reflected { scale(d, -1.0)? } else { d.clone() };
    let (s, p) = (canonical.support(), canonical.probs());
    let (x, y, z) = (s[0], s[1], s[2]);
    let alpha = (p[0] * (z - x) / z).clamp(0.0, 1.0);
    let mut split = ThreePointSplit::new(x, y, z, alpha)?;
    split.reflected = reflected;
    Ok(split)
}

/// The two evaluations of ‖m₁* − m₁‖₁ − ‖m₁* − m₀‖₁.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QpGap {
    /// From exact L¹ distances of the constructed laws.
    pub constructive: f64,
    /// From the closed form of the applicable case.
    pub closed_form: f64,
    /// True when F₁*(y) ≤ F₀(y), i.e. y(x + z) ≤ y² + z².
    pub first_case: bool,
}

/// Both routes for the gap on x < y < 0 < z; errors if they disagree.
pub fn qp_gap_routes(x: f64, y: f64, z: f64) -> Result<QpGap> {
    check_ordering(x, y, z)?;
    let m1 = FiniteDist::two_point(x, z)?;
    let m0 = FiniteDist::two_point(y, z)?;
    let m1_star = zero_bias(&m1)?;
    let constructive = w1_step_pwl(&m1, &m1_star) - w1_step_pwl(&m0, &m1_star);

    let first_case = y * (x + z) <= y * y + z * z;
    let closed_form = if first_case {
        -y * (y - x) * (y * y + 2.0 * z * z - y * (x + 2.0 * z)) / ((z - x) * (z - y) * (z - y))
    } else {
        // ‖m₁* − m₀‖₁ = −(x + z)/2 in this case
        (x * x + z * z) / (2.0 * (z - x)) + 0.5 * (x + z)
    };
    let scale = x.abs().max(z.abs()).max(1.0);
    if (constructive - closed_form).abs() > QP_ROUTE_TOL * scale {
        return Err(Error::InvariantViolation(format!(
            "QP gap routes disagree at ({x}, {y}, {z}): {constructive} vs {closed_form}"
        )));
    }
    Ok(QpGap {
        constructive,
        closed_form,
        first_case,
    })
}

/// ‖m₁* − m₁‖₁ − ‖m₁* − m₀‖₁ (constructive route, cross-checked).
pub fn qp_inequality_gap(x: f64, y: f64, z: f64) -> Result<f64> {
    qp_gap_routes(x, y, z).map(|g| g.constructive)
}

/// The two sides of the coupling inequality for X_α and the bound they
/// sit under.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CouplingBound {
    /// ‖m_α* − m_α‖₁.
    pub lhs: f64,
    /// α‖m₁*−m₁‖₁ + (1−β)‖m₀*−m₀‖₁ + (β−α)‖m₁*−m₀‖₁.
    pub rhs: f64,
    /// β‖m₁*−m₁‖₁ + (1−β)‖m₀*−m₀‖₁ = E|X_α|³ / (2EX_α²).
    pub fit: f64,
}

/// Evaluates lhs ≤ rhs ≤ fit; errors when either inequality fails.
pub fn coupling_bound_check(split: &ThreePointSplit) -> Result<CouplingBound> {
    let ThreePointSplit {
        alpha, beta, m1, m0, ..
    } = split;
    let law = split.mixture();
    let law_star = zero_bias_mixture(&[*alpha, 1.0 - alpha], &[m1.clone(), m0.clone()])?;
    let lhs = w1_step_pwl(&law, &law_star);

    let m1_star = zero_bias(m1)?;
    let m0_star = zero_bias(m0)?;
    let d11 = w1_step_pwl(m1, &m1_star);
    let d00 = w1_step_pwl(m0, &m0_star);
    let d10 = w1_step_pwl(m0, &m1_star);
    let rhs = alpha * d11 + (1.0 - beta) * d00 + (beta - alpha) * d10;
    let fit = beta * d11 + (1.0 - beta) * d00;

    let slack = COUPLING_SLACK * split.scale();
    if lhs > rhs + slack || rhs > fit + slack {
        return Err(Error::InvariantViolation(format!(
            "coupling bound fails for α = {alpha}: lhs {lhs}, rhs {rhs}, fit {fit}"
        )));
    }
    Ok(CouplingBound { lhs, rhs, fit })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::standardize;
    use crate::wasserstein::w1_step_step;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    fn assert_d3(dec: &MixtureDecomposition, source: &FiniteDist) {
        assert!(close(dec.weights.iter().sum::<f64>(), 1.0, 1e-12));
        for c in &dec.components {
            let m = moments(c);
            assert!(c.len() <= 3);
            assert!(m.mean.abs() <= 1e-9 && (m.variance - 1.0).abs() <= 1e-9, "{m:?}");
        }
        let back = dec.recompose().unwrap();
        assert!(w1_step_step(&back, source) <= 1e-10);
    }

    #[test]
    fn null_vector_annihilates_moments() {
        let a = [-2.0, -0.5, 0.3, 1.0, 2.5];
        let v = moment_null_vector(&a);
        let rows = [
            v.iter().sum::<f64>(),
            v.iter().zip(&a).map(|(v, a)| v * a).sum::<f64>(),
            v.iter().zip(&a).map(|(v, a)| v * a * a).sum::<f64>(),
        ];
        assert!(rows.iter().all(|r| r.abs() < 1e-12), "{rows:?}");
        assert!(v.iter().any(|x| *x != 0.0));
    }

    #[test]
    fn small_supports_are_their_own_decomposition() {
        let r = FiniteDist::rademacher();
        let dec = reduce_to_d3(&r).unwrap();
        assert_eq!(dec.weights, vec![1.0]);
        assert_eq!(dec.components, vec![r]);
    }

    #[test]
    fn four_point_splits_in_two() {
        let d = standardize(&FiniteDist::new(vec![-2.0, -1.0, 1.0, 2.0], vec![1.0 / 6.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 6.0]).unwrap()).unwrap();
        let dec = reduce_to_d3(&d).unwrap();
        assert_eq!(dec.len(), 2);
        assert_d3(&dec, &d);
    }

    #[test]
    fn binomial_seven() {
        let coeffs = [1.0, 7.0, 21.0, 35.0, 35.0, 21.0, 7.0, 1.0];
        let support: Vec<f64> = (0..8).map(|k| k as f64).collect();
        let probs: Vec<f64> = coeffs.iter().map(|c| c / 128.0).collect();
        let d = standardize(&FiniteDist::new(support, probs).unwrap()).unwrap();
        let dec = reduce_to_d3(&d).unwrap();
        assert!(dec.len() <= 1 << 5);
        assert_d3(&dec, &d);
    }

    #[test]
    fn reduce_requires_standardized() {
        let d = FiniteDist::two_point(-1.0, 2.0).unwrap();
        assert!(matches!(reduce_to_d3(&d), Err(Error::NotStandardized { .. })));
    }

    #[test]
    fn two_point_mixture_examples() {
        let d = FiniteDist::two_point(-1.0, 3.0).unwrap();
        let dec = two_point_mixture(&d).unwrap();
        assert_eq!(dec.len(), 1);
        assert!(close(dec.weights[0], 1.0, 1e-15));

        let sym = FiniteDist::new(vec![-2.0, -1.0, 1.0, 2.0], vec![1.0 / 6.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 6.0]).unwrap();
        let dec = two_point_mixture(&sym).unwrap();
        assert_eq!(dec.len(), 2);
        assert_eq!(dec.components[0].support(), &[-2.0, 2.0]);
        assert_eq!(dec.components[1].support(), &[-1.0, 1.0]);
        let back = dec.recompose().unwrap();
        for ((x, p), (y, q)) in back.iter().zip(sym.iter()) {
            assert!(x == y && close(p, q, 1e-12));
        }
    }

    #[test]
    fn two_point_mixture_errors() {
        let zero = FiniteDist::new(vec![-1.0, 0.0, 1.0], vec![0.25, 0.5, 0.25]).unwrap();
        assert_eq!(two_point_mixture(&zero), Err(Error::AtomAtZero));
        let off = FiniteDist::new(vec![1.0, 2.0], vec![0.5, 0.5]).unwrap();
        assert!(matches!(two_point_mixture(&off), Err(Error::NonCenteredInput(_))));
    }

    fn three_point(x: f64, y: f64, z: f64, px: f64) -> FiniteDist {
        // P(x) + P(y) + P(z) = 1 and xP(x) + yP(y) + zP(z) = 0
        let py = (z * (1.0 - px) + x * px) / (z - y);
        let pz = 1.0 - px - py;
        FiniteDist::new(vec![x, y, z], vec![px, py, pz]).unwrap()
    }

    #[test]
    fn three_point_split_reproduces_law() {
        let d = three_point(-2.0, -1.0, 1.0, 1.0 / 6.0);
        let split = three_point_split(&d).unwrap();
        assert!(!split.reflected);
        assert!(close(split.alpha, 0.5, 1e-15));
        assert!(split.beta > split.alpha);
        let back = split.mixture();
        for ((x, p), (y, q)) in back.iter().zip(d.iter()) {
            assert!(x == y && close(p, q, 1e-12));
        }
        let greedy = two_point_mixture(&d).unwrap();
        assert!(close(greedy.weights[0], split.alpha, 1e-12));
        assert_eq!(greedy.components[0], split.m1);
        assert_eq!(greedy.components[1], split.m0);
    }

    #[test]
    fn three_point_split_reflects() {
        let d = scale(&three_point(-2.0, -1.0, 1.0, 1.0 / 6.0), -1.0).unwrap();
        assert_eq!(d.support(), &[-1.0, 1.0, 2.0]);
        let split = three_point_split(&d).unwrap();
        assert!(split.reflected);
        assert_eq!((split.x, split.y, split.z), (-2.0, -1.0, 1.0));
        let back = split.source_law();
        for ((x, p), (y, q)) in back.iter().zip(d.iter()) {
            assert!(x == y && close(p, q, 1e-12));
        }
    }

    #[test]
    fn three_point_split_errors() {
        let two = FiniteDist::two_point(-1.0, 1.0).unwrap();
        assert!(matches!(three_point_split(&two), Err(Error::WrongSupportSize { .. })));
        let zero = FiniteDist::new(vec![-1.0, 0.0, 1.0], vec![0.25, 0.5, 0.25]).unwrap();
        assert_eq!(three_point_split(&zero), Err(Error::ZeroMiddlePoint));
    }

    #[test]
    fn qp_gap_first_case_value() {
        let g = qp_gap_routes(-2.0, -1.0, 1.0).unwrap();
        assert!(g.first_case);
        assert!(close(g.closed_form, 0.25, 1e-15));
        assert!(close(g.constructive, 0.25, 1e-12));
    }

    #[test]
    fn qp_gap_second_case() {
        // y(x + z) = 9 > y² + z² = 2
        let (x, y, z) = (-10.0, -1.0, 1.0);
        let g = qp_gap_routes(x, y, z).unwrap();
        assert!(!g.first_case);
        let m0 = FiniteDist::two_point(y, z).unwrap();
        let m1_star = zero_bias(&FiniteDist::two_point(x, z).unwrap()).unwrap();
        assert!(close(w1_step_pwl(&m0, &m1_star), -(x + z) / 2.0, 1e-12));
        assert!(close(g.constructive, z * z / (z - x), 1e-12));
    }

    #[test]
    fn qp_gap_nonnegative_on_grid() {
        for i in 1..=20 {
            for j in 1..=20 {
                for k in 1..=20 {
                    let x = -0.25 * i as f64 - 0.01;
                    let y = x * j as f64 / 21.0;
                    let z = 0.25 * k as f64;
                    let g = qp_inequality_gap(x, y, z).unwrap();
                    assert!(g >= -1e-12, "({x}, {y}, {z}) gap {g}");
                }
            }
        }
        assert!(matches!(qp_inequality_gap(-1.0, 0.5, 1.0), Err(Error::OrderingViolation(_))));
    }

    #[test]
    fn coupling_bound_edges() {
        for alpha in [0.0, 1.0] {
            let split = ThreePointSplit::new(-2.0, -1.0, 1.0, alpha).unwrap();
            assert_eq!(split.beta, alpha);
            let c = coupling_bound_check(&split).unwrap();
            assert!(close(c.lhs, c.rhs, 1e-12) && close(c.rhs, c.fit, 1e-12));
        }
        let c = coupling_bound_check(&ThreePointSplit::new(-2.0, -1.0, 1.0, 0.4).unwrap()).unwrap();
        assert!(c.lhs <= c.rhs && c.rhs <= c.fit);
    }
}
