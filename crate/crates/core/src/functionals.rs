//! Stein functionals of a law G with mean zero and variance σ²:
//!
//! * B(G) = 2σ²‖G* − G‖₁ / E|X|³, the distance to the zero-bias law scaled
//!   by the third moment;
//! * A(G), the limit of √n‖Fₙ − Φ‖₁, through the double-integral
//!   representation (σ√(2π))⁻¹ ∫_{−1/2}^{1/2} ∫ |(ω/2)(1 − x²) + hu| e^{−x²/2} dx du
//!   with ω = |EX³|/(3σ²) and h the lattice span (zero for nonlattice G);
//! * ψ(p), the moment-normalized distance of a standardized Bernoulli law
//!   to Φ, which bounds the all-n constant from below.

use crate::dist::{center, lattice_span, moments, require_centered, require_variance, FiniteDist, LatticeInfo, MomentSummary};
use crate::error::{Error, Result};
use crate::normal;
use crate::quadrature::GaussLegendre;
use crate::tolerances::A_QUAD_TOL;
use crate::wasserstein::{w1_step_normal, w1_step_pwl};
use crate::zerobias::zero_bias;
use serde::{Deserialize, Serialize};

/// All functionals of one law.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FunctionalReport {
    pub b_value: f64,
    pub a_value: f64,
    pub zolotarev_ratio: f64,
    /// Only set for laws built from a Bernoulli parameter.
    pub psi: Option<f64>,
    pub moments: MomentSummary,
    pub lattice: LatticeInfo,
}

/// A(G) together with the quantities it was computed from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AReport {
    pub a_value: f64,
    pub omega: f64,
    pub h: f64,
    pub zolotarev_ratio: f64,
    pub lattice: LatticeInfo,
}

/// B(G) = 2σ²‖G* − G‖₁ / E|X|³.
pub fn b_functional(d: &FiniteDist) -> Result<f64> {
    let m = require_centered(d)?;
    let z = zero_bias(d)?;
    Ok(2.0 * m.variance * w1_step_pwl(d, &z) / m.abs_third)
}

/// ‖G* − G‖₁ alongside B(G), for callers that need both.
pub fn b_functional_parts(d: &FiniteDist) -> Result<(f64, f64)> {
    let m = require_centered(d)?;
    let z = zero_bias(d)?;
    let dist = w1_step_pwl(d, &z);
    Ok((2.0 * m.variance * dist / m.abs_third, dist))
}

/// A(G). Laws with a nonzero mean are centered first, which leaves σ, ω
/// and h unchanged.
pub fn a_functional(d: &FiniteDist) -> Result<f64> {
    a_report(d).map(|r| r.a_value)
}

/// σ³A(G)/E|X − EX|³.
pub fn zolotarev_ratio(d: &FiniteDist) -> Result<f64> {
    a_report(d).map(|r| r.zolotarev_ratio)
}

pub fn a_report(d: &FiniteDist) -> Result<AReport> {
    let m = require_variance(d)?;
    let centered = center(d);
    let abs_third = moments(&centered).abs_third;
    let omega = m.omega.unwrap_or(0.0);
    let lattice = lattice_span(d);
    let h = if lattice.is_lattice { lattice.span } else { 0.0 };
    let sigma = m.std_dev();
    let a_value = zolotarev_integral(omega, h) / sigma;
    Ok(AReport {
        a_value,
        omega,
        h,
        zolotarev_ratio: sigma.powi(3) * a_value / abs_third,
        lattice,
    })
}

/// ∫_{−1/2}^{1/2} J(ω/2 + hu) du where J(c) = (2π)^{−1/2} ∫ |c − (ω/2)x²| e^{−x²/2} dx.
///
/// The inner integral is exact; the outer one is split at the zero of
/// c(u) and integrated adaptively.
pub fn zolotarev_integral(omega: f64, h: f64) -> f64 {
    let k = 0.5 * omega;
    if h == 0.0 {
        return inner_integral(k, k);
    }
    let f = |u: f64| inner_integral(k + h * u, k);
    let rule = GaussLegendre::new(15);
    let kink = -k / h;
    let mut cuts = vec![-0.5];
    if kink > -0.5 && kink < 0.5 {
        cuts.push(kink);
    }
    cuts.push(0.5);
    cuts.windows(2)
        .map(|w| rule.integrate_adaptive(&f, w[0], w[1], A_QUAD_TOL / (cuts.len() - 1) as f64))
        .sum()
}

/// (2π)^{−1/2} ∫ |c − k x²| e^{−x²/2} dx for k ≥ 0, using the Gaussian
/// partial moments ∫_{|x|>r} φ = 2Φ(−r) and ∫_{|x|>r} x²φ = 2Φ(−r) + 2rφ(r).
pub fn inner_integral(c: f64, k: f64) -> f64 {
    if k == 0.0 {
        return c.abs();
    }
    if c <= 0.0 {
        return k - c;
    }
    let r = (c / k).sqrt();
    let mass_out = 2.0 * normal::cdf(-r);
    let second_out = mass_out + 2.0 * r * normal::pdf(r);
    c * (1.0 - 2.0 * mass_out) - k * (1.0 - 2.0 * second_out)
}

/// ψ(p) = √(pq)/(p² + q²) · ‖G_p − Φ‖₁ for the standardized Bernoulli G_p.
pub fn psi_lower_bound(p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::DomainError(format!("p = {p} not in (0, 1)")));
    }
    let q = 1.0 - p;
    let g = FiniteDist::standardized_bernoulli(p)?;
    Ok((p * q).sqrt() / (p * p + q * q) * w1_step_normal(&g))
}

/// Every functional of a centered law.
pub fn functional_report(d: &FiniteDist) -> Result<FunctionalReport> {
    let b_value = b_functional(d)?;
    let a = a_report(d)?;
    Ok(FunctionalReport {
        b_value,
        a_value: a.a_value,
        zolotarev_ratio: a.zolotarev_ratio,
        psi: None,
        moments: moments(d),
        lattice: a.lattice,
    })
}

/// [`functional_report`] of the standardized Bernoulli(p) law, with ψ(p).
pub fn bernoulli_report(p: f64) -> Result<FunctionalReport> {
    let g = FiniteDist::standardized_bernoulli(p)?;
    let mut report = functional_report(&g)?;
    report.psi = Some(psi_lower_bound(p)?);
    Ok(report)
}
