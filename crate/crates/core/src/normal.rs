//! Standard normal kernels: Φ, φ, Φ⁻¹ and the antiderivative
//! Ψ(x) = xΦ(x) + φ(x) of Φ.
//!
//! Φ is evaluated through `erfc`, which keeps full relative precision in
//! the lower tail. Upper-tail quantities should go through [`sf`] or the
//! reflection Ψ(−x) = ∫ₓ^∞ (1 − Φ) rather than `1 - cdf(x)`.

use libm::erfc;
use statrs::function::erf::erfc_inv;
use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

/// 1/√(2π)
pub const FRAC_1_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

/// E|Z| = √(2/π)
pub const MEAN_ABS: f64 = 0.797_884_560_802_865_4;

#[inline]
pub fn pdf(x: f64) -> f64 {
    FRAC_1_SQRT_2PI * (-0.5 * x * x).exp()
}

/// Φ(x).
#[inline]
pub fn cdf(x: f64) -> f64 {
    0.5 * erfc(-x * FRAC_1_SQRT_2)
}

/// Survival function 1 − Φ(x) = Φ(−x).
#[inline]
pub fn sf(x: f64) -> f64 {
    cdf(-x)
}

/// Φ⁻¹(u) for u in (0, 1); ±∞ at the endpoints, NaN outside.
///
/// Starts from the inverse complementary error function and polishes
/// with one Newton step on whichever tail of Φ is more accurate.
pub fn quantile(u: f64) -> f64 {
    if !(0.0..=1.0).contains(&u) || u.is_nan() {
        return f64::NAN;
    }
    if u == 0.0 {
        return f64::NEG_INFINITY;
    }
    if u == 1.0 {
        return f64::INFINITY;
    }
    if u == 0.5 {
        return 0.0;
    }
    let x = -SQRT_2 * erfc_inv(2.0 * u);
    if !x.is_finite() {
        return x;
    }
    let density = pdf(x);
    if density <= 0.0 {
        return x;
    }
    let residual = if u < 0.5 {
        cdf(x) - u
    } else {
        (1.0 - u) - sf(x)
    };
    x - residual / density
}

/// Ψ(x) = ∫_{-∞}^x Φ(t) dt = xΦ(x) + φ(x).
///
/// By symmetry Ψ(−x) = ∫ₓ^∞ (1 − Φ(t)) dt.
#[inline]
pub fn cdf_antiderivative(x: f64) -> f64 {
    if x == f64::NEG_INFINITY {
        return 0.0;
    }
    x * cdf(x) + pdf(x)
}

/// ∫ₐᵇ Φ(t) dt, evaluated so that no large cancellations occur on
/// either half-line.
pub fn cdf_integral(a: f64, b: f64) -> f64 {
    if b <= a {
        return 0.0;
    }
    if b <= 0.0 {
        cdf_antiderivative(b) - cdf_antiderivative(a)
    } else if a >= 0.0 {
        // ∫ Φ = (b − a) − ∫ (1 − Φ)
        (b - a) - (cdf_antiderivative(-a) - cdf_antiderivative(-b))
    } else {
        cdf_integral(a, 0.0) + cdf_integral(0.0, b)
    }
}

/// ∫ₐᵇ |c − Φ(t)| dt for a constant level c ∈ [0, 1], using the crossing
/// point Φ⁻¹(c) directly.
pub fn abs_level_integral(a: f64, b: f64, c: f64) -> f64 {
    if b <= a {
        return 0.0;
    }
    // Work in whichever half-line keeps the small quantities small.
    if a + b > 0.0 {
        return abs_level_integral_lower(-b, -a, 1.0 - c);
    }
    abs_level_integral_lower(a, b, c)
}

/// Same as [`abs_level_integral`] but takes the complementary level
/// `1 - c` explicitly, which callers may know more accurately than c.
pub fn abs_level_integral_with_complement(a: f64, b: f64, c: f64, c_complement: f64) -> f64 {
    if b <= a {
        return 0.0;
    }
    if a + b > 0.0 {
        abs_level_integral_lower(-b, -a, c_complement)
    } else {
        abs_level_integral_lower(a, b, c)
    }
}

fn abs_level_integral_lower(a: f64, b: f64, c: f64) -> f64 {
    let t = if c <= 0.0 {
        f64::NEG_INFINITY
    } else if c >= 1.0 {
        f64::INFINITY
    } else {
        quantile(c)
    };
    let t = t.clamp(a, b);
    // c − Φ ≥ 0 on [a, t], ≤ 0 on [t, b]
    let below = c * (t - a) - cdf_integral(a, t);
    let above = cdf_integral(t, b) - c * (b - t);
    below.max(0.0) + above.max(0.0)
}
