//! Error function family, expressed through the incomplete gamma kernels:
//! erf(x) = sign(x) P(1/2, x²) and erfc(x) = Q(1/2, x²) for x ≥ 0.

use std::f64::consts::PI;

use super::gamma::{inc_gamma_pq, upper_continued_fraction};

/// Error function.
pub fn erf(x: f64) -> f64 {
    if x == 0.0 || x.is_nan() {
        return x;
    }
    let (p, _) = inc_gamma_pq(0.5, x * x);
    p.copysign(x)
}

/// Complementary error function 1 − erf(x), accurate in the right tail.
pub fn erfc(x: f64) -> f64 {
    if x.is_nan() {
        return x;
    }
    let (p, q) = inc_gamma_pq(0.5, x * x);
    if x >= 0.0 {
        q
    } else {
        1.0 + p
    }
}

/// Scaled complementary error function e^{x²} erfc(x).
pub fn erfcx(x: f64) -> f64 {
    if x.is_infinite() && x > 0.0 {
        return 0.0;
    }
    let z = x * x;
    if x < 0.0 || z < 1.5 {
        return z.exp() * erfc(x);
    }
    x / PI.sqrt() * upper_continued_fraction(0.5, z)
}

/// Standard normal CDF Φ(x), built on erfc so both tails keep relative accuracy.
pub(crate) fn normal_cdf(x: f64) -> f64 {
    0.5 * erfc(-x / std::f64::consts::SQRT_2)
}
