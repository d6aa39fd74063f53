//! Modified Bessel function of the first kind, I_ν(x).
//!
//! Ascending power series (all terms positive for ν ≥ 0, x ≥ 0) evaluated with
//! an e^{-x} scale factor folded into the first term, and the Hankel
//! asymptotic expansion once x is large compared with ν².

use std::f64::consts::PI;

use super::gamma::{ln_gamma_pos, rgamma};
use crate::error::{domain, Result};

const SERIES_LIMIT: f64 = 700.0;

/// I_ν(x). Integer orders accept any real x; non-integer orders need x ≥ 0.
pub fn bessel_i(order: f64, x: f64) -> Result<f64> {
    let (scaled, sign) = scaled_with_sign(order, x)?;
    let ax = x.abs();
    if ax > SERIES_LIMIT {
        // e^{|x|} overflows past ~709; let the caller see the infinity.
        return Ok(sign * scaled * (ax - SERIES_LIMIT).exp() * SERIES_LIMIT.exp());
    }
    Ok(sign * scaled * ax.exp())
}

/// e^{-|x|} I_ν(x).
pub fn bessel_i_scaled(order: f64, x: f64) -> Result<f64> {
    let (scaled, sign) = scaled_with_sign(order, x)?;
    Ok(sign * scaled)
}

fn scaled_with_sign(order: f64, x: f64) -> Result<(f64, f64)> {
    if !order.is_finite() || x.is_nan() {
        return Err(domain("bessel_i", format!("order = {order}, x = {x}")));
    }
    let integer = order == order.round();
    if integer {
        // I_{-n} = I_n and I_n(-x) = (-1)^n I_n(x)
        let n = order.abs();
        let sign = if x < 0.0 && (n as i64) % 2 == 1 { -1.0 } else { 1.0 };
        return Ok((scaled_nonneg(n, x.abs()), sign));
    }
    if x < 0.0 {
        return Err(domain(
            "bessel_i",
            format!("non-integer order {order} requires x >= 0, got {x}"),
        ));
    }
    if x == 0.0 && order < 0.0 {
        return Err(domain("bessel_i", format!("I_{order}(0) is unbounded")));
    }
    Ok((scaled_nonneg(order, x), 1.0))
}

/// e^{-x} I_ν(x) for x ≥ 0.
fn scaled_nonneg(nu: f64, x: f64) -> f64 {
    if x == 0.0 {
        return if nu == 0.0 { 1.0 } else { 0.0 };
    }
    if x > 25.0 && nu * nu < 0.5 * x {
        if let Some(v) = hankel_scaled(nu, x) {
            return v;
        }
    }
    if x <= SERIES_LIMIT {
        series_scaled(nu, x)
    } else {
        hankel_scaled(nu, x).unwrap_or(f64::NAN)
    }
}

fn series_scaled(nu: f64, x: f64) -> f64 {
    let half = 0.5 * x;
    let quarter_sq = half * half;
    // first term e^{-x} (x/2)^ν / Γ(ν+1)
    let mut term = if nu + 1.0 > 0.0 {
        (nu * half.ln() - x - ln_gamma_pos(nu + 1.0)).exp()
    } else {
        (nu * half.ln() - x).exp() * rgamma(nu + 1.0)
    };
    let mut sum = term;
    let mut comp = 0.0;
    let mut k = 0.0;
    loop {
        let denom = (k + 1.0) * (k + nu + 1.0);
        let ratio = quarter_sq / denom;
        term *= ratio;
        let t = sum + term;
        if sum.abs() >= term.abs() {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
        k += 1.0;
        if k + nu + 1.0 > 0.0
            && ratio.abs() < 1.0
            && term.abs() <= 1e-17 * sum.abs()
        {
            break;
        }
        if term == 0.0 && k + nu + 1.0 > 0.0 {
            break;
        }
        if k > 10_000.0 {
            break;
        }
    }
    sum + comp
}

/// Large-x expansion e^{-x} I_ν(x) ≈ (2πx)^{-1/2} Σ (-1)^k a_k(ν) / x^k.
fn hankel_scaled(nu: f64, x: f64) -> Option<f64> {
    let mu = 4.0 * nu * nu;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut prev = f64::INFINITY;
    for k in 1..200 {
        let kf = k as f64;
        let odd = 2.0 * kf - 1.0;
        term *= -(mu - odd * odd) / (kf * 8.0 * x);
        if term.abs() > prev {
            // asymptotic series started diverging before reaching precision
            return None;
        }
        sum += term;
        prev = term.abs();
        if term.abs() <= 1e-17 * sum.abs() {
            return Some(sum / (2.0 * PI * x).sqrt());
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_zero_at_origin() {
        assert_eq!(bessel_i(0.0, 0.0).unwrap(), 1.0);
        assert_eq!(bessel_i(3.0, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn integer_reflections() {
        for &x in &[0.3, 1.7, 6.0, 40.0] {
            let i2 = bessel_i(2.0, x).unwrap();
            assert_eq!(bessel_i(-2.0, x).unwrap(), i2);
            assert_eq!(bessel_i(3.0, -x).unwrap(), -bessel_i(3.0, x).unwrap());
            assert_eq!(bessel_i(4.0, -x).unwrap(), bessel_i(4.0, x).unwrap());
        }
    }

    #[test]
    fn non_integer_order_rejects_negative_argument() {
        assert!(bessel_i(0.5, -1.0).is_err());
        assert!(bessel_i(-0.5, 0.0).is_err());
    }

    #[test]
    fn half_order_closed_forms() {
        // I_{1/2}(x) = sqrt(2/(πx)) sinh x, I_{-1/2}(x) = sqrt(2/(πx)) cosh x
        for &x in &[0.2, 1.0, 5.0, 30.0, 120.0] {
            let c = (2.0 / (PI * x)).sqrt();
            let a = bessel_i(0.5, x).unwrap();
            let b = bessel_i(-0.5, x).unwrap();
            assert!((a / (c * x.sinh()) - 1.0).abs() < 1e-13, "x={x}");
            assert!((b / (c * x.cosh()) - 1.0).abs() < 1e-13, "x={x}");
        }
    }

    #[test]
    fn scaled_branches_agree_near_switch() {
        // series and Hankel expansion on either side of the switch point
        let a = series_scaled(0.0, 26.0);
        let b = hankel_scaled(0.0, 26.0).unwrap();
        assert!((a / b - 1.0).abs() < 1e-13);
        let a = series_scaled(1.0, 300.0);
        let b = hankel_scaled(1.0, 300.0).unwrap();
        assert!((a / b - 1.0).abs() < 1e-13);
    }
}
