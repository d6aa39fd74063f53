//! Generalized hypergeometric functions ₁F₁, ₂F₁ and ₁F₂ for real arguments.
//!
//! Everything reduces to one ascending-series kernel. The kernel keeps its
//! running sum in a scaled form so that large intermediate values (₁F₁ with a
//! big first parameter, ₂F₁ close to z = 1) do not overflow, and the `ln_*`
//! entry points expose that scale to callers working in log space.

use super::gamma::{is_nonpositive_integer, ln_gamma_sign};
use crate::error::{domain, Error, Result};

const EPS: f64 = 1e-16;
const MAX_TERMS: usize = 2_000_000;
const RESCALE_AT: f64 = 1e250;

/// A real number stored as `sign · exp(ln_abs)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LnValue {
    pub ln_abs: f64,
    pub sign: f64,
}

impl LnValue {
    fn from_parts(mantissa: f64, ln_scale: f64) -> Self {
        if mantissa == 0.0 {
            return LnValue {
                ln_abs: f64::NEG_INFINITY,
                sign: 0.0,
            };
        }
        LnValue {
            ln_abs: mantissa.abs().ln() + ln_scale,
            sign: mantissa.signum(),
        }
    }

    pub fn value(self) -> f64 {
        if self.sign == 0.0 {
            0.0
        } else {
            self.sign * self.ln_abs.exp()
        }
    }

    fn mul_ln(self, ln_factor: f64, sign: f64) -> Self {
        LnValue {
            ln_abs: self.ln_abs + ln_factor,
            sign: self.sign * sign,
        }
    }
}

/// Σ_k Π(a_i)_k / Π(b_j)_k · z^k / k!, returned as mantissa and log scale.
///
/// `limit_ratio` is the limit of |t_{k+1}/t_k| as k → ∞ (|z| for ₂F₁, 0 for
/// the confluent cases); it keeps the geometric tail bound honest while the
/// ratio is still climbing toward that limit.
fn series(
    function: &'static str,
    upper: &[f64],
    lower: &[f64],
    z: f64,
    limit_ratio: f64,
) -> Result<LnValue> {
    for &b in lower {
        if is_nonpositive_integer(b) {
            return Err(Error::Pole { function, value: b });
        }
    }
    if z == 0.0 {
        return Ok(LnValue {
            ln_abs: 0.0,
            sign: 1.0,
        });
    }
    // Past this index every Pochhammer factor has fixed sign and the term
    // ratio is monotone, so a small ratio really means a small tail.
    let settle = upper
        .iter()
        .chain(lower.iter())
        .fold(0.0f64, |acc, &p| acc.max(-p))
        .max(0.0)
        + 1.0;

    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    let mut comp = 0.0f64;
    let mut ln_scale = 0.0f64;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        let mut ratio = z / (kf + 1.0);
        for &a in upper {
            ratio *= a + kf;
        }
        for &b in lower {
            ratio /= b + kf;
        }
        term *= ratio;
        if term == 0.0 {
            // terminated, or underflowed far below the running sum
            return Ok(LnValue::from_parts(sum + comp, ln_scale));
        }
        let t = sum + term;
        if sum.abs() >= term.abs() {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;

        if sum.abs() > RESCALE_AT || term.abs() > RESCALE_AT {
            sum /= RESCALE_AT;
            comp /= RESCALE_AT;
            term /= RESCALE_AT;
            ln_scale += RESCALE_AT.ln();
        }

        if kf + 1.0 >= settle {
            let r = ratio.abs().max(limit_ratio);
            if r < 1.0 {
                let tail = term.abs() * r / (1.0 - r);
                if tail <= EPS * (sum + comp).abs() {
                    return Ok(LnValue::from_parts(sum + comp, ln_scale));
                }
            }
        }
        if !sum.is_finite() {
            break;
        }
    }
    Err(Error::NonConvergence {
        what: function,
        estimate: LnValue::from_parts(sum + comp, ln_scale).value(),
        error_estimate: f64::NAN,
    })
}

/// ₁F₁(a; b; z) in sign/log form.
pub fn ln_hyp1f1(a: f64, b: f64, z: f64) -> Result<LnValue> {
    if !(a.is_finite() && b.is_finite() && z.is_finite()) {
        return Err(domain("hyp1f1", format!("a = {a}, b = {b}, z = {z}")));
    }
    if is_nonpositive_integer(b) {
        return Err(Error::Pole {
            function: "hyp1f1",
            value: b,
        });
    }
    if z < 0.0 && !is_nonpositive_integer(a) {
        // Kummer: ₁F₁(a; b; z) = e^z ₁F₁(b − a; b; −z) turns a cancelling
        // alternating series into one with eventually positive terms.
        let v = series("hyp1f1", &[b - a], &[b], -z, 0.0)?;
        return Ok(v.mul_ln(z, 1.0));
    }
    series("hyp1f1", &[a], &[b], z, 0.0)
}

/// Kummer's confluent hypergeometric function ₁F₁(a; b; z).
pub fn hyp1f1(a: f64, b: f64, z: f64) -> Result<f64> {
    ln_hyp1f1(a, b, z).map(LnValue::value)
}

/// ₁F₂(a; b, c; z) in sign/log form.
pub fn ln_hyp1f2(a: f64, b: f64, c: f64, z: f64) -> Result<LnValue> {
    if !(a.is_finite() && b.is_finite() && c.is_finite() && z.is_finite()) {
        return Err(domain("hyp1f2", format!("a = {a}, b = {b}, c = {c}, z = {z}")));
    }
    series("hyp1f2", &[a], &[b, c], z, 0.0)
}

/// ₁F₂(a; b, c; z) by its ascending series.
pub fn hyp1f2(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    ln_hyp1f2(a, b, c, z).map(LnValue::value)
}

/// ₂F₁(a, b; c; z) in sign/log form, for z < 1.
pub fn ln_hyp2f1(a: f64, b: f64, c: f64, z: f64) -> Result<LnValue> {
    if !(a.is_finite() && b.is_finite() && c.is_finite() && z.is_finite()) {
        return Err(domain("hyp2f1", format!("a = {a}, b = {b}, c = {c}, z = {z}")));
    }
    if is_nonpositive_integer(c) {
        return Err(Error::Pole {
            function: "hyp2f1",
            value: c,
        });
    }
    if z >= 1.0 {
        return Err(domain("hyp2f1", format!("z = {z} must be below 1")));
    }
    // Pfaff: ₂F₁(a, b; c; z) = (1 − z)^{−a} ₂F₁(a, c − b; c; z/(z − 1)).
    // Beyond −1/2 it is needed for convergence; closer to the origin it is
    // still worth taking when it turns an alternating series into a positive one.
    let positive_variant = a >= 0.0 && c - b >= 0.0 || b >= 0.0 && c - a >= 0.0;
    if z < -0.5 || (z < 0.0 && positive_variant) {
        let w = z / (z - 1.0);
        let ln_1mz = (1.0 - z).ln();
        let (p, q) = if is_nonpositive_integer(c - a) && !is_nonpositive_integer(c - b) {
            // prefer a terminating series
            (b, a)
        } else if !(a >= 0.0 && c - b >= 0.0) && b >= 0.0 && c - a >= 0.0 {
            (b, a)
        } else {
            (a, b)
        };
        let v = unit_interval(p, c - q, c, w)?;
        return Ok(v.mul_ln(-p * ln_1mz, 1.0));
    }
    unit_interval(a, b, c, z)
}

/// Gauss hypergeometric function ₂F₁(a, b; c; z) for z < 1.
pub fn hyp2f1(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    ln_hyp2f1(a, b, c, z).map(LnValue::value)
}

/// ₂F₁ for z ∈ [−0.5, 1).
fn unit_interval(a: f64, b: f64, c: f64, z: f64) -> Result<LnValue> {
    let terminates = is_nonpositive_integer(a) || is_nonpositive_integer(b);
    let d = c - a - b;
    let near_integer_gap = (d - d.round()).abs() < 1e-5;
    if z <= 0.5 || terminates || near_integer_gap {
        return series("hyp2f1", &[a, b], &[c], z, z.abs());
    }
    connection(a, b, c, z)
}

/// Linear transformation onto 1 − z:
/// ₂F₁(a,b;c;z) = A ₂F₁(a,b;a+b−c+1;1−z) + (1−z)^{c−a−b} B ₂F₁(c−a,c−b;c−a−b+1;1−z).
fn connection(a: f64, b: f64, c: f64, z: f64) -> Result<LnValue> {
    let d = c - a - b;
    let y = 1.0 - z;
    let mut total = Vec::with_capacity(2);
    if let Some(coef) = ln_gamma_quotient(&[c, d], &[c - a, c - b]) {
        let f = series("hyp2f1", &[a, b], &[1.0 - d], y, y)?;
        total.push(f.mul_ln(coef.ln_abs, coef.sign));
    }
    if let Some(coef) = ln_gamma_quotient(&[c, -d], &[a, b]) {
        let f = series("hyp2f1", &[c - a, c - b], &[1.0 + d], y, y)?;
        total.push(f.mul_ln(coef.ln_abs + d * y.ln(), coef.sign));
    }
    Ok(add_ln(&total))
}

/// ln|Π Γ(num) / Π Γ(den)| with sign; `None` when a denominator pole zeroes it.
fn ln_gamma_quotient(num: &[f64], den: &[f64]) -> Option<LnValue> {
    let mut ln = 0.0;
    let mut sign = 1.0;
    for &x in den {
        let (l, s) = ln_gamma_sign(x)?;
        ln -= l;
        sign *= s;
    }
    for &x in num {
        let (l, s) = ln_gamma_sign(x)?;
        ln += l;
        sign *= s;
    }
    Some(LnValue { ln_abs: ln, sign })
}

fn add_ln(parts: &[LnValue]) -> LnValue {
    let top = parts
        .iter()
        .filter(|p| p.sign != 0.0)
        .map(|p| p.ln_abs)
        .fold(f64::NEG_INFINITY, f64::max);
    if top == f64::NEG_INFINITY {
        return LnValue::from_parts(0.0, 0.0);
    }
    let s: f64 = parts
        .iter()
        .filter(|p| p.sign != 0.0)
        .map(|p| p.sign * (p.ln_abs - top).exp())
        .sum();
    LnValue::from_parts(s, top)
}
