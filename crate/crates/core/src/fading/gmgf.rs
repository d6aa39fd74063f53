//! Closed-form generalized MGFs, all evaluated in log space.

use std::f64::consts::PI;

use super::FadingModel;
use crate::error::{domain, Result};
use crate::numerics::{ln_gamma_pos, ln_hyp1f1, ln_hyp1f2, ln_hyp2f1, try_integrate_periodic, LnValue, Tolerance};

/// Largest integer order for which the TWDP double-sum closed form is used;
/// beyond it the sum cancels too heavily and the phase average takes over.
pub(crate) const TWDP_CLOSED_FORM_MAX_P: f64 = 24.0;

pub(super) fn check_args(p: f64, s: f64) -> Result<()> {
    if !(p >= 0.0) || !p.is_finite() {
        return Err(domain("gmgf", format!("order p = {p} must be nonnegative")));
    }
    if !(s <= 0.0) || !s.is_finite() {
        return Err(domain("gmgf", format!("s = {s} must be nonpositive")));
    }
    Ok(())
}

fn positive(v: LnValue, what: &'static str) -> Result<f64> {
    if v.sign > 0.0 {
        Ok(v.ln_abs)
    } else {
        Err(domain(what, "hypergeometric factor is not positive"))
    }
}

pub(super) fn ln_gmgf(model: &FadingModel, p: f64, s: f64, tol: &Tolerance) -> Result<f64> {
    match *model {
        FadingModel::Rayleigh { omega_x } => {
            Ok(ln_gamma_pos(p + 1.0) + p * omega_x.ln() - (p + 1.0) * (-s * omega_x).ln_1p())
        }
        FadingModel::Nakagami { m, omega_x } => Ok(ln_nakagami(m, omega_x, p, s)),
        FadingModel::Rician { k, omega_x } => ln_rician(k, k, omega_x, p, s),
        FadingModel::KappaMu { kappa, mu, omega_x } => {
            if kappa == 0.0 {
                return Ok(ln_nakagami(mu, omega_x, p, s));
            }
            let d = mu * (1.0 + kappa) - s * omega_x;
            let f = ln_hyp1f1(mu + p, mu, mu * mu * kappa * (1.0 + kappa) / d)?;
            Ok(ln_gamma_pos(mu + p) - ln_gamma_pos(mu) + p * omega_x.ln() + mu * mu.ln()
                + mu * (1.0 + kappa).ln()
                - mu * kappa
                - (mu + p) * d.ln()
                + positive(f, "kappa-mu gmgf")?)
        }
        FadingModel::Hoyt { q, omega_x } => {
            let q2 = q * q;
            let d = 1.0 + q2 - 2.0 * s * q2 * omega_x;
            let f = ln_hyp2f1(0.5, p + 1.0, 1.0, (1.0 - q2 * q2) / d)?;
            Ok(ln_gamma_pos(p + 1.0) + (1.0 + q2).ln() + p * 2f64.ln() + (2.0 * p + 1.0) * q.ln()
                + p * omega_x.ln()
                - (p + 1.0) * d.ln()
                + positive(f, "hoyt gmgf")?)
        }
        FadingModel::EtaMu { eta, mu, omega_x } => {
            let d = mu * (eta + 1.0) / eta - s * omega_x;
            let z = mu * (1.0 - eta * eta) / (mu * (1.0 + eta) - s * eta * omega_x);
            let f = ln_hyp2f1(mu, 2.0 * mu + p, 2.0 * mu, z)?;
            Ok(2.0 * mu * mu.ln() + ln_gamma_pos(p + 2.0 * mu) + p * omega_x.ln()
                + 2.0 * mu * (eta + 1.0).ln()
                - mu * eta.ln()
                - ln_gamma_pos(2.0 * mu)
                - (p + 2.0 * mu) * d.ln()
                + positive(f, "eta-mu gmgf")?)
        }
        FadingModel::KappaMuShadowed { kappa, mu, m, omega_x } => {
            let d = mu * (1.0 + kappa) - s * omega_x;
            let lk = mu * kappa + m;
            let z = mu * mu * kappa * (1.0 + kappa) / (lk * d);
            let f = ln_hyp2f1(m, mu + p, mu, z)?;
            Ok(ln_gamma_pos(mu + p) - ln_gamma_pos(mu) + m * m.ln() + p * omega_x.ln() + mu * mu.ln()
                + mu * (1.0 + kappa).ln()
                - m * lk.ln()
                - (mu + p) * d.ln()
                + positive(f, "kappa-mu shadowed gmgf")?)
        }
        FadingModel::Twdp { k, delta, omega_x } => {
            if k == 0.0 || delta == 0.0 {
                return ln_rician(k, k, omega_x, p, s);
            }
            if p == p.round() && p <= TWDP_CLOSED_FORM_MAX_P {
                let v = twdp_gmgf_closed_form(k, delta, omega_x, p as u32, s)?;
                if v > 0.0 {
                    return Ok(v.ln());
                }
            }
            twdp_gmgf_periodic(k, delta, omega_x, p, s, tol)
        }
    }
}

fn ln_nakagami(m: f64, omega: f64, p: f64, s: f64) -> f64 {
    ln_gamma_pos(p + m) - ln_gamma_pos(m) + p * omega.ln() + m * m.ln() - (p + m) * (m - s * omega).ln()
}

/// Rician-type GMGF whose line-of-sight power `k_los` may differ from the
/// `k` that fixes the diffuse power; `k_los = k` is the ordinary Rician case.
fn ln_rician(k: f64, k_los: f64, omega: f64, p: f64, s: f64) -> Result<f64> {
    let d = 1.0 + k - s * omega;
    let base = ln_gamma_pos(p + 1.0) + p * omega.ln() + (1.0 + k).ln() - (p + 1.0) * d.ln();
    if k_los == 0.0 {
        return Ok(base);
    }
    let f = ln_hyp1f1(p + 1.0, 1.0, k_los * (1.0 + k) / d)?;
    Ok(base - k_los + positive(f, "rician gmgf")?)
}

/// TWDP GMGF as the phase average of Rician-type GMGFs with line-of-sight
/// power K(1 + Δ cos α). Valid for every real p ≥ 0.
pub(crate) fn twdp_gmgf_periodic(k: f64, delta: f64, omega: f64, p: f64, s: f64, tol: &Tolerance) -> Result<f64> {
    let reference = ln_rician(k, k, omega, p, s)?;
    let est = try_integrate_periodic(
        |alpha| {
            let k_los = k * (1.0 + delta * alpha.cos());
            Ok((ln_rician(k, k_los, omega, p, s)? - reference).exp())
        },
        0.0,
        2.0 * PI,
        tol,
    )?;
    Ok(reference + (est.value / (2.0 * PI)).ln())
}

/// Closed-form TWDP GMGF for integer order p, a double finite sum of ₁F₂ terms.
pub(crate) fn twdp_gmgf_closed_form(k: f64, delta: f64, omega: f64, p: u32, s: f64) -> Result<f64> {
    let d = k + 1.0 - omega * s;
    let y = k * delta * omega * s / d;
    let y2 = 0.25 * y * y;
    let ln_pf = ln_gamma_pos(p as f64 + 1.0);
    let lead = p as f64 * omega.ln() - PI.ln() + k * omega * s / d;

    // ₁F₂ blocks depend on j only; j ≤ q ≤ p.
    let mut even = Vec::with_capacity(p as usize + 1);
    let mut odd = Vec::with_capacity(p as usize + 1);
    for j in 0..=p {
        let jf = j as f64;
        if j % 2 == 0 {
            let b = beta_half((jf + 1.0) / 2.0);
            even.push(2.0 * b * ln_hyp1f2((jf + 1.0) / 2.0, 0.5, (jf + 2.0) / 2.0, y2)?.value());
            odd.push(0.0);
        } else {
            let b = beta_half((jf + 2.0) / 2.0);
            even.push(0.0);
            odd.push(2.0 * y * b * ln_hyp1f2((jf + 2.0) / 2.0, 1.5, (jf + 3.0) / 2.0, y2)?.value());
        }
    }

    let mut total = 0.0;
    for q in 0..=p {
        let qf = q as f64;
        let ln_outer = ln_pf - ln_gamma_pos(qf + 1.0) + ln_binomial(p, q) + qf * k.ln()
            + (qf + 1.0) * (k + 1.0).ln()
            - (p as f64 + qf + 1.0) * d.ln();
        let mut inner = 0.0;
        for j in 0..=q {
            let c = (ln_binomial(q, j) + j as f64 * delta.ln()).exp() / 2.0;
            inner += c * (even[j as usize] + odd[j as usize]);
        }
        total += (ln_outer + lead).exp() * inner;
    }
    Ok(total)
}

/// B(a, 1/2).
fn beta_half(a: f64) -> f64 {
    (ln_gamma_pos(a) + ln_gamma_pos(0.5) - ln_gamma_pos(a + 0.5)).exp()
}

fn ln_binomial(n: u32, k: u32) -> f64 {
    ln_gamma_pos(n as f64 + 1.0) - ln_gamma_pos(k as f64 + 1.0) - ln_gamma_pos((n - k) as f64 + 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn rayleigh_examples() {
        let m = FadingModel::Rayleigh { omega_x: 1.0 };
        assert!((m.gmgf(1.0, 0.0, &tol()).unwrap() - 1.0).abs() < 1e-15);
        assert!((m.gmgf(0.0, -1.0, &tol()).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn every_model_is_normalized() {
        for model in super::super::tests::zoo() {
            let v = model.gmgf(0.0, 0.0, &tol()).unwrap();
            assert!((v - 1.0).abs() < 1e-12, "{model:?}: {v}");
            let mean = model.gmgf(1.0, 0.0, &tol()).unwrap();
            assert!(rel(mean, model.omega_x()) < 1e-12, "{model:?}: {mean}");
        }
    }

    #[test]
    fn argument_checks() {
        let m = FadingModel::Rayleigh { omega_x: 1.0 };
        assert!(m.gmgf(-1.0, 0.0, &tol()).is_err());
        assert!(m.gmgf(1.0, 0.1, &tol()).is_err());
    }

    #[test]
    fn twdp_closed_form_matches_phase_average() {
        for &(k, d) in &[(4.0, 0.9), (7.0, 0.7), (2.0, 0.3), (10.0, 1.0)] {
            for p in [0u32, 1, 2, 5, 12, 24] {
                for &s in &[-0.1, -1.5, -10.0] {
                    let a = twdp_gmgf_closed_form(k, d, 1.0, p, s).unwrap();
                    let b = twdp_gmgf_periodic(k, d, 1.0, p as f64, s, &tol()).unwrap().exp();
                    assert!(rel(a, b) < 1e-9, "K={k} Δ={d} p={p} s={s}: {a} vs {b}");
                }
            }
        }
    }
}
