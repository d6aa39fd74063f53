//! Baseline fast-fading models for the received power X.
//!
//! Every model is described by its mean power `omega_x` plus shape parameters.
//! The generalized moment generating function φ^{(p)}(s) = E[X^p e^{sX}] is the
//! workhorse consumed by the composite layer; gamma-mixture representations,
//! small-argument tail parameters and physical samplers complete the set.

mod gmgf;
mod mixture;
mod sample;
mod tail;

use std::f64::consts::PI;

pub use mixture::{GammaMixture, GammaTerm};
pub use tail::TailParams;

pub(crate) use gmgf::twdp_gmgf_periodic;

use crate::error::{check_param, domain, Error, Result};
use crate::numerics::{
    bessel_i_scaled, ln_gamma_pos, reg_lower_gamma, try_integrate_finite, try_integrate_periodic,
    try_integrate_semi_infinite_scaled, Tolerance,
};

/// Baseline fading distribution of the instantaneous power X.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FadingModel {
    Rayleigh { omega_x: f64 },
    /// Rice factor `k`.
    Rician { k: f64, omega_x: f64 },
    /// Nakagami-m with shape `m ≥ 0.5`.
    Nakagami { m: f64, omega_x: f64 },
    /// Nakagami-q with `q ∈ (0, 1]`.
    Hoyt { q: f64, omega_x: f64 },
    KappaMu { kappa: f64, mu: f64, omega_x: f64 },
    /// Format 1, `eta ∈ (0, 1]`.
    EtaMu { eta: f64, mu: f64, omega_x: f64 },
    /// κ-μ shadowed with line-of-sight shadowing shape `m`.
    KappaMuShadowed { kappa: f64, mu: f64, m: f64, omega_x: f64 },
    /// Two-wave with diffuse power: specular-to-diffuse ratio `k`, imbalance `delta ∈ [0, 1]`.
    Twdp { k: f64, delta: f64, omega_x: f64 },
}

impl FadingModel {
    pub fn validate(&self) -> Result<()> {
        let omega_x = self.omega_x();
        check_param("omega_x", omega_x, omega_x > 0.0, "must be positive")?;
        match *self {
            FadingModel::Rayleigh { .. } => Ok(()),
            FadingModel::Rician { k, .. } => check_param("k", k, k >= 0.0, "must be nonnegative"),
            FadingModel::Nakagami { m, .. } => check_param("m", m, m >= 0.5, "must be at least 0.5"),
            FadingModel::Hoyt { q, .. } => check_param("q", q, q > 0.0 && q <= 1.0, "must lie in (0, 1]"),
            FadingModel::KappaMu { kappa, mu, .. } => {
                check_param("kappa", kappa, kappa >= 0.0, "must be nonnegative")?;
                check_param("mu", mu, mu > 0.0, "must be positive")
            }
            FadingModel::EtaMu { eta, mu, .. } => {
                check_param("eta", eta, eta > 0.0 && eta <= 1.0, "must lie in (0, 1]")?;
                check_param("mu", mu, mu > 0.0, "must be positive")
            }
            FadingModel::KappaMuShadowed { kappa, mu, m, .. } => {
                check_param("kappa", kappa, kappa >= 0.0, "must be nonnegative")?;
                check_param("mu", mu, mu > 0.0, "must be positive")?;
                check_param("m", m, m > 0.0, "must be positive")
            }
            FadingModel::Twdp { k, delta, .. } => {
                check_param("k", k, k >= 0.0, "must be nonnegative")?;
                check_param("delta", delta, (0.0..=1.0).contains(&delta), "must lie in [0, 1]")
            }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            FadingModel::Rayleigh { .. } => "Rayleigh",
            FadingModel::Rician { .. } => "Rician",
            FadingModel::Nakagami { .. } => "Nakagami-m",
            FadingModel::Hoyt { .. } => "Hoyt",
            FadingModel::KappaMu { .. } => "kappa-mu",
            FadingModel::EtaMu { .. } => "eta-mu",
            FadingModel::KappaMuShadowed { .. } => "kappa-mu shadowed",
            FadingModel::Twdp { .. } => "TWDP",
        }
    }

    pub fn omega_x(&self) -> f64 {
        match *self {
            FadingModel::Rayleigh { omega_x }
            | FadingModel::Rician { omega_x, .. }
            | FadingModel::Nakagami { omega_x, .. }
            | FadingModel::Hoyt { omega_x, .. }
            | FadingModel::KappaMu { omega_x, .. }
            | FadingModel::EtaMu { omega_x, .. }
            | FadingModel::KappaMuShadowed { omega_x, .. }
            | FadingModel::Twdp { omega_x, .. } => omega_x,
        }
    }

    /// The same shape with mean power replaced.
    pub fn with_omega(mut self, omega: f64) -> Self {
        match &mut self {
            FadingModel::Rayleigh { omega_x }
            | FadingModel::Rician { omega_x, .. }
            | FadingModel::Nakagami { omega_x, .. }
            | FadingModel::Hoyt { omega_x, .. }
            | FadingModel::KappaMu { omega_x, .. }
            | FadingModel::EtaMu { omega_x, .. }
            | FadingModel::KappaMuShadowed { omega_x, .. }
            | FadingModel::Twdp { omega_x, .. } => *omega_x = omega,
        }
        self
    }

    /// Whether [`FadingModel::gamma_mixture`] is available.
    pub fn has_gamma_mixture(&self) -> bool {
        !matches!(self, FadingModel::Hoyt { .. } | FadingModel::EtaMu { .. })
    }

    /// φ^{(p)}(s) = E[X^p e^{sX}] for p ≥ 0, s ≤ 0.
    pub fn gmgf(&self, p: f64, s: f64, tol: &Tolerance) -> Result<f64> {
        self.ln_gmgf(p, s, tol).map(f64::exp)
    }

    /// ln φ^{(p)}(s). Large p or very negative s stay representable here
    /// even when the GMGF itself would overflow or underflow.
    pub fn ln_gmgf(&self, p: f64, s: f64, tol: &Tolerance) -> Result<f64> {
        self.validate()?;
        gmgf::check_args(p, s)?;
        gmgf::ln_gmgf(self, p, s, tol)
    }

    /// E[X^p e^{sX}] by direct quadrature of the density; the reference the
    /// closed forms are checked against.
    pub fn gmgf_numeric(&self, p: f64, s: f64, tol: &Tolerance) -> Result<f64> {
        self.validate()?;
        gmgf::check_args(p, s)?;
        let omega = self.omega_x();
        let inner = tol.with_max_subdivisions(tol.max_subdivisions.max(2000));
        let pdf_tol = tol.with_rel_tol(tol.rel_tol.min(1e-12));
        // The bulk of x^p e^{sx} f(x) sits near (p + 1)/(1/Ω − s) for gamma-like f.
        let scale = ((p + 1.0) / (1.0 / omega - s)).max(1e-3 * omega);
        let est = try_integrate_semi_infinite_scaled(
            |x| {
                let f = self.pdf(x, &pdf_tol)?;
                if f == 0.0 {
                    return Ok(0.0);
                }
                Ok((p * x.ln() + s * x + f.ln()).exp())
            },
            scale,
            &inner,
        )?;
        Ok(est.value)
    }

    /// Density of X at x > 0.
    pub fn pdf(&self, x: f64, tol: &Tolerance) -> Result<f64> {
        self.validate()?;
        if !(x > 0.0) {
            return Err(domain("fading pdf", format!("x = {x} must be positive")));
        }
        if x.is_infinite() {
            return Ok(0.0);
        }
        match *self {
            FadingModel::Rayleigh { omega_x } => Ok((-x / omega_x).exp() / omega_x),
            FadingModel::Nakagami { m, omega_x } => Ok(gamma_pdf(m, omega_x, x)),
            FadingModel::Rician { k, omega_x } => Ok(kappa_mu_pdf(k, 1.0, omega_x, x)),
            FadingModel::KappaMu { kappa, mu, omega_x } => Ok(kappa_mu_pdf(kappa, mu, omega_x, x)),
            FadingModel::Hoyt { q, omega_x } => {
                let q2 = q * q;
                let a = (1.0 + q2) * (1.0 + q2) * x / (4.0 * q2 * omega_x);
                let b = (1.0 - q2 * q2) * x / (4.0 * q2 * omega_x);
                let pre = (1.0 + q2) / (2.0 * q * omega_x);
                Ok(pre * (b - a).exp() * bessel_i_scaled(0.0, b)?)
            }
            FadingModel::EtaMu { eta, mu, omega_x } => eta_mu_pdf(eta, mu, omega_x, x),
            FadingModel::KappaMuShadowed { .. } => Ok(self.gamma_mixture(tol)?.pdf(x)),
            FadingModel::Twdp { k, delta, omega_x } => twdp_pdf(k, delta, omega_x, x, tol),
        }
    }

    /// Cumulative distribution of X at x ≥ 0.
    pub fn cdf(&self, x: f64, tol: &Tolerance) -> Result<f64> {
        self.validate()?;
        if !(x >= 0.0) {
            return Err(domain("fading cdf", format!("x = {x} must be nonnegative")));
        }
        if x == 0.0 {
            return Ok(0.0);
        }
        if x.is_infinite() {
            return Ok(1.0);
        }
        match *self {
            FadingModel::Rayleigh { omega_x } => Ok(-(-x / omega_x).exp_m1()),
            FadingModel::Nakagami { m, omega_x } => reg_lower_gamma(m, m * x / omega_x),
            FadingModel::Hoyt { .. } | FadingModel::EtaMu { .. } => {
                let inner = tol.with_max_subdivisions(tol.max_subdivisions.max(2000));
                let pdf_tol = *tol;
                let est = try_integrate_finite(|t| if t > 0.0 { self.pdf(t, &pdf_tol) } else { Ok(0.0) }, 0.0, x, &inner)?;
                Ok(est.value.clamp(0.0, 1.0))
            }
            _ => Ok(self.gamma_mixture(tol)?.cdf(x).clamp(0.0, 1.0)),
        }
    }

    /// Gamma-mixture representation of the density.
    pub fn gamma_mixture(&self, tol: &Tolerance) -> Result<GammaMixture> {
        self.validate()?;
        mixture::gamma_mixture(self, tol)
    }

    /// Small-argument power law F(x) ≈ α/(β+1) (x/Ω_X)^{β+1}.
    pub fn tail_params(&self) -> Result<TailParams> {
        self.validate()?;
        tail::tail_params(self)
    }

    /// `count` draws of X from the physical construction of the model.
    pub fn sample(&self, count: usize, seed: u64) -> Result<Vec<f64>> {
        self.validate()?;
        sample::sample(self, count, seed, crate::rng::tag::FADING)
    }

    pub(crate) fn sample_tagged(&self, count: usize, seed: u64, stream: u64) -> Result<Vec<f64>> {
        self.validate()?;
        sample::sample(self, count, seed, stream)
    }
}

pub(crate) fn gamma_pdf(k: f64, mean: f64, x: f64) -> f64 {
    let rate = k / mean;
    (k * rate.ln() + (k - 1.0) * x.ln() - rate * x - ln_gamma_pos(k)).exp()
}

/// κ-μ power density; Rician is the μ = 1 case.
fn kappa_mu_pdf(kappa: f64, mu: f64, omega: f64, x: f64) -> f64 {
    if kappa == 0.0 {
        return gamma_pdf(mu, omega, x);
    }
    let y = x / omega;
    let z = 2.0 * mu * (kappa * (1.0 + kappa) * y).sqrt();
    let ln = mu.ln() + 0.5 * (mu + 1.0) * (1.0 + kappa).ln() - 0.5 * (mu - 1.0) * kappa.ln()
        - mu * kappa
        - omega.ln()
        + 0.5 * (mu - 1.0) * y.ln()
        - mu * (1.0 + kappa) * y
        + z;
    // the scaled Bessel function absorbs e^{z}
    ln.exp() * bessel_i_scaled(mu - 1.0, z).unwrap_or(f64::NAN)
}

fn eta_mu_pdf(eta: f64, mu: f64, omega: f64, x: f64) -> Result<f64> {
    let h = (2.0 + 1.0 / eta + eta) / 4.0;
    let big_h = (1.0 / eta - eta) / 4.0;
    if big_h < 1e-12 {
        // η = 1: the Bessel argument vanishes and the density is Nakagami with shape 2μ
        return Ok(gamma_pdf(2.0 * mu, omega, x));
    }
    let nu = mu - 0.5;
    let z = 2.0 * mu * big_h * x / omega;
    let ln = (2.0 * PI.sqrt()).ln() + (mu + 0.5) * mu.ln() + mu * h.ln() + nu * x.ln()
        - ln_gamma_pos(mu)
        - nu * big_h.ln()
        - (mu + 0.5) * omega.ln()
        - 2.0 * mu * h * x / omega
        + z;
    Ok(ln.exp() * bessel_i_scaled(nu, z)?)
}

/// Density as a single periodic integral over the phase difference of the
/// two specular rays; the scaled Bessel function keeps the integrand finite.
fn twdp_pdf(k: f64, delta: f64, omega: f64, u: f64, tol: &Tolerance) -> Result<f64> {
    if k == 0.0 {
        return Ok((-u / omega).exp() / omega);
    }
    let c = (1.0 + k) / omega;
    let est = try_integrate_periodic(
        |alpha| {
            let ka = k * (1.0 + delta * alpha.cos());
            let z = 2.0 * (u * ka * c).sqrt();
            let expo = -c * u - ka + z;
            Ok(expo.exp() * bessel_i_scaled(0.0, z)?)
        },
        0.0,
        2.0 * PI,
        tol,
    )?;
    Ok(c * est.value / (2.0 * PI))
}

/// TWDP physical-model amplitudes (V₁, V₂, σ²) for mean power Ω, with V₁ ≥ V₂.
pub fn twdp_components(k: f64, delta: f64, omega: f64) -> (f64, f64, f64) {
    let sigma2 = omega / (2.0 * (1.0 + k));
    let root = (1.0 - delta * delta).max(0.0).sqrt();
    let v1 = (sigma2 * k * (1.0 + root)).sqrt();
    let v2 = (sigma2 * k * (1.0 - root)).sqrt();
    (v1, v2, sigma2)
}

pub(crate) fn unsupported(model: &FadingModel, operation: &'static str) -> Error {
    Error::Unsupported {
        model: model.name(),
        operation,
    }
}
