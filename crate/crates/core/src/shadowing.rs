//! Shadowing distributions: lognormal, gamma, inverse Gaussian and inverse
//! gamma, each parameterized the way the fitting pipeline reports them.

use std::f64::consts::PI;
use std::fmt;

use rand_distr::{Distribution, Gamma};

use crate::error::{check_param, domain, Result};
use crate::numerics::{erfcx, ln_gamma_pos, normal_cdf, reg_lower_gamma, reg_upper_gamma};
use crate::rng::{fill_chunked, tag};

/// Family tag used by the fitting layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ShadowingFamily {
    Lognormal,
    Gamma,
    InverseGaussian,
    InverseGamma,
}

impl ShadowingFamily {
    pub const ALL: [ShadowingFamily; 4] = [
        ShadowingFamily::Lognormal,
        ShadowingFamily::Gamma,
        ShadowingFamily::InverseGaussian,
        ShadowingFamily::InverseGamma,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ShadowingFamily::Lognormal => "Lognormal",
            ShadowingFamily::Gamma => "Gamma",
            ShadowingFamily::InverseGaussian => "Inverse Gaussian",
            ShadowingFamily::InverseGamma => "Inverse Gamma",
        }
    }
}

impl fmt::Display for ShadowingFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A shadowing distribution with its parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ShadowingModel {
    /// ln Y ~ N(mu, sigma²).
    Lognormal { mu: f64, sigma: f64 },
    /// Shape `k`, mean `omega`.
    Gamma { k: f64, omega: f64 },
    /// Mean `mu_i`, shape `lambda`.
    InverseGaussian { mu_i: f64, lambda: f64 },
    /// Shape `m > 1`, mean `omega_i`.
    InverseGamma { m: f64, omega_i: f64 },
}

impl ShadowingModel {
    pub fn lognormal(mu: f64, sigma: f64) -> Result<Self> {
        let model = ShadowingModel::Lognormal { mu, sigma };
        model.validate()?;
        Ok(model)
    }

    pub fn gamma(k: f64, omega: f64) -> Result<Self> {
        let model = ShadowingModel::Gamma { k, omega };
        model.validate()?;
        Ok(model)
    }

    pub fn inverse_gaussian(mu_i: f64, lambda: f64) -> Result<Self> {
        let model = ShadowingModel::InverseGaussian { mu_i, lambda };
        model.validate()?;
        Ok(model)
    }

    pub fn inverse_gamma(m: f64, omega_i: f64) -> Result<Self> {
        let model = ShadowingModel::InverseGamma { m, omega_i };
        model.validate()?;
        Ok(model)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            ShadowingModel::Lognormal { mu, sigma } => {
                check_param("mu", mu, true, "must be finite")?;
                check_param("sigma", sigma, sigma > 0.0, "must be positive")
            }
            ShadowingModel::Gamma { k, omega } => {
                check_param("k", k, k > 0.0, "must be positive")?;
                check_param("omega", omega, omega > 0.0, "must be positive")
            }
            ShadowingModel::InverseGaussian { mu_i, lambda } => {
                check_param("mu_i", mu_i, mu_i > 0.0, "must be positive")?;
                check_param("lambda", lambda, lambda > 0.0, "must be positive")
            }
            ShadowingModel::InverseGamma { m, omega_i } => {
                check_param("m", m, m > 1.0, "must exceed 1 for the mean to exist")?;
                check_param("omega_i", omega_i, omega_i > 0.0, "must be positive")
            }
        }
    }

    pub fn family(&self) -> ShadowingFamily {
        match self {
            ShadowingModel::Lognormal { .. } => ShadowingFamily::Lognormal,
            ShadowingModel::Gamma { .. } => ShadowingFamily::Gamma,
            ShadowingModel::InverseGaussian { .. } => ShadowingFamily::InverseGaussian,
            ShadowingModel::InverseGamma { .. } => ShadowingFamily::InverseGamma,
        }
    }

    /// The two parameters as (name, value) pairs, in declaration order.
    pub fn params(&self) -> [(&'static str, f64); 2] {
        match *self {
            ShadowingModel::Lognormal { mu, sigma } => [("mu", mu), ("sigma", sigma)],
            ShadowingModel::Gamma { k, omega } => [("k", k), ("omega", omega)],
            ShadowingModel::InverseGaussian { mu_i, lambda } => [("mu_i", mu_i), ("lambda", lambda)],
            ShadowingModel::InverseGamma { m, omega_i } => [("m", m), ("omega_i", omega_i)],
        }
    }

    pub fn mean(&self) -> f64 {
        match *self {
            ShadowingModel::Lognormal { mu, sigma } => (mu + 0.5 * sigma * sigma).exp(),
            ShadowingModel::Gamma { omega, .. } => omega,
            ShadowingModel::InverseGaussian { mu_i, .. } => mu_i,
            ShadowingModel::InverseGamma { omega_i, .. } => omega_i,
        }
    }

    /// Cumulative distribution function at y > 0.
    pub fn cdf(&self, y: f64) -> Result<f64> {
        self.validate()?;
        if !(y > 0.0) {
            return Err(domain("shadowing cdf", format!("y = {y} must be positive")));
        }
        Ok(self.cdf_unchecked(y))
    }

    /// Density at y > 0.
    pub fn pdf(&self, y: f64) -> Result<f64> {
        self.validate()?;
        if !(y > 0.0) {
            return Err(domain("shadowing pdf", format!("y = {y} must be positive")));
        }
        if y.is_infinite() {
            return Ok(0.0);
        }
        let v = match *self {
            ShadowingModel::Lognormal { mu, sigma } => {
                let z = (y.ln() - mu) / sigma;
                (-0.5 * z * z).exp() / (y * sigma * (2.0 * PI).sqrt())
            }
            ShadowingModel::Gamma { k, omega } => {
                let rate = k / omega;
                (k * rate.ln() + (k - 1.0) * y.ln() - rate * y - ln_gamma_pos(k)).exp()
            }
            ShadowingModel::InverseGaussian { mu_i, lambda } => {
                let d = y - mu_i;
                (lambda / (2.0 * PI * y * y * y)).sqrt()
                    * (-lambda * d * d / (2.0 * mu_i * mu_i * y)).exp()
            }
            ShadowingModel::InverseGamma { m, omega_i } => {
                let b = omega_i * (m - 1.0);
                (m * b.ln() - (m + 1.0) * y.ln() - b / y - ln_gamma_pos(m)).exp()
            }
        };
        Ok(v)
    }

    /// The CDF against log-scale data, F(e^t). Total on the real line.
    pub fn log_domain_cdf(&self, t: f64) -> f64 {
        if t == f64::NEG_INFINITY {
            return 0.0;
        }
        if let ShadowingModel::Lognormal { mu, sigma } = *self {
            // avoid the exp/ln round trip
            return normal_cdf((t - mu) / sigma);
        }
        self.cdf_unchecked(t.exp())
    }

    fn cdf_unchecked(&self, y: f64) -> f64 {
        if y <= 0.0 {
            return 0.0;
        }
        if y.is_infinite() {
            return 1.0;
        }
        match *self {
            ShadowingModel::Lognormal { mu, sigma } => normal_cdf((y.ln() - mu) / sigma),
            ShadowingModel::Gamma { k, omega } => reg_lower_gamma(k, k * y / omega).unwrap_or(f64::NAN),
            ShadowingModel::InverseGaussian { mu_i, lambda } => inverse_gaussian_cdf(mu_i, lambda, y),
            ShadowingModel::InverseGamma { m, omega_i } => {
                reg_upper_gamma(m, omega_i * (m - 1.0) / y).unwrap_or(f64::NAN)
            }
        }
    }
}

/// Φ(√(λ/y)(y/μ − 1)) + e^{2λ/μ} Φ(−√(λ/y)(y/μ + 1)).
///
/// The second term is written with the scaled complementary error function:
/// e^{2λ/μ} Φ(−b) = ½ exp(2λ/μ − b²/2) erfcx(b/√2), and the exponent simplifies
/// to −(λ/2y)(y/μ − 1)², which is never positive.
fn inverse_gaussian_cdf(mu_i: f64, lambda: f64, y: f64) -> f64 {
    let r = (lambda / y).sqrt();
    let a = r * (y / mu_i - 1.0);
    let b = r * (y / mu_i + 1.0);
    let second = 0.5 * (-0.5 * a * a).exp() * erfcx(b / std::f64::consts::SQRT_2);
    (normal_cdf(a) + second).clamp(0.0, 1.0)
}

/// Draws `count` inverse-gamma variates with shape `m` and mean `omega_i` as
/// reciprocals of Gamma(m, rate Ω_i(m − 1)) draws.
pub fn sample_inverse_gamma(m: f64, omega_i: f64, count: usize, seed: u64) -> Result<Vec<f64>> {
    sample_inverse_gamma_tagged(m, omega_i, count, seed, tag::SHADOWING)
}

pub(crate) fn sample_inverse_gamma_tagged(
    m: f64,
    omega_i: f64,
    count: usize,
    seed: u64,
    stream: u64,
) -> Result<Vec<f64>> {
    ShadowingModel::inverse_gamma(m, omega_i)?;
    let gamma = Gamma::new(m, 1.0 / (omega_i * (m - 1.0)))
        .map_err(|e| domain("sample_inverse_gamma", e.to_string()))?;
    Ok(fill_chunked(count, seed, stream, |rng, out| {
        for v in out.iter_mut() {
            *v = 1.0 / gamma.sample(rng);
        }
    }))
}
