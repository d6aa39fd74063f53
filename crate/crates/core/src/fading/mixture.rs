//! Gamma-mixture representations of fading densities.

use std::f64::consts::PI;

use super::{gamma_pdf, unsupported, FadingModel};
use crate::error::Result;
use crate::numerics::{bessel_i, integrate_periodic, ln_gamma_pos, reg_lower_gamma, Neumaier, Tolerance};

const MIN_TERMS: usize = 10;
const MAX_TERMS: usize = 5000;

/// One gamma component: weight, shape and mean.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaTerm {
    pub weight: f64,
    pub shape: f64,
    pub mean: f64,
}

/// prefactor · Σ weight_i · Gamma(shape_i, mean_i).
#[derive(Debug, Clone, PartialEq)]
pub struct GammaMixture {
    pub terms: Vec<GammaTerm>,
    pub prefactor: f64,
    /// Probability mass dropped by truncation.
    pub truncation_error_bound: f64,
}

impl GammaMixture {
    pub fn single(shape: f64, mean: f64) -> Self {
        GammaMixture {
            terms: vec![GammaTerm {
                weight: 1.0,
                shape,
                mean,
            }],
            prefactor: 1.0,
            truncation_error_bound: 0.0,
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// prefactor · Σ weights.
    pub fn total_mass(&self) -> f64 {
        let mut acc = Neumaier::default();
        for t in &self.terms {
            acc.add(t.weight);
        }
        self.prefactor * acc.value()
    }

    /// Keeps the first `n` terms and recomputes the dropped mass.
    pub fn truncated(&self, n: usize) -> Self {
        let terms: Vec<_> = self.terms.iter().take(n).copied().collect();
        let mut out = GammaMixture {
            terms,
            prefactor: self.prefactor,
            truncation_error_bound: 0.0,
        };
        out.truncation_error_bound = (1.0 - out.total_mass()).max(0.0);
        out
    }

    pub fn pdf(&self, x: f64) -> f64 {
        if !(x > 0.0) || x.is_infinite() {
            return 0.0;
        }
        let mut acc = Neumaier::default();
        for t in &self.terms {
            acc.add(t.weight * gamma_pdf(t.shape, t.mean, x));
        }
        self.prefactor * acc.value()
    }

    pub fn cdf(&self, x: f64) -> f64 {
        if !(x > 0.0) {
            return 0.0;
        }
        let mut acc = Neumaier::default();
        for t in &self.terms {
            acc.add(t.weight * reg_lower_gamma(t.shape, t.shape * x / t.mean).unwrap_or(f64::NAN));
        }
        self.prefactor * acc.value()
    }
}

/// Accumulates weights from `next_weight(i)` until the dropped mass is small.
fn build<W, S>(prefactor: f64, tol: &Tolerance, mut next_weight: W, mut component: S) -> GammaMixture
where
    W: FnMut(usize) -> f64,
    S: FnMut(usize) -> (f64, f64),
{
    let target = tol.rel_tol * 1e-2;
    let mut terms = Vec::new();
    let mut mass = Neumaier::default();
    let mut peak = 0.0f64;
    for i in 0..MAX_TERMS {
        let w = next_weight(i);
        let (shape, mean) = component(i);
        terms.push(GammaTerm {
            weight: w,
            shape,
            mean,
        });
        mass.add(w);
        let contribution = prefactor * w;
        peak = peak.max(contribution.abs());
        let residual = 1.0 - prefactor * mass.value();
        if terms.len() >= MIN_TERMS {
            // residual mass is the natural bound; once it is lost in rounding,
            // negligible terms past the peak end the expansion instead
            let negligible = contribution.abs() < peak && contribution.abs() < 1e-3 * target;
            if residual.abs() < target || (negligible && residual.abs() < 1e3 * target) {
                break;
            }
        }
    }
    let residual = (1.0 - prefactor * mass.value()).max(0.0);
    GammaMixture {
        terms,
        prefactor,
        truncation_error_bound: residual,
    }
}

pub(super) fn gamma_mixture(model: &FadingModel, tol: &Tolerance) -> Result<GammaMixture> {
    match *model {
        FadingModel::Rayleigh { omega_x } => Ok(GammaMixture::single(1.0, omega_x)),
        FadingModel::Nakagami { m, omega_x } => Ok(GammaMixture::single(m, omega_x)),
        FadingModel::Rician { k, omega_x } => Ok(kappa_mu(k, 1.0, omega_x, tol)),
        FadingModel::KappaMu { kappa, mu, omega_x } => Ok(kappa_mu(kappa, mu, omega_x, tol)),
        FadingModel::KappaMuShadowed { kappa, mu, m, omega_x } => {
            if kappa == 0.0 {
                return Ok(GammaMixture::single(mu, omega_x));
            }
            // negative-binomial weights Γ(m+i)/(Γ(m) i!) r^i (m/(μκ+m))^m
            let r = mu * kappa / (mu * kappa + m);
            let mut w = (m * (m / (mu * kappa + m)).ln()).exp();
            Ok(build(
                1.0,
                tol,
                |i| {
                    if i > 0 {
                        w *= (m + i as f64 - 1.0) / i as f64 * r;
                    }
                    w
                },
                |i| component(mu, kappa, omega_x, i),
            ))
        }
        FadingModel::Twdp { k, delta, omega_x } => Ok(twdp(k, delta, omega_x, tol)),
        FadingModel::Hoyt { .. } | FadingModel::EtaMu { .. } => Err(unsupported(model, "gamma mixture")),
    }
}

fn component(mu: f64, kappa: f64, omega: f64, i: usize) -> (f64, f64) {
    let shape = mu + i as f64;
    (shape, omega * shape / (mu * (1.0 + kappa)))
}

/// Poisson(μκ) mixture; prefactor e^{−μκ}.
fn kappa_mu(kappa: f64, mu: f64, omega: f64, tol: &Tolerance) -> GammaMixture {
    if kappa == 0.0 {
        return GammaMixture::single(mu, omega);
    }
    let lambda = mu * kappa;
    build(
        (-lambda).exp(),
        tol,
        |i| (i as f64 * lambda.ln() - ln_gamma_pos(i as f64 + 1.0)).exp(),
        |i| component(mu, kappa, omega, i),
    )
}

/// TWDP mixture with prefactor e^{−K} and components Gamma(j+1, (j+1)Ω/(K+1)).
fn twdp(k: f64, delta: f64, omega: f64, tol: &Tolerance) -> GammaMixture {
    let shape_mean = |j: usize| {
        let shape = j as f64 + 1.0;
        (shape, shape * omega / (k + 1.0))
    };
    if k == 0.0 {
        return GammaMixture::single(1.0, omega);
    }
    if k * delta <= TWDP_BESSEL_SUM_LIMIT {
        let mut weights = TwdpBesselWeights::new(k, delta);
        build((-k).exp(), tol, |j| weights.weight(j), shape_mean)
    } else {
        build((-k).exp(), tol, |j| twdp_weight_periodic(k, delta, j), shape_mean)
    }
}

/// Above this K·Δ the alternating Bessel double sum loses more than about
/// e^{2KΔ} in relative precision, and the phase-integral form is used instead.
pub(crate) const TWDP_BESSEL_SUM_LIMIT: f64 = 5.0;

/// w_j = K^j/j! Σ_i C(j,i) (Δ/2)^i Σ_l C(i,l) I_{2l−i}(−KΔ).
pub(crate) struct TwdpBesselWeights {
    k: f64,
    delta: f64,
    bessel: Vec<f64>,
    inner: Vec<f64>,
}

impl TwdpBesselWeights {
    pub(crate) fn new(k: f64, delta: f64) -> Self {
        TwdpBesselWeights {
            k,
            delta,
            bessel: Vec::new(),
            inner: Vec::new(),
        }
    }

    /// I_n(−KΔ) for integer n ≥ 0, cached. Negative orders reflect onto these.
    fn bessel(&mut self, n: usize) -> f64 {
        while self.bessel.len() <= n {
            let order = self.bessel.len() as f64;
            let v = bessel_i(order, -self.k * self.delta).unwrap_or(f64::NAN);
            self.bessel.push(v);
        }
        self.bessel[n]
    }

    /// Σ_l C(i,l) I_{2l−i}(−KΔ), cached by i.
    fn inner(&mut self, i: usize) -> f64 {
        while self.inner.len() <= i {
            let n = self.inner.len();
            let mut acc = Neumaier::default();
            for l in 0..=n {
                let order = 2 * l as i64 - n as i64;
                let b = self.bessel(order.unsigned_abs() as usize);
                acc.add((ln_binomial(n, l)).exp() * b);
            }
            self.inner.push(acc.value());
        }
        self.inner[i]
    }

    pub(crate) fn weight(&mut self, j: usize) -> f64 {
        let mut acc = Neumaier::default();
        let half = 0.5 * self.delta;
        for i in 0..=j {
            let c = if half == 0.0 {
                if i == 0 {
                    1.0
                } else {
                    0.0
                }
            } else {
                (ln_binomial(j, i) + i as f64 * half.ln()).exp()
            };
            if c != 0.0 {
                acc.add(c * self.inner(i));
            }
        }
        let lead = (j as f64 * self.k.ln() - ln_gamma_pos(j as f64 + 1.0)).exp();
        lead * acc.value()
    }
}

/// w_j = K^j/j! · (1/2π) ∫ e^{−KΔ cos α} (1 + Δ cos α)^j dα.
pub(crate) fn twdp_weight_periodic(k: f64, delta: f64, j: usize) -> f64 {
    let jf = j as f64;
    let lead = jf * k.ln() - ln_gamma_pos(jf + 1.0);
    // factor out the integrand's largest possible value to keep it O(1)
    let top = k * delta + jf * (1.0 + delta).ln();
    let tol = Tolerance::default().with_rel_tol(1e-13);
    let est = integrate_periodic(
        |a| {
            let c = a.cos();
            let base = 1.0 + delta * c;
            if base <= 0.0 {
                return 0.0;
            }
            (-k * delta * c + jf * base.ln() - top).exp()
        },
        0.0,
        2.0 * PI,
        &tol,
    );
    match est {
        Ok(e) => (lead + top).exp() * e.value / (2.0 * PI),
        Err(_) => f64::NAN,
    }
}

fn ln_binomial(n: usize, k: usize) -> f64 {
    ln_gamma_pos(n as f64 + 1.0) - ln_gamma_pos(k as f64 + 1.0) - ln_gamma_pos((n - k) as f64 + 1.0)
}
