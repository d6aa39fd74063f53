//! Physical-model samplers for the fading power.

use std::f64::consts::PI;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma, Poisson, StandardNormal};

use super::{twdp_components, FadingModel};
use crate::error::Result;
use crate::rng::fill_chunked;

pub(super) fn sample(model: &FadingModel, count: usize, seed: u64, stream: u64) -> Result<Vec<f64>> {
    let model = *model;
    Ok(fill_chunked(count, seed, stream, move |rng, out| {
        for v in out.iter_mut() {
            *v = draw(&model, rng);
        }
    }))
}

fn gamma(rng: &mut ChaCha8Rng, shape: f64, scale: f64) -> f64 {
    Gamma::new(shape, scale).expect("validated gamma parameters").sample(rng)
}

fn poisson(rng: &mut ChaCha8Rng, lambda: f64) -> f64 {
    if lambda <= 0.0 {
        return 0.0;
    }
    Poisson::new(lambda).expect("validated poisson rate").sample(rng)
}

fn normal(rng: &mut ChaCha8Rng) -> f64 {
    rng.sample(StandardNormal)
}

/// |los + Z|² with Z circular Gaussian of per-dimension variance `var`.
fn rician_power(rng: &mut ChaCha8Rng, los_re: f64, los_im: f64, var: f64) -> f64 {
    let sd = var.sqrt();
    let re = los_re + sd * normal(rng);
    let im = los_im + sd * normal(rng);
    re * re + im * im
}

/// η-μ format 1: in-phase and quadrature powers of 2μ clusters.
fn eta_mu(rng: &mut ChaCha8Rng, eta: f64, mu: f64, omega: f64) -> f64 {
    let sy2 = omega / (2.0 * mu * (1.0 + eta));
    let sx2 = eta * sy2;
    gamma(rng, mu, 2.0 * sx2) + gamma(rng, mu, 2.0 * sy2)
}

fn draw(model: &FadingModel, rng: &mut ChaCha8Rng) -> f64 {
    match *model {
        FadingModel::Rayleigh { omega_x } => rician_power(rng, 0.0, 0.0, omega_x / 2.0),
        FadingModel::Rician { k, omega_x } => {
            let los = (k * omega_x / (1.0 + k)).sqrt();
            rician_power(rng, los, 0.0, omega_x / (2.0 * (1.0 + k)))
        }
        FadingModel::Nakagami { m, omega_x } => gamma(rng, m, omega_x / m),
        FadingModel::Hoyt { q, omega_x } => eta_mu(rng, q * q, 0.5, omega_x),
        FadingModel::EtaMu { eta, mu, omega_x } => eta_mu(rng, eta, mu, omega_x),
        FadingModel::KappaMu { kappa, mu, omega_x } => {
            let i = poisson(rng, mu * kappa);
            gamma(rng, mu + i, omega_x / (mu * (1.0 + kappa)))
        }
        FadingModel::KappaMuShadowed { kappa, mu, m, omega_x } => {
            let lambda = if kappa > 0.0 { gamma(rng, m, mu * kappa / m) } else { 0.0 };
            let i = poisson(rng, lambda);
            gamma(rng, mu + i, omega_x / (mu * (1.0 + kappa)))
        }
        FadingModel::Twdp { k, delta, omega_x } => {
            let (v1, v2, sigma2) = twdp_components(k, delta, omega_x);
            let p1 = rng.random::<f64>() * 2.0 * PI;
            let p2 = rng.random::<f64>() * 2.0 * PI;
            let re = v1 * p1.cos() + v2 * p2.cos();
            let im = v1 * p1.sin() + v2 * p2.sin();
            rician_power(rng, re, im, sigma2)
        }
    }
}

#[cfg(test)]
mod tests {
    use crate::fading::FadingModel;
    use crate::numerics::Tolerance;

    fn mean_and_se(xs: &[f64]) -> (f64, f64) {
        let n = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / n;
        let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
        (mean, (var / n).sqrt())
    }

    #[test]
    fn sample_means_match_omega() {
        for model in super::super::tests::zoo() {
            let xs = model.sample(200_000, 17).unwrap();
            let (mean, se) = mean_and_se(&xs);
            assert!((mean - model.omega_x()).abs() < 4.0 * se, "{model:?}: {mean} ± {se}");
        }
    }

    #[test]
    fn samples_follow_the_cdf() {
        let tol = Tolerance::default();
        for model in super::super::tests::zoo() {
            let mut xs = model.sample(50_000, 3).unwrap();
            xs.sort_by(f64::total_cmp);
            let n = xs.len() as f64;
            let mut d = 0.0f64;
            for (i, &x) in xs.iter().enumerate().step_by(97) {
                let f = model.cdf(x, &tol).unwrap();
                d = d.max((f - i as f64 / n).abs()).max((f - (i + 1) as f64 / n).abs());
            }
            // 99.9% two-sided DKW radius at n = 5·10⁴ is about 0.0087
            assert!(d < 0.0087, "{model:?}: {d}");
        }
    }

    #[test]
    fn deterministic_per_seed() {
        let m = FadingModel::Twdp { k: 4.0, delta: 0.9, omega_x: 1.0 };
        assert_eq!(m.sample(1000, 5).unwrap(), m.sample(1000, 5).unwrap());
        assert_ne!(m.sample(1000, 5).unwrap(), m.sample(1000, 6).unwrap());
    }
}
