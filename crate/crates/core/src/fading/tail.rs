//! Small-argument power law of the fading CDF.

use super::FadingModel;
use crate::error::Result;
use crate::numerics::{bessel_i, ln_gamma_pos, Tolerance};

/// F_X(x) ≈ α/(β+1) · (x/Ω_X)^{β+1} as x → 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailParams {
    pub alpha: f64,
    pub beta: f64,
}

const FIT_POINTS: usize = 21;
const FIT_LO: f64 = 1e-6;
const FIT_HI: f64 = 1e-4;

pub(super) fn tail_params(model: &FadingModel) -> Result<TailParams> {
    match *model {
        FadingModel::Rayleigh { .. } => Ok(TailParams { alpha: 1.0, beta: 0.0 }),
        FadingModel::Nakagami { m, .. } => Ok(TailParams {
            alpha: (m * m.ln() - ln_gamma_pos(m)).exp(),
            beta: m - 1.0,
        }),
        FadingModel::Twdp { k, delta, .. } => Ok(TailParams {
            alpha: (1.0 + k) * (-k).exp() * bessel_i(0.0, k * delta)?,
            beta: 0.0,
        }),
        _ => fitted(model),
    }
}

/// Least-squares line through (ln(x/Ω), ln F) on a log grid near the origin:
/// the slope is β + 1 and the intercept ln(α/(β+1)).
fn fitted(model: &FadingModel) -> Result<TailParams> {
    let omega = model.omega_x();
    let tol = Tolerance::default().with_rel_tol(1e-12).with_abs_tol(0.0);
    let mut pts = Vec::with_capacity(FIT_POINTS);
    for i in 0..FIT_POINTS {
        let t = FIT_LO * (FIT_HI / FIT_LO).powf(i as f64 / (FIT_POINTS - 1) as f64);
        let f = model.cdf(t * omega, &tol)?;
        pts.push((t.ln(), f.ln()));
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    Ok(TailParams {
        alpha: slope * intercept.exp(),
        beta: (slope - 1.0).max(0.0),
    })
}
