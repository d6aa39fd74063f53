//! Shared fixtures for the benchmarks.

use igfading::{CompositeModel, FadingModel};

/// Baselines covering every composite evaluation route.
pub fn baselines() -> Vec<(&'static str, FadingModel)> {
    vec![
        ("rayleigh", FadingModel::Rayleigh { omega_x: 1.0 }),
        ("nakagami", FadingModel::Nakagami { m: 2.5, omega_x: 1.0 }),
        ("hoyt", FadingModel::Hoyt { q: 0.4, omega_x: 1.0 }),
        ("kappa_mu_shadowed", FadingModel::KappaMuShadowed { kappa: 2.0, mu: 1.5, m: 3.0, omega_x: 1.0 }),
        ("twdp", FadingModel::Twdp { k: 4.0, delta: 0.9, omega_x: 1.0 }),
    ]
}

/// Inverse-gamma shadowed composite with shape 3 and unit mean power.
pub fn composite(baseline: FadingModel) -> CompositeModel {
    CompositeModel::new(3.0, 1.0, baseline).expect("valid fixture")
}
