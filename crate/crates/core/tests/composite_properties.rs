use igfading::{sample_composite, sup_distance, CompositeModel, EmpiricalCdf, FadingModel, Strategy as Route, Tolerance};
use proptest::prelude::*;

fn tol() -> Tolerance {
    Tolerance::default()
}

fn baseline() -> impl Strategy<Value = FadingModel> {
    prop_oneof![
        Just(FadingModel::Rayleigh { omega_x: 1.0 }),
        (0.0f64..10.0).prop_map(|k| FadingModel::Rician { k, omega_x: 1.0 }),
        (0.5f64..5.0).prop_map(|m| FadingModel::Nakagami { m, omega_x: 1.0 }),
        (0.2f64..=1.0).prop_map(|q| FadingModel::Hoyt { q, omega_x: 1.0 }),
        (0.0f64..6.0, 0.5f64..3.0).prop_map(|(kappa, mu)| FadingModel::KappaMu { kappa, mu, omega_x: 1.0 }),
        (0.0f64..5.0, 0.5f64..3.0, 1.0f64..8.0)
            .prop_map(|(kappa, mu, m)| FadingModel::KappaMuShadowed { kappa, mu, m, omega_x: 1.0 }),
        (0.0f64..10.0, 0.0f64..=1.0).prop_map(|(k, delta)| FadingModel::Twdp { k, delta, omega_x: 1.0 }),
    ]
}

/// Baselines whose distribution function is linear near the origin.
fn linear_tail_baseline() -> impl Strategy<Value = FadingModel> {
    prop_oneof![
        Just(FadingModel::Rayleigh { omega_x: 1.0 }),
        (0.0f64..6.0).prop_map(|k| FadingModel::Rician { k, omega_x: 1.0 }),
        (0.2f64..=1.0).prop_map(|q| FadingModel::Hoyt { q, omega_x: 1.0 }),
        (0.0f64..5.0).prop_map(|kappa| FadingModel::KappaMu { kappa, mu: 1.0, omega_x: 1.0 }),
        (0.0f64..4.0, 1.0f64..8.0).prop_map(|(kappa, m)| FadingModel::KappaMuShadowed {
            kappa,
            mu: 1.0,
            m,
            omega_x: 1.0
        }),
        (0.0f64..8.0, 0.0f64..=1.0).prop_map(|(k, delta)| FadingModel::Twdp { k, delta, omega_x: 1.0 }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn cdf_derivative_is_the_pdf(base in baseline(), m in 1.5f64..8.0, u in 0.05f64..10.0) {
        let c = CompositeModel::new(m, 1.0, base).unwrap();
        let h = 1e-4 * u;
        let fd = (c.cdf(u + h, Route::Auto, &tol()).unwrap() - c.cdf(u - h, Route::Auto, &tol()).unwrap()) / (2.0 * h);
        let pdf = c.pdf(u, Route::Auto, &tol()).unwrap();
        prop_assert!((fd - pdf).abs() < 1e-5, "{base:?} m={m} u={u}: {fd} vs {pdf}");
    }

    #[test]
    fn amplitude_statistics_follow_from_power(base in baseline(), m in 1.5f64..8.0, r in 0.1f64..3.0) {
        let c = CompositeModel::new(m, 1.0, base).unwrap();
        let t = tol();
        prop_assert_eq!(c.amplitude_cdf(r, Route::Auto, &t).unwrap(), c.cdf(r * r, Route::Auto, &t).unwrap());
        let a = c.amplitude_pdf(r, Route::Auto, &t).unwrap();
        let b = 2.0 * r * c.pdf(r * r, Route::Auto, &t).unwrap();
        prop_assert!((a - b).abs() <= 1e-14 * b.abs());
    }

    #[test]
    fn outage_is_monotone_in_the_threshold(base in baseline(), m in 1.5f64..8.0) {
        let c = CompositeModel::new(m, 1.0, base).unwrap();
        let mut prev = 0.0;
        for db in (-40..=20).step_by(5) {
            let p = c.outage(10f64.powf(db as f64 / 10.0), 1.0, Route::Auto, &tol()).unwrap();
            prop_assert!(p >= prev && p <= 1.0, "{base:?} m={m} at {db} dB: {p} after {prev}");
            prev = p;
        }
    }

    #[test]
    fn outage_meets_its_asymptote(base in linear_tail_baseline(), m in 1.5f64..8.0) {
        let c = CompositeModel::new(m, 1.0, base).unwrap();
        let ratio = c.outage(1e-4, 1.0, Route::Auto, &tol()).unwrap() / c.outage_asymptotic(1e-4, 1.0).unwrap();
        prop_assert!((ratio - 1.0).abs() < 0.02, "{base:?} m={m}: ratio {ratio}");
    }

    #[test]
    fn mixture_truncation_bound_covers_the_dropped_terms(base in baseline().prop_filter("mixture", |b| b.has_gamma_mixture()), m in 1.5f64..8.0, u in 0.05f64..10.0) {
        let c = CompositeModel::new(m, 1.0, base).unwrap();
        let full = c.mixture_of_f(&tol()).unwrap();
        let keep = (full.len() / 2).max(1);
        let short = full.truncated(keep);
        let dropped = full.cdf(u).unwrap() - short.cdf(u).unwrap();
        prop_assert!(dropped >= -1e-15 && dropped <= short.truncation_error_bound + 1e-15,
            "dropped {dropped:e}, bound {:e}", short.truncation_error_bound);
    }
}

#[test]
fn weak_shadowing_recovers_the_baseline() {
    let bases = [
        FadingModel::Rayleigh { omega_x: 1.0 },
        FadingModel::Nakagami { m: 3.0, omega_x: 1.0 },
        FadingModel::Hoyt { q: 0.5, omega_x: 1.0 },
        FadingModel::KappaMuShadowed { kappa: 3.0, mu: 2.0, m: 4.0, omega_x: 1.0 },
        FadingModel::Twdp { k: 7.0, delta: 0.7, omega_x: 1.0 },
    ];
    for base in bases {
        let c = CompositeModel::new(1e3, 1.0, base).unwrap();
        for i in 1..=80 {
            let u = i as f64 * 0.05;
            let a = c.pdf(u, Route::Auto, &tol()).unwrap();
            let b = base.pdf(u, &tol()).unwrap();
            assert!((a - b).abs() < 1e-2, "{base:?} u={u}: {a} vs {b}");
        }
    }
}

#[test]
fn weak_shadowing_samples_follow_the_baseline() {
    let base = FadingModel::Twdp { k: 7.0, delta: 0.7, omega_x: 1.0 };
    let c = CompositeModel::new(1e3, 1.0, base).unwrap();
    let n = 200_000;
    let e = EmpiricalCdf::from_samples(&sample_composite(&c, n, 21).unwrap()).unwrap();
    let d = sup_distance(&e, |u| base.cdf(u, &tol()).unwrap());
    // DKW at 1 − 1e-4 plus the O(1/m) shadowing offset
    let radius = ((2.0f64 / 1e-4).ln() / (2.0 * n as f64)).sqrt();
    assert!(d < radius + 1e-2, "{d} vs {radius}");
}

#[test]
fn every_route_matches_the_simulation() {
    let c = CompositeModel::new(4.0, 2.0, FadingModel::Twdp { k: 4.0, delta: 0.5, omega_x: 1.0 }).unwrap();
    let n = 100_000;
    let e = EmpiricalCdf::from_samples(&sample_composite(&c, n, 3).unwrap()).unwrap();
    let radius = ((2.0f64 / 1e-4).ln() / (2.0 * n as f64)).sqrt();
    for s in [Route::GmgfGeneral, Route::GmgfInteger, Route::Mixture] {
        let d = sup_distance(&e, |u| c.cdf(u, s, &tol()).unwrap());
        assert!(d < radius, "{s}: {d} vs {radius}");
    }
}
