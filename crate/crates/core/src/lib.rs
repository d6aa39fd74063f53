//! Inverse-gamma composite fading models.
//!
//! The received power is modelled as W = W̄ · ξ · X, where ξ is inverse-gamma
//! shadowing of unit mean and X is a unit-mean fast-fading power drawn from one
//! of the classical or generalized baseline models. The crate provides the
//! special functions these models need, baseline fading statistics and their
//! generalized moment generating functions, composite densities, distribution
//! functions and outage probabilities by several independent routes, Monte
//! Carlo sampling, and Cramér-von Mises fitting of shadowing families.
//!
//! ```
//! use igfading::{CompositeModel, FadingModel, Strategy, Tolerance};
//!
//! let model = CompositeModel::new(2.0, 1.0, FadingModel::Rayleigh { omega_x: 1.0 }).unwrap();
//! let f = model.cdf(1.0, Strategy::Auto, &Tolerance::default()).unwrap();
//! assert!((f - 0.75).abs() < 1e-12);
//! ```

pub mod composite;
pub mod error;
pub mod fading;
pub mod fitting;
pub mod montecarlo;
pub mod numerics;
mod rng;
pub mod shadowing;

pub use composite::{CompositeModel, FDistParams, FMixture, FTerm, Strategy};
pub use error::{Error, Result};
pub use fading::{FadingModel, GammaMixture, GammaTerm, TailParams};
pub use fitting::{compare_families, cvm_statistic, db_to_natural_log, fit, DbDirection, FitOptions, FitResult, Ranking};
pub use montecarlo::{compare, sample_composite, sup_distance, Comparison, EmpiricalCdf};
pub use numerics::{Estimate, Tolerance};
pub use shadowing::{sample_inverse_gamma, ShadowingFamily, ShadowingModel};
