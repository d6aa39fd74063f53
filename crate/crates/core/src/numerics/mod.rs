//! Special functions, series summation and quadrature.

mod bessel;
mod erf;
mod gamma;
mod hypergeometric;
mod quadrature;
mod series;

pub use bessel::{bessel_i, bessel_i_scaled};
pub use erf::{erf, erfc, erfcx};
pub use gamma::{beta, gamma, ln_beta, ln_gamma, reg_inc_beta, reg_lower_gamma, reg_upper_gamma, rgamma};
pub use hypergeometric::{hyp1f1, hyp1f2, hyp2f1, ln_hyp1f1, ln_hyp1f2, ln_hyp2f1, LnValue};
pub use quadrature::{
    integrate_finite, integrate_periodic, integrate_semi_infinite, try_integrate_finite,
    try_integrate_periodic, try_integrate_semi_infinite, try_integrate_semi_infinite_scaled,
    Estimate, Tolerance,
};
pub use series::{sum_series, try_sum_positive_series, try_sum_series, SeriesSum};

pub(crate) use erf::normal_cdf;
pub(crate) use gamma::ln_gamma_pos;
pub(crate) use series::Neumaier;
