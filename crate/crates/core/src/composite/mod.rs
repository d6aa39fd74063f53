//! Inverse-gamma composite fading: W = W̄ · ξ · X with ξ inverse gamma of unit
//! mean and X any baseline fading power of unit mean.
//!
//! Densities and distribution functions are available through three analytic
//! routes plus a brute-force quadrature oracle, selected with [`Strategy`]:
//!
//! * [`Strategy::GmgfGeneral`] evaluates the density from φ_X^{(m)} and the
//!   distribution as an infinite series over φ_X^{(m+n)}; any real m > 1.
//! * [`Strategy::GmgfInteger`] replaces the series by the finite sum available
//!   for integer m.
//! * [`Strategy::Mixture`] expands the baseline as a gamma mixture, which turns
//!   the composite into a mixture of F distributions.

mod fdist;

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

pub use fdist::{FDistParams, FMixture, FTerm};

use crate::error::{check_param, domain, Error, Result};
use crate::fading::{twdp_gmgf_periodic, FadingModel};
use crate::numerics::{
    ln_gamma_pos, reg_upper_gamma, try_integrate_semi_infinite_scaled, try_sum_positive_series, Estimate, Neumaier,
    Tolerance,
};

/// Log densities below this are reported as exactly zero.
const LN_UNDERFLOW: f64 = -745.0;

/// Shapes closer than this to an integer are treated as integers.
const INTEGER_SLACK: f64 = 1e-9;

/// Tolerance used for the cached baseline mixture, tight enough for any caller.
const CACHE_REL_TOL: f64 = 1e-13;

/// Evaluation route for composite statistics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Strategy {
    /// Mixture when available, then the integer form, then the general form.
    #[default]
    Auto,
    GmgfGeneral,
    GmgfInteger,
    Mixture,
    /// Direct quadrature over the baseline density; slow, used as a reference.
    NumericOracle,
}

impl Strategy {
    pub const ALL: [Strategy; 5] = [
        Strategy::Auto,
        Strategy::GmgfGeneral,
        Strategy::GmgfInteger,
        Strategy::Mixture,
        Strategy::NumericOracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::Auto => "auto",
            Strategy::GmgfGeneral => "gmgf-general",
            Strategy::GmgfInteger => "gmgf-integer",
            Strategy::Mixture => "mixture",
            Strategy::NumericOracle => "numeric",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Strategy::ALL
            .into_iter()
            .find(|st| st.name() == s)
            .ok_or_else(|| Error::InvalidData(format!("unknown strategy `{s}`")))
    }
}

/// IG shadowing of shape `m` over a unit-mean baseline, scaled to mean power `w_bar`.
#[derive(Debug, Clone)]
pub struct CompositeModel {
    m: f64,
    w_bar: f64,
    baseline: FadingModel,
    mixture: OnceLock<std::result::Result<FMixture, Error>>,
}

impl PartialEq for CompositeModel {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.w_bar == other.w_bar && self.baseline == other.baseline
    }
}

impl CompositeModel {
    /// The baseline's mean power is reset to one; overall scale lives in `w_bar`.
    pub fn new(m: f64, w_bar: f64, baseline: FadingModel) -> Result<Self> {
        check_param("m", m, m > 1.0, "must exceed 1")?;
        check_param("w_bar", w_bar, w_bar > 0.0, "must be positive")?;
        let baseline = baseline.with_omega(1.0);
        baseline.validate()?;
        Ok(CompositeModel {
            m,
            w_bar,
            baseline,
            mixture: OnceLock::new(),
        })
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn w_bar(&self) -> f64 {
        self.w_bar
    }

    pub fn baseline(&self) -> &FadingModel {
        &self.baseline
    }

    /// Whether m is (numerically) an integer.
    pub fn has_integer_m(&self) -> bool {
        (self.m - self.m.round()).abs() < INTEGER_SLACK
    }

    /// The concrete strategy `strategy` stands for, or why it cannot be used.
    pub fn resolve(&self, strategy: Strategy) -> Result<Strategy> {
        match strategy {
            Strategy::Auto => Ok(if self.baseline.has_gamma_mixture() {
                Strategy::Mixture
            } else if self.has_integer_m() {
                Strategy::GmgfInteger
            } else {
                Strategy::GmgfGeneral
            }),
            Strategy::GmgfInteger if !self.has_integer_m() => Err(Error::StrategyUnavailable {
                strategy: strategy.name(),
                reason: format!("m = {} is not an integer", self.m),
            }),
            Strategy::Mixture if !self.baseline.has_gamma_mixture() => Err(Error::StrategyUnavailable {
                strategy: strategy.name(),
                reason: format!("{} has no gamma-mixture form", self.baseline.name()),
            }),
            other => Ok(other),
        }
    }

    /// Composite density as a mixture of F distributions.
    pub fn mixture_of_f(&self, tol: &Tolerance) -> Result<FMixture> {
        if !self.baseline.has_gamma_mixture() {
            return Err(Error::StrategyUnavailable {
                strategy: Strategy::Mixture.name(),
                reason: format!("{} has no gamma-mixture form", self.baseline.name()),
            });
        }
        let gm = self.baseline.gamma_mixture(tol)?;
        Ok(FMixture::from_gamma(&gm, self.m, self.w_bar))
    }

    fn cached_mixture(&self) -> Result<&FMixture> {
        self.mixture
            .get_or_init(|| self.mixture_of_f(&Tolerance::default().with_rel_tol(CACHE_REL_TOL)))
            .as_ref()
            .map_err(Clone::clone)
    }

    /// ln φ_X^{(p)}(s) along the route a strategy prescribes. The general route
    /// keeps the TWDP phase average even for integer orders.
    fn ln_phi(&self, p: f64, s: f64, strategy: Strategy, tol: &Tolerance) -> Result<f64> {
        match (strategy, self.baseline) {
            (Strategy::GmgfGeneral, FadingModel::Twdp { k, delta, omega_x }) if k > 0.0 && delta > 0.0 => {
                twdp_gmgf_periodic(k, delta, omega_x, p, s, tol)
            }
            (Strategy::NumericOracle, _) => self.baseline.gmgf_numeric(p, s, tol).map(f64::ln),
            _ => self.baseline.ln_gmgf(p, s, tol),
        }
    }

    /// Shape used in the GMGF order: rounded when the integer route applies.
    fn order(&self, strategy: Strategy) -> f64 {
        if strategy == Strategy::GmgfInteger {
            self.m.round()
        } else {
            self.m
        }
    }

    /// Density of W at u > 0.
    pub fn pdf(&self, u: f64, strategy: Strategy, tol: &Tolerance) -> Result<f64> {
        check_u("composite pdf", u)?;
        if u.is_infinite() {
            return Ok(0.0);
        }
        let strategy = self.resolve(strategy)?;
        if strategy == Strategy::Mixture {
            return self.cached_mixture()?.pdf(u);
        }
        let m = self.order(strategy);
        let s = (1.0 - m) * self.w_bar / u;
        let ln = m * (self.w_bar * (m - 1.0)).ln() - (m + 1.0) * u.ln() - ln_gamma_pos(m)
            + self.ln_phi(m, s, strategy, tol)?;
        Ok(if ln < LN_UNDERFLOW { 0.0 } else { ln.exp() })
    }

    /// Distribution function of W at u ≥ 0.
    pub fn cdf(&self, u: f64, strategy: Strategy, tol: &Tolerance) -> Result<f64> {
        self.cdf_estimate(u, strategy, tol).map(|e| e.value)
    }

    /// Distribution function with an error bound: the series tail for the
    /// general route, the dropped weight mass for mixtures, the quadrature
    /// estimate for the oracle, and rounding only for the finite sum.
    pub fn cdf_estimate(&self, u: f64, strategy: Strategy, tol: &Tolerance) -> Result<Estimate> {
        if !(u >= 0.0) {
            return Err(domain("composite cdf", format!("u = {u} must be nonnegative")));
        }
        if u == 0.0 || u.is_infinite() {
            return Ok(Estimate {
                value: if u == 0.0 { 0.0 } else { 1.0 },
                error: 0.0,
                evaluations: 0,
            });
        }
        let strategy = self.resolve(strategy)?;
        let m = self.order(strategy);
        let a = (m - 1.0) * self.w_bar / u;
        let est = match strategy {
            Strategy::Mixture => {
                let mix = self.cached_mixture()?;
                Estimate {
                    value: mix.cdf(u)?,
                    error: mix.truncation_error_bound,
                    evaluations: mix.len(),
                }
            }
            Strategy::GmgfInteger => {
                let n_max = m as usize;
                let mut acc = Neumaier::default();
                for n in 0..n_max {
                    let nf = n as f64;
                    let ln_pow = if n == 0 { 0.0 } else { nf * a.ln() };
                    let ln = ln_pow - ln_gamma_pos(nf + 1.0) + self.ln_phi(nf, -a, strategy, tol)?;
                    acc.add(ln.exp());
                }
                Estimate {
                    value: acc.value(),
                    error: f64::EPSILON * n_max as f64,
                    evaluations: n_max,
                }
            }
            Strategy::GmgfGeneral => {
                // the terms decay roughly like the baseline tail at spacing 1/a,
                // so the budget grows with a
                let budget = tol.max_terms.max((100.0 * (a + 1.0)) as usize + m as usize);
                let series_tol = tol.with_max_terms(budget);
                let sum = try_sum_positive_series(
                    |n| {
                        let p = m + n as f64;
                        let ln = p * a.ln() - ln_gamma_pos(p + 1.0) + self.ln_phi(p, -a, strategy, tol)?;
                        Ok(ln.exp())
                    },
                    &series_tol,
                )?;
                Estimate {
                    value: 1.0 - sum.value,
                    error: sum.tail_bound,
                    evaluations: sum.terms,
                }
            }
            Strategy::NumericOracle => {
                // F_W(u) = E[Q(m, a X)]
                let inner = tol.with_max_subdivisions(tol.max_subdivisions.max(2000));
                let pdf_tol = tol.with_rel_tol(tol.rel_tol.min(1e-12));
                let scale = ((m + 1.0) / a).min(1.0);
                try_integrate_semi_infinite_scaled(
                    |y| {
                        let f = self.baseline.pdf(y, &pdf_tol)?;
                        Ok(if f == 0.0 { 0.0 } else { reg_upper_gamma(m, a * y)? * f })
                    },
                    scale,
                    &inner,
                )?
            }
            Strategy::Auto => unreachable!("resolved above"),
        };
        Ok(Estimate {
            value: est.value.clamp(0.0, 1.0),
            ..est
        })
    }

    /// Density of the amplitude R = √W.
    pub fn amplitude_pdf(&self, r: f64, strategy: Strategy, tol: &Tolerance) -> Result<f64> {
        check_u("amplitude pdf", r)?;
        if r.is_infinite() {
            return Ok(0.0);
        }
        Ok(2.0 * r * self.pdf(r * r, strategy, tol)?)
    }

    /// Distribution function of the amplitude R = √W.
    pub fn amplitude_cdf(&self, r: f64, strategy: Strategy, tol: &Tolerance) -> Result<f64> {
        if !(r >= 0.0) {
            return Err(domain("amplitude cdf", format!("r = {r} must be nonnegative")));
        }
        self.cdf(r * r, strategy, tol)
    }

    /// P(γ < γ_th) for mean SNR γ̄.
    pub fn outage(&self, gamma_th: f64, gamma_bar: f64, strategy: Strategy, tol: &Tolerance) -> Result<f64> {
        check_snr(gamma_th, gamma_bar)?;
        self.cdf(self.w_bar * gamma_th / gamma_bar, strategy, tol)
    }

    /// High-SNR outage from the baseline's small-argument power law.
    pub fn outage_asymptotic(&self, gamma_th: f64, gamma_bar: f64) -> Result<f64> {
        check_snr(gamma_th, gamma_bar)?;
        let tp = self.baseline.tail_params()?;
        let (m, b) = (self.m, tp.beta);
        let ln = ln_gamma_pos(b + m + 1.0) - ln_gamma_pos(m) - (b + 1.0) * (m - 1.0).ln() + tp.alpha.ln()
            - (b + 1.0).ln()
            + (b + 1.0) * (gamma_th / gamma_bar).ln();
        Ok(ln.exp())
    }
}

fn check_u(what: &'static str, u: f64) -> Result<()> {
    if u > 0.0 {
        Ok(())
    } else {
        Err(domain(what, format!("argument {u} must be positive")))
    }
}

fn check_snr(gamma_th: f64, gamma_bar: f64) -> Result<()> {
    check_param("gamma_th", gamma_th, gamma_th > 0.0, "must be positive")?;
    check_param("gamma_bar", gamma_bar, gamma_bar > 0.0, "must be positive")
}
