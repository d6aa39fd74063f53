//! Fisher-Snedecor F distribution and mixtures of it.

use crate::error::{check_param, Result};
use crate::fading::GammaMixture;
use crate::numerics::{ln_beta, reg_inc_beta, Neumaier};

/// F distribution with shadowing shape `m`, fading shape `k` and mean `omega`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FDistParams {
    pub m: f64,
    pub k: f64,
    pub omega: f64,
}

impl FDistParams {
    pub fn new(m: f64, k: f64, omega: f64) -> Result<Self> {
        let p = FDistParams { m, k, omega };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        check_param("m", self.m, self.m > 1.0, "must exceed 1")?;
        check_param("k", self.k, self.k > 0.0, "must be positive")?;
        check_param("omega", self.omega, self.omega > 0.0, "must be positive")
    }

    /// k t / ((m − 1) Ω).
    fn ratio(&self, t: f64) -> f64 {
        self.k * t / ((self.m - 1.0) * self.omega)
    }

    /// Natural log of the density; −∞ at t = 0 when k > 1.
    pub fn ln_pdf(&self, t: f64) -> f64 {
        let (m, k) = (self.m, self.k);
        let scale = (m - 1.0) * self.omega;
        k * k.ln() - ln_beta(m, k).unwrap_or(f64::NAN) + (k - 1.0) * t.ln() - k * scale.ln()
            - (m + k) * self.ratio(t).ln_1p()
    }

    pub fn pdf(&self, t: f64) -> Result<f64> {
        self.validate()?;
        if !(t >= 0.0) {
            return Err(crate::error::domain("f_pdf", format!("t = {t} must be nonnegative")));
        }
        if t.is_infinite() {
            return Ok(0.0);
        }
        if t == 0.0 {
            return Ok(match self.k {
                k if k > 1.0 => 0.0,
                k if k == 1.0 => self.m / ((self.m - 1.0) * self.omega),
                _ => f64::INFINITY,
            });
        }
        Ok(self.ln_pdf(t).exp())
    }

    /// I_w(k, m) with w = kt/(kt + (m − 1)Ω).
    pub fn cdf(&self, t: f64) -> Result<f64> {
        self.validate()?;
        if !(t >= 0.0) {
            return Err(crate::error::domain("f_cdf", format!("t = {t} must be nonnegative")));
        }
        if t == 0.0 {
            return Ok(0.0);
        }
        if t.is_infinite() {
            return Ok(1.0);
        }
        let x = self.ratio(t);
        let w = x / (1.0 + x);
        if w > 0.5 {
            // complement through the symmetric argument 1 − w = 1/(1 + x), formed without cancellation
            Ok(1.0 - reg_inc_beta(self.m, self.k, 1.0 / (1.0 + x))?)
        } else {
            reg_inc_beta(self.k, self.m, w)
        }
    }

    /// E[W] for m > 1.
    pub fn mean(&self) -> f64 {
        self.omega
    }
}

/// One weighted F component.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FTerm {
    pub weight: f64,
    pub params: FDistParams,
}

/// prefactor · Σ weight_i · F(m, k_i, Ω_i).
#[derive(Debug, Clone, PartialEq)]
pub struct FMixture {
    pub terms: Vec<FTerm>,
    pub prefactor: f64,
    pub truncation_error_bound: f64,
}

impl FMixture {
    /// Each gamma term (w, k, Ω) becomes (w, F(m, k, Ω·W̄)).
    pub fn from_gamma(mixture: &GammaMixture, m: f64, w_bar: f64) -> Self {
        FMixture {
            terms: mixture
                .terms
                .iter()
                .map(|t| FTerm {
                    weight: t.weight,
                    params: FDistParams {
                        m,
                        k: t.shape,
                        omega: t.mean * w_bar,
                    },
                })
                .collect(),
            prefactor: mixture.prefactor,
            truncation_error_bound: mixture.truncation_error_bound,
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Keeps the first `n` terms; the bound becomes the dropped weight mass.
    pub fn truncated(&self, n: usize) -> Self {
        let terms: Vec<_> = self.terms.iter().take(n).copied().collect();
        let mut acc = Neumaier::default();
        for t in &terms {
            acc.add(t.weight);
        }
        FMixture {
            terms,
            prefactor: self.prefactor,
            truncation_error_bound: (1.0 - self.prefactor * acc.value()).max(0.0),
        }
    }

    pub fn pdf(&self, t: f64) -> Result<f64> {
        let mut acc = Neumaier::default();
        for term in &self.terms {
            acc.add(term.weight * term.params.pdf(t)?);
        }
        Ok(self.prefactor * acc.value())
    }

    pub fn cdf(&self, t: f64) -> Result<f64> {
        let mut acc = Neumaier::default();
        for term in &self.terms {
            acc.add(term.weight * term.params.cdf(t)?);
        }
        Ok(self.prefactor * acc.value())
    }
}
