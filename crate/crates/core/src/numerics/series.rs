//! Compensated summation of convergent series.

use super::quadrature::Tolerance;
use crate::error::{Error, Result};

/// Consecutive negligible terms required before a series is declared converged.
const QUIET_TERMS: usize = 3;

/// Partial sum of a series, the number of terms consumed and a bound (or
/// estimate) for what was left out.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesSum {
    pub value: f64,
    pub terms: usize,
    pub tail_bound: f64,
}

/// Neumaier-compensated accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Σ_{k≥0} term(k). Stops once three consecutive terms each fall below
/// `rel_tol` relative to the running sum.
pub fn sum_series<F>(mut term: F, tol: &Tolerance) -> Result<SeriesSum>
where
    F: FnMut(usize) -> f64,
{
    try_sum_series(|k| Ok(term(k)), tol)
}

/// As [`sum_series`], for terms that can fail.
pub fn try_sum_series<F>(mut term: F, tol: &Tolerance) -> Result<SeriesSum>
where
    F: FnMut(usize) -> Result<f64>,
{
    let mut acc = Neumaier::default();
    let mut quiet = 0;
    let mut last = 0.0f64;
    for k in 0..tol.max_terms {
        let t = term(k)?;
        acc.add(t);
        last = t.abs();
        if t.abs() <= tol.rel_tol * acc.value().abs() || (t == 0.0 && acc.value() == 0.0) {
            quiet += 1;
            if quiet >= QUIET_TERMS {
                return Ok(SeriesSum {
                    value: acc.value(),
                    terms: k + 1,
                    tail_bound: last,
                });
            }
        } else {
            quiet = 0;
        }
        if !acc.value().is_finite() {
            break;
        }
    }
    Err(Error::NonConvergence {
        what: "sum_series",
        estimate: acc.value(),
        error_estimate: last,
    })
}

/// Σ term(k) for nonnegative terms that rise to a single peak and then decay.
///
/// Summation continues until the peak has been passed and a geometric bound on
/// the remaining tail, built from the last term ratio, drops below
/// `rel_tol` relative to the sum. Terms that underflow to zero before the
/// peak therefore never end the summation early.
pub fn try_sum_positive_series<F>(mut term: F, tol: &Tolerance) -> Result<SeriesSum>
where
    F: FnMut(usize) -> Result<f64>,
{
    let mut acc = Neumaier::default();
    let mut prev = 0.0f64;
    let mut peak = 0.0f64;
    let mut last_bound = f64::INFINITY;
    for k in 0..tol.max_terms {
        let t = term(k)?;
        if t < 0.0 || t.is_nan() {
            return Err(Error::NonConvergence {
                what: "sum_positive_series",
                estimate: acc.value(),
                error_estimate: f64::INFINITY,
            });
        }
        acc.add(t);
        peak = peak.max(t);
        let past_peak = peak > 0.0 && t < peak && t <= prev;
        if past_peak {
            let r = if prev > 0.0 { t / prev } else { 0.0 };
            if r < 1.0 {
                let bound = t * r / (1.0 - r);
                last_bound = bound;
                if bound <= tol.rel_tol * acc.value() || t == 0.0 {
                    return Ok(SeriesSum {
                        value: acc.value(),
                        terms: k + 1,
                        tail_bound: bound,
                    });
                }
            }
        }
        prev = t;
        if !acc.value().is_finite() {
            break;
        }
    }
    Err(Error::NonConvergence {
        what: "sum_positive_series",
        estimate: acc.value(),
        error_estimate: last_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_series() {
        let s = sum_series(|k| 0.5f64.powi(k as i32), &Tolerance::default()).unwrap();
        assert!((s.value - 2.0).abs() < 1e-9);
    }

    #[test]
    fn zero_series() {
        let s = sum_series(|_| 0.0, &Tolerance::default()).unwrap();
        assert_eq!(s.value, 0.0);
        assert_eq!(s.terms, 3);
    }

    #[test]
    fn poisson_weights_sum_to_one() {
        let k = 4.0f64;
        let term = |i: usize| {
            let ln = i as f64 * k.ln() - k - crate::numerics::ln_gamma(i as f64 + 1.0).unwrap();
            ln.exp()
        };
        let s = sum_series(term, &Tolerance::default()).unwrap();
        assert!((s.value - 1.0).abs() < 1e-9);
        let s = try_sum_positive_series(|i| Ok(term(i)), &Tolerance::default()).unwrap();
        assert!((s.value - 1.0).abs() < 1e-10);
        assert!(s.tail_bound < 1e-10);
    }

    #[test]
    fn divergent_series_reports_non_convergence() {
        let tol = Tolerance::default().with_max_terms(100);
        assert!(matches!(
            sum_series(|k| 1.0 / (k as f64 + 1.0), &tol),
            Err(Error::NonConvergence { .. })
        ));
    }

    #[test]
    fn positive_series_waits_for_the_peak() {
        // leading terms underflow to zero before the mass arrives
        let term = |k: usize| if k < 20 { Ok(0.0) } else { Ok(0.5f64.powi(k as i32 - 20)) };
        let s = try_sum_positive_series(term, &Tolerance::default()).unwrap();
        assert!((s.value - 2.0).abs() < 1e-9);
    }
}
