//! Monte Carlo sampling of composite models and empirical distribution tools.

use crate::composite::CompositeModel;
use crate::error::{Error, Result};
use crate::fitting::cvm_statistic;
use crate::rng::tag;
use crate::shadowing::sample_inverse_gamma_tagged;

/// Step empirical distribution function.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalCdf {
    points: Vec<(f64, f64)>,
    sample_count: usize,
}

impl EmpiricalCdf {
    /// eCDF of raw samples; tied values share one abscissa.
    pub fn from_samples(samples: &[f64]) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::EmptyInput);
        }
        if let Some(bad) = samples.iter().find(|x| !x.is_finite()) {
            return Err(Error::InvalidData(format!("sample {bad} is not finite")));
        }
        let mut sorted = samples.to_vec();
        sorted.sort_by(f64::total_cmp);
        let n = sorted.len() as f64;
        let mut points: Vec<(f64, f64)> = Vec::new();
        for (i, &x) in sorted.iter().enumerate() {
            let f = (i + 1) as f64 / n;
            match points.last_mut() {
                Some(last) if last.0 == x => last.1 = f,
                _ => points.push((x, f)),
            }
        }
        if let Some(last) = points.last_mut() {
            last.1 = 1.0;
        }
        Ok(EmpiricalCdf {
            points,
            sample_count: sorted.len(),
        })
    }

    /// eCDF given directly as (t, F̂) pairs.
    pub fn from_pairs(pairs: Vec<(f64, f64)>) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::EmptyInput);
        }
        for (i, &(t, f)) in pairs.iter().enumerate() {
            if !t.is_finite() || !(0.0..=1.0).contains(&f) {
                return Err(Error::InvalidData(format!("pair {i} ({t}, {f}) is out of range")));
            }
            if i > 0 {
                let (pt, pf) = pairs[i - 1];
                if t <= pt {
                    return Err(Error::InvalidData(format!("abscissa at pair {i} is not increasing")));
                }
                if f < pf {
                    return Err(Error::InvalidData(format!("cdf at pair {i} decreases")));
                }
            }
        }
        let sample_count = pairs.len();
        Ok(EmpiricalCdf {
            points: pairs,
            sample_count,
        })
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    pub fn sample_count(&self) -> usize {
        self.sample_count
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Smallest and largest abscissa.
    pub fn support(&self) -> (f64, f64) {
        (self.points[0].0, self.points[self.points.len() - 1].0)
    }

    /// Right-continuous step value at t.
    pub fn eval(&self, t: f64) -> f64 {
        let idx = self.points.partition_point(|p| p.0 <= t);
        if idx == 0 {
            0.0
        } else {
            self.points[idx - 1].1
        }
    }

    /// Applies an increasing change of variable to the abscissae.
    pub fn map_abscissa<F: Fn(f64) -> f64>(&self, f: F) -> Result<Self> {
        let points: Vec<_> = self.points.iter().map(|&(t, c)| (f(t), c)).collect();
        for (i, w) in points.windows(2).enumerate() {
            if !(w[1].0 > w[0].0) || !w[0].0.is_finite() || !w[1].0.is_finite() {
                return Err(Error::InvalidData(format!("transformed abscissa {} is not increasing", i + 1)));
            }
        }
        if !points[0].0.is_finite() {
            return Err(Error::InvalidData("transformed abscissa 0 is not finite".into()));
        }
        Ok(EmpiricalCdf {
            points,
            sample_count: self.sample_count,
        })
    }

    /// The eCDF against the natural log of its abscissae.
    pub fn to_log_domain(&self) -> Result<Self> {
        if self.points[0].0 <= 0.0 {
            return Err(Error::InvalidData("log domain needs positive abscissae".into()));
        }
        self.map_abscissa(f64::ln)
    }
}

/// Distances between an eCDF and a theoretical distribution function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Comparison {
    pub sup_distance: f64,
    pub cvm_value: f64,
}

/// Kolmogorov distance and integrated squared difference over the data range.
pub fn compare<F: Fn(f64) -> f64>(ecdf: &EmpiricalCdf, theory: F) -> Result<Comparison> {
    let sup_distance = sup_distance(ecdf, &theory);
    let cvm_value = cvm_statistic(ecdf, &theory, 0.0)?;
    Ok(Comparison {
        sup_distance,
        cvm_value,
    })
}

/// sup_t |F̂(t) − F(t)| for a continuous nondecreasing F.
///
/// The supremum is attained at a jump of F̂, on one side or the other. Blocks
/// of jumps are bounded from their end values using monotonicity of both
/// functions and only subdivided while they could still beat the best
/// distance found so far, so smooth theories need far fewer evaluations than
/// there are jumps.
pub fn sup_distance<F: Fn(f64) -> f64>(ecdf: &EmpiricalCdf, theory: F) -> f64 {
    let pts = &ecdf.points;
    let n = pts.len();
    let before = |i: usize| if i == 0 { 0.0 } else { pts[i - 1].1 };
    let at = |i: usize, f: f64| (f - before(i)).abs().max((f - pts[i].1).abs());
    let f_first = theory(pts[0].0);
    let f_last = theory(pts[n - 1].0);
    let mut best = at(0, f_first).max(at(n - 1, f_last));
    let mut stack = vec![(0usize, n - 1, f_first, f_last)];
    while let Some((lo, hi, f_lo, f_hi)) = stack.pop() {
        if hi <= lo + 1 {
            continue;
        }
        // every jump strictly inside sees F in [f_lo, f_hi] and F̂ in [F̂(lo), F̂(hi−1)]
        let bound = (f_hi - pts[lo].1).max(pts[hi - 1].1 - f_lo);
        if bound <= best {
            continue;
        }
        let mid = lo + (hi - lo) / 2;
        let f_mid = theory(pts[mid].0);
        best = best.max(at(mid, f_mid));
        stack.push((lo, mid, f_lo, f_mid));
        stack.push((mid, hi, f_mid, f_hi));
    }
    best
}

/// `count` draws of W = W̄ ξ X, with ξ and X taken from separate substreams.
pub fn sample_composite(model: &CompositeModel, count: usize, seed: u64) -> Result<Vec<f64>> {
    let xi = sample_inverse_gamma_tagged(model.m(), 1.0, count, seed, tag::SHADOWING)?;
    let x = model.baseline().sample_tagged(count, seed, tag::FADING)?;
    let w_bar = model.w_bar();
    Ok(xi.iter().zip(&x).map(|(a, b)| w_bar * a * b).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fading::FadingModel;

    #[test]
    fn ecdf_steps_and_ties() {
        let e = EmpiricalCdf::from_samples(&[2.0, 1.0, 3.0]).unwrap();
        assert_eq!(e.points(), &[(1.0, 1.0 / 3.0), (2.0, 2.0 / 3.0), (3.0, 1.0)]);
        let e = EmpiricalCdf::from_samples(&[1.0, 2.0, 2.0, 5.0]).unwrap();
        assert_eq!(e.points(), &[(1.0, 0.25), (2.0, 0.75), (5.0, 1.0)]);
        assert_eq!(e.eval(0.5), 0.0);
        assert_eq!(e.eval(2.0), 0.75);
        assert_eq!(e.eval(4.0), 0.75);
        assert!(matches!(EmpiricalCdf::from_samples(&[]), Err(Error::EmptyInput)));
    }

    #[test]
    fn pair_validation() {
        assert!(EmpiricalCdf::from_pairs(vec![(0.0, 0.5), (1.0, 0.4)]).is_err());
        assert!(EmpiricalCdf::from_pairs(vec![(0.0, 0.5), (0.0, 0.6)]).is_err());
        assert!(EmpiricalCdf::from_pairs(vec![(0.0, 1.5)]).is_err());
        assert!(EmpiricalCdf::from_pairs(vec![(0.0, 0.5), (1.0, 1.0)]).is_ok());
    }

    #[test]
    fn sup_distance_matches_exhaustive_scan() {
        let samples = FadingModel::Rayleigh { omega_x: 1.0 }.sample(5000, 4).unwrap();
        let e = EmpiricalCdf::from_samples(&samples).unwrap();
        for &scale in &[1.0, 1.05, 0.7] {
            let theory = |t: f64| 1.0 - (-t / scale).exp();
            let mut exhaustive = 0.0f64;
            let mut prev = 0.0;
            for &(t, f) in e.points() {
                let v = theory(t);
                exhaustive = exhaustive.max((v - prev).abs()).max((v - f).abs());
                prev = f;
            }
            assert_eq!(sup_distance(&e, theory), exhaustive);
        }
    }

    #[test]
    fn shifted_theory_moves_away() {
        let samples = FadingModel::Rayleigh { omega_x: 1.0 }.sample(20_000, 8).unwrap();
        let e = EmpiricalCdf::from_samples(&samples).unwrap();
        let d = |c: f64| sup_distance(&e, |t: f64| if t > c { 1.0 - (-(t - c)).exp() } else { 0.0 });
        let (d0, d1, d2) = (d(0.0), d(0.1), d(0.3));
        assert!(d0 < d1 && d1 < d2, "{d0} {d1} {d2}");
    }

    #[test]
    fn composite_sampling_is_reproducible_with_decorrelated_factors() {
        let c = CompositeModel::new(3.0, 2.0, FadingModel::Twdp { k: 4.0, delta: 0.9, omega_x: 1.0 }).unwrap();
        let a = sample_composite(&c, 10_000, 11).unwrap();
        assert_eq!(a, sample_composite(&c, 10_000, 11).unwrap());
        let n = 100_000;
        let xi = sample_inverse_gamma_tagged(3.0, 1.0, n, 5, tag::SHADOWING).unwrap();
        let x = c.baseline().sample_tagged(n, 5, tag::FADING).unwrap();
        let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
        let (mx, my) = (mean(&xi), mean(&x));
        let cov: f64 = xi.iter().zip(&x).map(|(a, b)| (a - mx) * (b - my)).sum();
        let vx: f64 = xi.iter().map(|a| (a - mx) * (a - mx)).sum();
        let vy: f64 = x.iter().map(|b| (b - my) * (b - my)).sum();
        assert!((cov / (vx * vy).sqrt()).abs() < 0.01);
    }
}
