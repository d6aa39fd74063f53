//! Fitting shadowing families to empirical log-domain data by minimizing the
//! Cramér-von Mises distance.

mod cvm;
mod simplex;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

pub use cvm::{cvm_statistic, CvmGrid, DEFAULT_PAD, GRID_CELLS};

use crate::error::{Error, Result};
use crate::montecarlo::EmpiricalCdf;
use crate::shadowing::{ShadowingFamily, ShadowingModel};
use simplex::{minimize, Minimum, SimplexOptions};

const SHAPE_MAX: f64 = 1e4;
const SCALE_MIN: f64 = 1e-6;
const SCALE_MAX: f64 = 1e6;
const SIGMA_MIN: f64 = 1e-3;
const SIGMA_MAX: f64 = 5.0;
const GAMMA_K_MIN: f64 = 0.05;
const IG_M_MARGIN: f64 = 1e-6;
const IGAUSS_LAMBDA_MIN: f64 = 1e-3;

/// How decibel data are turned into natural-log units.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DbDirection {
    /// t = 20 · t_dB / ln 10, the rescaling factor taken literally.
    #[default]
    Literal,
    /// t = t_dB · ln 10 / 20, the natural log of the amplitude ratio.
    Conventional,
}

impl FromStr for DbDirection {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "literal" | "paper" => Ok(DbDirection::Literal),
            "conventional" => Ok(DbDirection::Conventional),
            _ => Err(Error::InvalidData(format!("unknown dB direction `{s}`"))),
        }
    }
}

impl fmt::Display for DbDirection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DbDirection::Literal => "literal",
            DbDirection::Conventional => "conventional",
        })
    }
}

/// Rescales a decibel abscissa to natural-log units.
pub fn db_to_natural_log(t_db: f64, direction: DbDirection) -> f64 {
    match direction {
        DbDirection::Literal => 20.0 * t_db / std::f64::consts::LN_10,
        DbDirection::Conventional => t_db * std::f64::consts::LN_10 / 20.0,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitOptions {
    /// Restrict the inverse-gamma shape to integers.
    pub integer_m: bool,
    /// Simplex restarts from a lattice around the moment-matched start.
    pub multistart: usize,
    pub support_pad: f64,
    pub max_iterations: usize,
}

impl Default for FitOptions {
    fn default() -> Self {
        FitOptions {
            integer_m: false,
            multistart: 8,
            support_pad: DEFAULT_PAD,
            max_iterations: 2000,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    pub family: ShadowingFamily,
    pub params: ShadowingModel,
    /// ω² at the reported parameters.
    pub cvm: f64,
    pub iterations: usize,
    pub converged: bool,
    /// Whether m was restricted to integers.
    pub integer_m: bool,
    /// F(t_min − pad) + 1 − F(t_max + pad): theory mass outside the integrated range.
    pub tail_mass: f64,
}

impl FitResult {
    /// Row label for reports.
    pub fn label(&self) -> String {
        if self.integer_m {
            format!("{} m∈N⁺", self.family)
        } else {
            self.family.to_string()
        }
    }
}

/// Search coordinates of each family: logs of the positive parameters, so a
/// unit step is a factor of e.
struct Family {
    family: ShadowingFamily,
    lower: [f64; 2],
    upper: [f64; 2],
}

impl Family {
    fn new(family: ShadowingFamily) -> Self {
        let (lower, upper) = match family {
            ShadowingFamily::Lognormal => (
                [SCALE_MIN.ln(), SIGMA_MIN.ln()],
                [SCALE_MAX.ln(), SIGMA_MAX.ln()],
            ),
            ShadowingFamily::Gamma => ([GAMMA_K_MIN.ln(), SCALE_MIN.ln()], [SHAPE_MAX.ln(), SCALE_MAX.ln()]),
            ShadowingFamily::InverseGaussian => (
                [SCALE_MIN.ln(), IGAUSS_LAMBDA_MIN.ln()],
                [SCALE_MAX.ln(), SCALE_MAX.ln()],
            ),
            // first coordinate is ln(m − 1)
            ShadowingFamily::InverseGamma => (
                [IG_M_MARGIN.ln(), SCALE_MIN.ln()],
                [(SHAPE_MAX - 1.0).ln(), SCALE_MAX.ln()],
            ),
        };
        Family { family, lower, upper }
    }

    fn model(&self, x: &[f64]) -> ShadowingModel {
        match self.family {
            ShadowingFamily::Lognormal => ShadowingModel::Lognormal { mu: x[0], sigma: x[1].exp() },
            ShadowingFamily::Gamma => ShadowingModel::Gamma { k: x[0].exp(), omega: x[1].exp() },
            ShadowingFamily::InverseGaussian => ShadowingModel::InverseGaussian {
                mu_i: x[0].exp(),
                lambda: x[1].exp(),
            },
            ShadowingFamily::InverseGamma => ShadowingModel::InverseGamma {
                m: 1.0 + x[0].exp(),
                omega_i: x[1].exp(),
            },
        }
    }

    /// Moment-matched starting point from the eCDF increments.
    fn start(&self, ecdf: &EmpiricalCdf) -> [f64; 2] {
        let mut prev = 0.0;
        let (mut m_t, mut m_t2, mut m_y, mut m_y2, mut mass) = (0.0, 0.0, 0.0, 0.0, 0.0);
        for &(t, f) in ecdf.points() {
            let w = f - prev;
            prev = f;
            let y = t.exp();
            m_t += w * t;
            m_t2 += w * t * t;
            m_y += w * y;
            m_y2 += w * y * y;
            mass += w;
        }
        let (m_t, m_t2, m_y, m_y2) = (m_t / mass, m_t2 / mass, m_y / mass, m_y2 / mass);
        let var_t = (m_t2 - m_t * m_t).max(1e-12);
        let var_y = (m_y2 - m_y * m_y).max(1e-12 * m_y * m_y);
        let cv2 = var_y / (m_y * m_y);
        let x = match self.family {
            ShadowingFamily::Lognormal => [m_t, var_t.sqrt().ln()],
            ShadowingFamily::Gamma => [(1.0 / cv2).ln(), m_y.ln()],
            ShadowingFamily::InverseGaussian => [m_y.ln(), (m_y / cv2).ln()],
            ShadowingFamily::InverseGamma => [(1.0 + 1.0 / cv2).ln(), m_y.ln()],
        };
        let mut x = [x[0], x[1]];
        for k in 0..2 {
            x[k] = if x[k].is_finite() { x[k].clamp(self.lower[k], self.upper[k]) } else { 0.5 * (self.lower[k] + self.upper[k]) };
        }
        x
    }
}

/// Offsets of the multistart lattice in search coordinates.
fn lattice(i: usize) -> [f64; 2] {
    const BASE: [[f64; 2]; 9] = [
        [0.0, 0.0],
        [1.0, 0.0],
        [-1.0, 0.0],
        [0.0, 1.0],
        [0.0, -1.0],
        [1.0, 1.0],
        [-1.0, -1.0],
        [1.0, -1.0],
        [-1.0, 1.0],
    ];
    let ring = (i / BASE.len()) as f64 + 1.0;
    let b = BASE[i % BASE.len()];
    if i < BASE.len() {
        b
    } else {
        [b[0] * 2.0 * ring, b[1] * 2.0 * ring]
    }
}

fn tail_mass(model: &ShadowingModel, grid: &CvmGrid) -> f64 {
    let (a, b) = grid.range();
    model.log_domain_cdf(a) + 1.0 - model.log_domain_cdf(b)
}

fn check_data(ecdf: &EmpiricalCdf) -> Result<()> {
    if ecdf.is_empty() {
        return Err(Error::EmptyInput);
    }
    if ecdf.len() < 2 {
        return Err(Error::DegenerateData("a single distinct abscissa cannot be fitted".into()));
    }
    Ok(())
}

/// Best simplex run over the first `starts` lattice points.
fn multistart(
    objective: &(dyn Fn(&[f64]) -> f64 + Sync),
    start: &[f64],
    lower: &[f64],
    upper: &[f64],
    starts: usize,
    opts: &SimplexOptions,
) -> Minimum {
    let dim = start.len();
    let runs: Vec<Minimum> = (0..starts.max(1))
        .into_par_iter()
        .map(|i| {
            let off = lattice(i);
            let x0: Vec<f64> = (0..dim).map(|k| start[k] + off[k.min(1)]).collect();
            let first = minimize(objective, &x0, lower, upper, opts);
            // one restart from the result guards against a collapsed simplex
            let second = minimize(objective, &first.x, lower, upper, opts);
            Minimum {
                iterations: first.iterations + second.iterations,
                converged: second.converged,
                ..if second.value <= first.value { second } else { first }
            }
        })
        .collect();
    runs.into_iter()
        .reduce(|best, r| if r.value < best.value { r } else { best })
        .expect("at least one start")
}

/// Fits one family to log-domain data.
pub fn fit(family: ShadowingFamily, ecdf: &EmpiricalCdf, options: &FitOptions) -> Result<FitResult> {
    check_data(ecdf)?;
    let grid = CvmGrid::new(ecdf, options.support_pad)?;
    let fam = Family::new(family);
    let objective = |x: &[f64]| {
        let model = fam.model(x);
        grid.evaluate(|t| model.log_domain_cdf(t))
    };
    let opts = SimplexOptions {
        max_iterations: options.max_iterations,
        ..Default::default()
    };
    let start = fam.start(ecdf);
    let best = multistart(&objective, &start, &fam.lower, &fam.upper, options.multistart, &opts);
    let params = fam.model(&best.x);
    let result = FitResult {
        family,
        params,
        cvm: best.value,
        iterations: best.iterations,
        converged: best.converged,
        integer_m: false,
        tail_mass: tail_mass(&params, &grid),
    };
    if options.integer_m && family == ShadowingFamily::InverseGamma {
        return fit_integer_m(&result, &grid, &opts);
    }
    Ok(result)
}

/// Re-optimizes Ω_i for each integer m near the unconstrained optimum.
fn fit_integer_m(free: &FitResult, grid: &CvmGrid, opts: &SimplexOptions) -> Result<FitResult> {
    let ShadowingModel::InverseGamma { m, omega_i } = free.params else {
        unreachable!("inverse gamma fit");
    };
    let lo = (m.floor() - 2.0).max(2.0) as u64;
    let hi = (m.ceil() + 2.0).max(2.0) as u64;
    let mut best: Option<FitResult> = None;
    let mut iterations = free.iterations;
    for mi in lo..=hi {
        let mf = mi as f64;
        let objective = |x: &[f64]| {
            let model = ShadowingModel::InverseGamma { m: mf, omega_i: x[0].exp() };
            grid.evaluate(|t| model.log_domain_cdf(t))
        };
        let r = minimize(objective, &[omega_i.ln()], &[SCALE_MIN.ln()], &[SCALE_MAX.ln()], opts);
        iterations += r.iterations;
        if best.as_ref().is_none_or(|b| r.value < b.cvm) {
            let params = ShadowingModel::InverseGamma { m: mf, omega_i: r.x[0].exp() };
            best = Some(FitResult {
                family: ShadowingFamily::InverseGamma,
                params,
                cvm: r.value,
                iterations: 0,
                converged: r.converged,
                integer_m: true,
                tail_mass: tail_mass(&params, grid),
            });
        }
    }
    let mut best = best.expect("nonempty bracket");
    best.iterations = iterations;
    Ok(best)
}

/// Fits of several families, best first, plus the families that failed.
#[derive(Debug, Clone)]
pub struct Ranking {
    pub results: Vec<FitResult>,
    pub failures: Vec<(String, Error)>,
}

/// Fits every requested family and ranks them by ω². With `integer_m` the
/// unconstrained inverse-gamma fit is kept and an integer-m row is added.
pub fn compare_families(ecdf: &EmpiricalCdf, families: &[ShadowingFamily], options: &FitOptions) -> Result<Ranking> {
    if families.is_empty() {
        return Err(Error::InvalidData("no families requested".into()));
    }
    check_data(ecdf)?;
    let mut jobs: Vec<(ShadowingFamily, bool)> = families.iter().map(|&f| (f, false)).collect();
    if options.integer_m && families.contains(&ShadowingFamily::InverseGamma) {
        jobs.push((ShadowingFamily::InverseGamma, true));
    }
    let outcomes: Vec<(String, Result<FitResult>)> = jobs
        .par_iter()
        .map(|&(family, integer_m)| {
            let opts = FitOptions { integer_m, ..*options };
            let label = if integer_m { format!("{family} m∈N⁺") } else { family.to_string() };
            (label, fit(family, ecdf, &opts))
        })
        .collect();
    let mut results = Vec::new();
    let mut failures = Vec::new();
    for (label, outcome) in outcomes {
        match outcome {
            Ok(r) => results.push(r),
            Err(e) => failures.push((label, e)),
        }
    }
    if results.is_empty() {
        let detail: Vec<String> = failures.iter().map(|(l, e)| format!("{l}: {e}")).collect();
        return Err(Error::AllFitsFailed(detail.join("; ")));
    }
    results.sort_by(|a, b| a.cvm.total_cmp(&b.cvm));
    Ok(Ranking { results, failures })
}
