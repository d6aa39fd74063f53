//! Cramér-von Mises distance between a step eCDF and a smooth CDF.
//!
//! The theory is sampled on a uniform grid over the padded data range and
//! replaced by its cubic Hermite interpolant. On each grid cell the eCDF is a
//! step function whose moments against 1, s, s², s³ do not depend on the
//! theory, so they are tabulated once and every later evaluation of
//! ∫(F̂ − F)² costs one theory call per grid node.

use crate::error::{Error, Result};
use crate::montecarlo::EmpiricalCdf;

/// Grid cells spanning the padded support.
pub const GRID_CELLS: usize = 2048;

/// Default padding beyond the data range, in abscissa units.
pub const DEFAULT_PAD: f64 = 5.0;

const GL_NODES: [f64; 4] = [
    0.069_431_844_202_973_71,
    0.330_009_478_207_571_87,
    0.669_990_521_792_428_1,
    0.930_568_155_797_026_3,
];
const GL_WEIGHTS: [f64; 4] = [
    0.173_927_422_568_726_93,
    0.326_072_577_431_273_07,
    0.326_072_577_431_273_07,
    0.173_927_422_568_726_93,
];

#[derive(Debug, Clone, Copy, Default)]
struct Cell {
    /// ∫₀¹ F̂² ds.
    square: f64,
    /// ∫₀¹ F̂ s^k ds, k = 0..3.
    moments: [f64; 4],
}

/// Precomputed eCDF structure for repeated CvM evaluations.
#[derive(Debug, Clone)]
pub struct CvmGrid {
    start: f64,
    width: f64,
    cells: Vec<Cell>,
}

impl CvmGrid {
    pub fn new(ecdf: &EmpiricalCdf, pad: f64) -> Result<Self> {
        if ecdf.is_empty() {
            return Err(Error::EmptyInput);
        }
        if !(pad >= 0.0) || !pad.is_finite() {
            return Err(Error::InvalidData(format!("support pad {pad} must be a nonnegative number")));
        }
        let (lo, hi) = ecdf.support();
        let start = lo - pad;
        let span = hi + pad - start;
        if span == 0.0 {
            return Ok(CvmGrid {
                start,
                width: 0.0,
                cells: Vec::new(),
            });
        }
        let width = span / GRID_CELLS as f64;
        let mut cells = vec![Cell::default(); GRID_CELLS];
        // walk the steps; the eCDF takes the value `level` on [edge, next jump)
        let pts = ecdf.points();
        let mut level = 0.0;
        let mut edge = start;
        for idx in 0..=pts.len() {
            let next = if idx < pts.len() { pts[idx].0 } else { start + span };
            accumulate(&mut cells, start, width, edge, next, level);
            if idx < pts.len() {
                level = pts[idx].1;
                edge = next;
            }
        }
        Ok(CvmGrid { start, width, cells })
    }

    /// Abscissa range covered: the data range widened by the pad.
    pub fn range(&self) -> (f64, f64) {
        (self.start, self.start + self.width * self.cells.len() as f64)
    }

    /// ∫(F̂(t) − F(t))² dt over the padded support.
    pub fn evaluate<F: Fn(f64) -> f64>(&self, theory: F) -> f64 {
        let g = self.cells.len();
        if g == 0 {
            return 0.0;
        }
        let values: Vec<f64> = (0..=g).map(|j| theory(self.start + self.width * j as f64)).collect();
        let slopes = slopes(&values);
        let mut total = 0.0;
        for (j, cell) in self.cells.iter().enumerate() {
            let (f0, f1, d0, d1) = (values[j], values[j + 1], slopes[j], slopes[j + 1]);
            let a = [f0, d0, -3.0 * f0 - 2.0 * d0 + 3.0 * f1 - d1, 2.0 * f0 + d0 - 2.0 * f1 + d1];
            let mut h2 = 0.0;
            for (&s, &w) in GL_NODES.iter().zip(&GL_WEIGHTS) {
                let h = a[0] + s * (a[1] + s * (a[2] + s * a[3]));
                h2 += w * h * h;
            }
            let cross: f64 = a.iter().zip(&cell.moments).map(|(x, y)| x * y).sum();
            total += (cell.square - 2.0 * cross + h2).max(0.0);
        }
        total * self.width
    }
}

/// Adds the constant `level` on [x0, x1) to the cell moments.
fn accumulate(cells: &mut [Cell], start: f64, width: f64, x0: f64, x1: f64, level: f64) {
    if !(x1 > x0) || level == 0.0 {
        return;
    }
    let g = cells.len();
    let s0 = (x0 - start) / width;
    let s1 = (x1 - start) / width;
    let first = (s0.floor() as usize).min(g - 1);
    let last = ((s1.ceil() as usize).max(1) - 1).min(g - 1);
    for (j, cell) in cells.iter_mut().enumerate().take(last + 1).skip(first) {
        let a = (s0 - j as f64).clamp(0.0, 1.0);
        let b = (s1 - j as f64).clamp(0.0, 1.0);
        if b <= a {
            continue;
        }
        cell.square += level * level * (b - a);
        let (mut pa, mut pb) = (a, b);
        for k in 0..4 {
            cell.moments[k] += level * (pb - pa) / (k + 1) as f64;
            pa *= a;
            pb *= b;
        }
    }
}

/// Node derivatives in grid units: fourth order inside, second order at the ends.
fn slopes(v: &[f64]) -> Vec<f64> {
    let n = v.len();
    let mut d = vec![0.0; n];
    if n == 2 {
        d[0] = v[1] - v[0];
        d[1] = d[0];
        return d;
    }
    for j in 0..n {
        d[j] = if j >= 2 && j + 2 < n {
            (v[j - 2] - 8.0 * v[j - 1] + 8.0 * v[j + 1] - v[j + 2]) / 12.0
        } else if j == 0 {
            (-3.0 * v[0] + 4.0 * v[1] - v[2]) / 2.0
        } else if j == n - 1 {
            (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / 2.0
        } else {
            (v[j + 1] - v[j - 1]) / 2.0
        };
    }
    d
}

/// ω² = ∫(F̂(t) − F(t))² dt over [t_min − pad, t_max + pad].
pub fn cvm_statistic<F: Fn(f64) -> f64>(ecdf: &EmpiricalCdf, theory: F, support_pad: f64) -> Result<f64> {
    Ok(CvmGrid::new(ecdf, support_pad)?.evaluate(theory))
}
