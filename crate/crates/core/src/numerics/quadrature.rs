//! Adaptive Gauss–Kronrod quadrature, a point-doubling trapezoid rule for
//! periodic integrands, and a semi-infinite mapping onto [0, 1].

use std::collections::BinaryHeap;

use crate::error::{check_param, Error, Result};

/// Accuracy targets and work limits shared by the series and quadrature kernels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_terms: usize,
    pub max_subdivisions: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            rel_tol: 1e-10,
            abs_tol: 1e-14,
            max_terms: 10_000,
            max_subdivisions: 60,
        }
    }
}

impl Tolerance {
    pub fn new(rel_tol: f64, abs_tol: f64, max_terms: usize, max_subdivisions: usize) -> Result<Self> {
        let tol = Tolerance {
            rel_tol,
            abs_tol,
            max_terms,
            max_subdivisions,
        };
        tol.validate()?;
        Ok(tol)
    }

    pub fn validate(&self) -> Result<()> {
        check_param("rel_tol", self.rel_tol, self.rel_tol > 0.0, "must be positive")?;
        check_param("abs_tol", self.abs_tol, self.abs_tol >= 0.0, "must be nonnegative")?;
        check_param(
            "max_terms",
            self.max_terms as f64,
            self.max_terms >= 1,
            "must be at least 1",
        )?;
        check_param(
            "max_subdivisions",
            self.max_subdivisions as f64,
            self.max_subdivisions >= 1,
            "must be at least 1",
        )
    }

    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn with_abs_tol(mut self, abs_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self
    }

    pub fn with_max_terms(mut self, max_terms: usize) -> Self {
        self.max_terms = max_terms;
        self
    }

    pub fn with_max_subdivisions(mut self, max_subdivisions: usize) -> Self {
        self.max_subdivisions = max_subdivisions;
        self
    }

    pub(crate) fn target(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

/// An integral value together with an estimate of its absolute error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
}

// 21-point Kronrod abscissae on [0, 1]; odd indices are the 10-point Gauss nodes.
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_034_055_766,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    magnitude: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod21<F>(f: &mut F, a: f64, b: f64) -> Result<Panel>
where
    F: FnMut(f64) -> Result<f64>,
{
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(centre)?;
    let mut res_g = 0.0;
    let mut res_k = WGK[10] * fc;
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(centre - dx)?;
        let f2 = f(centre + dx)?;
        fv1[j] = f1;
        fv2[j] = f2;
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = res_k * half;
    res_abs *= half.abs();
    res_asc *= half.abs();
    let mut error = ((res_k - res_g) * half).abs();
    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * (200.0 * error / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * res_abs);
    }
    if !value.is_finite() {
        return Err(Error::NonConvergence {
            what: "integrate_finite",
            estimate: value,
            error_estimate: f64::INFINITY,
        });
    }
    Ok(Panel {
        a,
        b,
        value,
        error,
        magnitude: res_abs,
    })
}

/// Adaptive 21-point Gauss–Kronrod integration of f over [a, b].
pub fn integrate_finite<F>(mut f: F, a: f64, b: f64, tol: &Tolerance) -> Result<Estimate>
where
    F: FnMut(f64) -> f64,
{
    try_integrate_finite(|x| Ok(f(x)), a, b, tol)
}

/// As [`integrate_finite`], for integrands that can fail.
pub fn try_integrate_finite<F>(mut f: F, a: f64, b: f64, tol: &Tolerance) -> Result<Estimate>
where
    F: FnMut(f64) -> Result<f64>,
{
    tol.validate()?;
    if a == b {
        return Ok(Estimate {
            value: 0.0,
            error: 0.0,
            evaluations: 0,
        });
    }
    let mut heap = BinaryHeap::new();
    let first = kronrod21(&mut f, a, b)?;
    let mut total = first.value;
    let mut total_err = first.error;
    let mut magnitude = first.magnitude;
    heap.push(first);
    let mut evaluations = 21;
    let mut splits = 0;
    // Below this the error estimate is pure rounding and cannot shrink further.
    let floor = |m: f64| 100.0 * f64::EPSILON * m;
    while total_err > tol.target(total).max(floor(magnitude)) {
        if splits >= tol.max_subdivisions {
            return Err(Error::NonConvergence {
                what: "integrate_finite",
                estimate: total,
                error_estimate: total_err,
            });
        }
        let worst = heap.pop().expect("heap never empties");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a.min(worst.b) || mid >= worst.a.max(worst.b) {
            // panel cannot be split any further in floating point
            return Err(Error::NonConvergence {
                what: "integrate_finite",
                estimate: total,
                error_estimate: total_err,
            });
        }
        let left = kronrod21(&mut f, worst.a, mid)?;
        let right = kronrod21(&mut f, mid, worst.b)?;
        evaluations += 42;
        splits += 1;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        magnitude += left.magnitude + right.magnitude - worst.magnitude;
        heap.push(left);
        heap.push(right);
        if splits % 32 == 0 {
            // refresh the running sums to shed accumulated rounding
            total = heap.iter().map(|p| p.value).sum();
            total_err = heap.iter().map(|p| p.error).sum();
            magnitude = heap.iter().map(|p| p.magnitude).sum();
        }
    }
    let value = heap.iter().map(|p| p.value).sum();
    let error = heap.iter().map(|p| p.error).sum();
    Ok(Estimate {
        value,
        error,
        evaluations,
    })
}

/// Trapezoid rule with point doubling for an integrand periodic on [a, b].
pub fn integrate_periodic<F>(mut f: F, a: f64, b: f64, tol: &Tolerance) -> Result<Estimate>
where
    F: FnMut(f64) -> f64,
{
    try_integrate_periodic(|x| Ok(f(x)), a, b, tol)
}

/// As [`integrate_periodic`], for integrands that can fail.
pub fn try_integrate_periodic<F>(mut f: F, a: f64, b: f64, tol: &Tolerance) -> Result<Estimate>
where
    F: FnMut(f64) -> Result<f64>,
{
    tol.validate()?;
    const MAX_POINTS: usize = 1 << 20;
    let width = b - a;
    let mut n = 8usize;
    let mut sum = 0.0;
    for i in 0..n {
        sum += f(a + width * i as f64 / n as f64)?;
    }
    let mut estimate = sum * width / n as f64;
    loop {
        // the new level evaluates only the midpoints of the previous one
        let mut mids = 0.0;
        for i in 0..n {
            mids += f(a + width * (i as f64 + 0.5) / n as f64)?;
        }
        sum += mids;
        n *= 2;
        let refined = sum * width / n as f64;
        let change = (refined - estimate).abs();
        estimate = refined;
        if !estimate.is_finite() {
            return Err(Error::NonConvergence {
                what: "integrate_periodic",
                estimate,
                error_estimate: f64::INFINITY,
            });
        }
        if n >= 32 && change <= tol.target(estimate) {
            return Ok(Estimate {
                value: estimate,
                error: change,
                evaluations: n,
            });
        }
        if n >= MAX_POINTS {
            return Err(Error::NonConvergence {
                what: "integrate_periodic",
                estimate,
                error_estimate: change,
            });
        }
    }
}

/// ∫₀^∞ f(x) dx through the substitution x = (t/(1−t))², t ∈ [0, 1).
pub fn integrate_semi_infinite<F>(mut f: F, tol: &Tolerance) -> Result<Estimate>
where
    F: FnMut(f64) -> f64,
{
    try_integrate_semi_infinite_scaled(|x| Ok(f(x)), 1.0, tol)
}

/// As [`integrate_semi_infinite`], for integrands that can fail.
pub fn try_integrate_semi_infinite<F>(f: F, tol: &Tolerance) -> Result<Estimate>
where
    F: FnMut(f64) -> Result<f64>,
{
    try_integrate_semi_infinite_scaled(f, 1.0, tol)
}

/// ∫₀^∞ f(x) dx with x = scale·(t/(1−t))²; `scale` should sit near the bulk
/// of the integrand.
pub fn try_integrate_semi_infinite_scaled<F>(mut f: F, scale: f64, tol: &Tolerance) -> Result<Estimate>
where
    F: FnMut(f64) -> Result<f64>,
{
    check_param("scale", scale, scale > 0.0, "must be positive")?;
    let mapped = |t: f64| -> Result<f64> {
        if t <= 0.0 || t >= 1.0 {
            return Ok(0.0);
        }
        let r = t / (1.0 - t);
        let x = scale * r * r;
        if !x.is_finite() {
            return Ok(0.0);
        }
        let jac = 2.0 * scale * t / ((1.0 - t) * (1.0 - t) * (1.0 - t));
        let v = f(x)?;
        if v == 0.0 {
            return Ok(0.0);
        }
        Ok(v * jac)
    };
    try_integrate_finite(mapped, 0.0, 1.0, tol).map_err(|e| match e {
        Error::NonConvergence {
            estimate,
            error_estimate,
            ..
        } => Error::NonConvergence {
            what: "integrate_semi_infinite",
            estimate,
            error_estimate,
        },
        other => other,
    })
}
