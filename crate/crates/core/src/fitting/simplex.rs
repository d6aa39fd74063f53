//! Nelder-Mead simplex search inside a box.

/// Outcome of one simplex run.
#[derive(Debug, Clone)]
pub(crate) struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct SimplexOptions {
    pub max_iterations: usize,
    /// Spread of objective values across the simplex, relative.
    pub f_tol: f64,
    /// Simplex diameter in the search coordinates.
    pub x_tol: f64,
    pub initial_step: f64,
}

impl Default for SimplexOptions {
    fn default() -> Self {
        SimplexOptions {
            max_iterations: 2000,
            f_tol: 1e-10,
            x_tol: 1e-7,
            initial_step: 0.5,
        }
    }
}

fn project(x: &mut [f64], lower: &[f64], upper: &[f64]) {
    for ((v, &lo), &hi) in x.iter_mut().zip(lower).zip(upper) {
        *v = v.clamp(lo, hi);
    }
}

/// Minimizes `f` from `start`, projecting every trial point onto [lower, upper].
pub(crate) fn minimize<F: Fn(&[f64]) -> f64>(
    f: F,
    start: &[f64],
    lower: &[f64],
    upper: &[f64],
    opts: &SimplexOptions,
) -> Minimum {
    let n = start.len();
    let eval = |x: &[f64]| {
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };
    let mut pts: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    let mut first = start.to_vec();
    project(&mut first, lower, upper);
    pts.push(first.clone());
    for i in 0..n {
        let mut p = first.clone();
        p[i] += opts.initial_step;
        project(&mut p, lower, upper);
        if p[i] == first[i] {
            p[i] -= opts.initial_step;
            project(&mut p, lower, upper);
        }
        pts.push(p);
    }
    let mut vals: Vec<f64> = pts.iter().map(|p| eval(p)).collect();

    let mut iterations = 0;
    let mut converged = false;
    while iterations < opts.max_iterations {
        iterations += 1;
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
        pts = order.iter().map(|&i| pts[i].clone()).collect();
        vals = order.iter().map(|&i| vals[i]).collect();

        let spread = (vals[n] - vals[0]).abs();
        let diameter = pts[1..]
            .iter()
            .map(|p| p.iter().zip(&pts[0]).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
            .fold(0.0, f64::max);
        if spread <= opts.f_tol * (vals[0].abs() + 1e-300) && diameter <= opts.x_tol
            || diameter == 0.0
        {
            converged = true;
            break;
        }

        let centroid: Vec<f64> = (0..n).map(|k| pts[..n].iter().map(|p| p[k]).sum::<f64>() / n as f64).collect();
        let along = |t: f64| {
            let mut p: Vec<f64> = centroid.iter().zip(&pts[n]).map(|(c, w)| c + t * (c - w)).collect();
            project(&mut p, lower, upper);
            p
        };
        let reflected = along(1.0);
        let fr = eval(&reflected);
        if fr < vals[0] {
            let expanded = along(2.0);
            let fe = eval(&expanded);
            if fe < fr {
                pts[n] = expanded;
                vals[n] = fe;
            } else {
                pts[n] = reflected;
                vals[n] = fr;
            }
            continue;
        }
        if fr < vals[n - 1] {
            pts[n] = reflected;
            vals[n] = fr;
            continue;
        }
        let (contracted, fc) = if fr < vals[n] {
            let c = along(0.5);
            let fc = eval(&c);
            (c, fc)
        } else {
            let c = along(-0.5);
            let fc = eval(&c);
            (c, fc)
        };
        if fc < vals[n].min(fr) {
            pts[n] = contracted;
            vals[n] = fc;
            continue;
        }
        // shrink toward the best vertex
        for i in 1..=n {
            let p: Vec<f64> = pts[0].iter().zip(&pts[i]).map(|(b, x)| b + 0.5 * (x - b)).collect();
            vals[i] = eval(&p);
            pts[i] = p;
        }
    }
    let best = (0..=n).min_by(|&a, &b| vals[a].total_cmp(&vals[b])).unwrap_or(0);
    Minimum {
        x: pts[best].clone(),
        value: vals[best],
        iterations,
        converged,
    }
}
