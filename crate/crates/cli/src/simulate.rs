use std::cell::RefCell;
use std::path::Path;

use igfading::{compare, sample_composite, EmpiricalCdf, Tolerance};

use crate::config::load_model;
use crate::error::{CliError, CliResult};
use crate::output::{fmt_g, Table};
use crate::SimulateArgs;

/// Sup-distance allowance: 0.003 at 10⁶ samples, widening as 1/√n.
pub fn guard(count: usize) -> f64 {
    0.003 * (1e6 / count as f64).sqrt()
}

pub fn run(args: &SimulateArgs) -> CliResult<()> {
    if args.count == 0 {
        return Err(CliError::Input("--count must be positive".into()));
    }
    let model = load_model(&args.config)?;
    let samples = sample_composite(&model, args.count, args.seed)?;

    let emit_to = match (&args.emit_samples, args.validate) {
        (Some(p), _) => Some(p.as_path()),
        (None, false) => Some(Path::new("-")),
        (None, true) => None,
    };
    if let Some(path) = emit_to {
        let mut table = Table::new(["value"]);
        for &v in &samples {
            table.push(vec![fmt_g(v)]);
        }
        table.emit(Some(path))?;
    }
    if !args.validate {
        return Ok(());
    }

    let ecdf = EmpiricalCdf::from_samples(&samples)?;
    let tol = Tolerance::default();
    let failure = RefCell::new(None);
    let cmp = compare(&ecdf, |u| match model.cdf(u, args.strategy, &tol) {
        Ok(v) => v,
        Err(e) => {
            failure.borrow_mut().get_or_insert(e);
            f64::NAN
        }
    })?;
    if let Some(e) = failure.into_inner() {
        return Err(e.into());
    }
    let limit = guard(args.count);
    let passed = cmp.sup_distance < limit;
    let mut report = Table::new(["count", "seed", "sup_distance", "cvm", "guard", "passed"]);
    report.push(vec![
        args.count.to_string(),
        args.seed.to_string(),
        fmt_g(cmp.sup_distance),
        fmt_g(cmp.cvm_value),
        fmt_g(limit),
        passed.to_string(),
    ]);
    let samples_on_stdout = emit_to.is_some_and(|p| p == Path::new("-"));
    if samples_on_stdout {
        eprintln!(
            "sup_distance {} cvm {} guard {}",
            fmt_g(cmp.sup_distance),
            fmt_g(cmp.cvm_value),
            fmt_g(limit)
        );
    } else {
        report.emit(None)?;
    }
    if passed {
        Ok(())
    } else {
        Err(CliError::Validation(format!(
            "sup distance {} is not below {}",
            fmt_g(cmp.sup_distance),
            fmt_g(limit)
        )))
    }
}
