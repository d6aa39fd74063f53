use std::path::Path;

use igfading::{compare_families, db_to_natural_log, DbDirection, EmpiricalCdf, FitOptions, ShadowingFamily};

use crate::error::{CliError, CliResult};
use crate::output::{fmt_g, Table};
use crate::{FitArgs, Scale};

enum Layout {
    Samples,
    Pairs,
}

fn to_natural_log(v: f64, scale: Scale, direction: DbDirection, line: u64) -> CliResult<f64> {
    match scale {
        Scale::Db => Ok(db_to_natural_log(v, direction)),
        Scale::Ln => Ok(v),
        Scale::Linear if v > 0.0 => Ok(v.ln()),
        Scale::Linear => Err(CliError::Input(format!("line {line}: linear-scale value {v} must be positive"))),
    }
}

/// Reads raw samples or (t, cdf) pairs and returns the eCDF in natural-log units.
pub fn read_input(path: &Path, scale: Scale, direction: DbDirection) -> CliResult<EmpiricalCdf> {
    let name = path.display();
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| CliError::Input(format!("{name}: {e}")))?;
    let header: Vec<String> = reader
        .headers()
        .map_err(|e| CliError::Input(format!("{name}: line 1: {e}")))?
        .iter()
        .map(str::to_string)
        .collect();
    let layout = match header.iter().map(String::as_str).collect::<Vec<_>>().as_slice() {
        ["value"] => Layout::Samples,
        ["t", "cdf"] => Layout::Pairs,
        other => {
            return Err(CliError::Input(format!(
                "{name}: line 1: header must be `value` or `t,cdf`, found `{}`",
                other.join(",")
            )))
        }
    };

    let mut samples = Vec::new();
    let mut pairs: Vec<(f64, f64)> = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            CliError::Input(format!("{name}: line {line}: {e}"))
        })?;
        let line = record.position().map_or(0, |p| p.line());
        let number = |i: usize| -> CliResult<f64> {
            let text = &record[i];
            match text.parse::<f64>() {
                Ok(v) if v.is_finite() => Ok(v),
                _ => Err(CliError::Input(format!("{name}: line {line}: `{text}` is not a finite number"))),
            }
        };
        match layout {
            Layout::Samples => samples.push(to_natural_log(number(0)?, scale, direction, line)?),
            Layout::Pairs => {
                let (t, f) = (to_natural_log(number(0)?, scale, direction, line)?, number(1)?);
                if !(0.0..=1.0).contains(&f) {
                    return Err(CliError::Input(format!("{name}: line {line}: cdf {f} is outside [0, 1]")));
                }
                if let Some(&(pt, pf)) = pairs.last() {
                    if t <= pt {
                        return Err(CliError::Input(format!("{name}: line {line}: t does not increase")));
                    }
                    if f < pf {
                        return Err(CliError::Input(format!("{name}: line {line}: cdf decreases")));
                    }
                }
                pairs.push((t, f));
            }
        }
    }
    let ecdf = match layout {
        Layout::Samples => EmpiricalCdf::from_samples(&samples),
        Layout::Pairs => EmpiricalCdf::from_pairs(pairs),
    };
    ecdf.map_err(|e| CliError::Input(format!("{name}: {e}")))
}

pub fn run(args: &FitArgs) -> CliResult<()> {
    let ecdf = read_input(&args.input, args.scale, args.db_direction.into())?;
    let families: Vec<ShadowingFamily> = args.families.iter().map(|&f| f.into()).collect();
    let options = FitOptions {
        integer_m: args.integer_m,
        multistart: args.multistart.max(1),
        ..FitOptions::default()
    };
    let ranking = compare_families(&ecdf, &families, &options)?;
    for (label, e) in &ranking.failures {
        eprintln!("warning: {label} fit failed: {e}");
    }
    let mut table = Table::new(["rank", "family", "param1", "value1", "param2", "value2", "cvm", "converged"]);
    for (i, r) in ranking.results.iter().enumerate() {
        let [(n1, v1), (n2, v2)] = r.params.params();
        table.push(vec![
            (i + 1).to_string(),
            r.label(),
            n1.to_string(),
            fmt_g(v1),
            n2.to_string(),
            fmt_g(v2),
            fmt_g(r.cvm),
            r.converged.to_string(),
        ]);
    }
    table.emit(args.out.as_deref())
}
