use igfading::Tolerance;
use rayon::prelude::*;

use crate::config::load_model;
use crate::error::CliResult;
use crate::grid::parse_grid;
use crate::output::Table;
use crate::OutageArgs;

pub fn run(args: &OutageArgs) -> CliResult<()> {
    let model = load_model(&args.config)?;
    let grid = parse_grid(&args.grid)?;
    let tol = Tolerance::default();
    let rows: Vec<Vec<f64>> = grid
        .par_iter()
        .map(|&db| {
            let ratio = 10f64.powf(db / 10.0);
            let mut row = vec![db, model.outage(ratio, 1.0, args.strategy, &tol)?];
            if args.asymptotic {
                row.push(model.outage_asymptotic(ratio, 1.0)?);
            }
            Ok(row)
        })
        .collect::<igfading::Result<_>>()?;
    let mut header = vec!["gamma_th_db", "exact"];
    if args.asymptotic {
        header.push("asymptote");
    }
    let mut table = Table::new(header);
    for row in &rows {
        table.push_numbers(row);
    }
    table.emit(args.out.as_deref())
}
