use igfading::{FMixture, Strategy, Tolerance};
use rayon::prelude::*;

use crate::config::load_model;
use crate::error::{CliError, CliResult};
use crate::grid::parse_grid;
use crate::output::Table;
use crate::{EvalArgs, Quantity};

/// Power-domain value from a fixed F mixture, with the amplitude change of variable.
fn from_mixture(mix: &FMixture, quantity: Quantity, x: f64) -> igfading::Result<f64> {
    match quantity {
        Quantity::Pdf => mix.pdf(x),
        Quantity::Cdf => mix.cdf(x),
        Quantity::AmpPdf => Ok(2.0 * x * mix.pdf(x * x)?),
        Quantity::AmpCdf => mix.cdf(x * x),
    }
}

pub fn run(args: &EvalArgs) -> CliResult<()> {
    let model = load_model(&args.config)?;
    let grid = parse_grid(&args.grid)?;
    let tol = Tolerance::default();
    let mixture = match args.terms {
        None => None,
        Some(n) => {
            if !matches!(args.strategy, Strategy::Mixture | Strategy::Auto) {
                return Err(CliError::Input("--terms applies to the mixture strategy only".into()));
            }
            if n == 0 {
                return Err(CliError::Input("--terms must be at least 1".into()));
            }
            let full = model.mixture_of_f(&tol)?;
            if n > full.len() {
                eprintln!("note: the mixture converged with {} terms; using all of them", full.len());
            }
            Some(full.truncated(n))
        }
    };
    let values: Vec<f64> = grid
        .par_iter()
        .map(|&x| match &mixture {
            Some(mix) => from_mixture(mix, args.quantity, x),
            None => match args.quantity {
                Quantity::Pdf => model.pdf(x, args.strategy, &tol),
                Quantity::Cdf => model.cdf(x, args.strategy, &tol),
                Quantity::AmpPdf => model.amplitude_pdf(x, args.strategy, &tol),
                Quantity::AmpCdf => model.amplitude_cdf(x, args.strategy, &tol),
            },
        })
        .collect::<igfading::Result<_>>()?;
    let mut table = Table::new(["u", "value"]);
    for (x, v) in grid.iter().zip(&values) {
        table.push_numbers(&[*x, *v]);
    }
    table.emit(args.out.as_deref())
}
