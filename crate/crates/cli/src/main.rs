//! `igfading`: curves, outage tables, shadowing fits and Monte Carlo checks
//! for inverse-gamma composite fading models.
//!
//! Exit status: 0 success, 1 output failure, 2 invalid configuration or
//! input, 3 numerical non-convergence, 4 every fit failed, 5 simulation
//! disagreed with the analytic distribution.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use igfading::{DbDirection, ShadowingFamily, Strategy};

mod config;
mod error;
mod eval;
mod fit;
mod gmgf;
mod grid;
mod outage;
mod output;
mod simulate;

const CONFIG_HELP: &str = "Model as inline JSON or a path to a JSON file, e.g. \
{\"shadowing\":{\"m\":2},\"fading\":{\"type\":\"twdp\",\"k\":4,\"delta\":0.9},\"mean_power\":1}. \
Fading types: rayleigh, rician (k), nakagami (m), hoyt (q), kappa-mu (kappa, mu), eta-mu (eta, mu), \
kappa-mu-shadowed (kappa, mu, m), twdp (k, delta)";

#[derive(Parser)]
#[command(name = "igfading", version, about = "Inverse-gamma composite fading models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate a composite density or distribution function on a grid.
    Eval(EvalArgs),
    /// Tabulate outage probability against a threshold grid in dB.
    Outage(OutageArgs),
    /// Fit shadowing families to measured data and rank them by Cramér-von Mises distance.
    Fit(FitArgs),
    /// Draw composite samples and optionally check them against the analytic distribution.
    Simulate(SimulateArgs),
    /// Evaluate the generalized moment generating function E[X^p e^{sX}] of a fading model.
    Gmgf(GmgfArgs),
}

fn strategy(s: &str) -> Result<Strategy, igfading::Error> {
    s.parse()
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Quantity {
    /// Density of the power W.
    Pdf,
    /// Distribution function of the power W.
    Cdf,
    /// Density of the amplitude √W.
    AmpPdf,
    /// Distribution function of the amplitude √W.
    AmpCdf,
}

#[derive(Args)]
pub struct EvalArgs {
    #[arg(long, help = CONFIG_HELP)]
    config: String,
    #[arg(long, value_enum)]
    quantity: Quantity,
    /// Abscissae as start:step:stop, stop included.
    #[arg(long, allow_hyphen_values = true)]
    grid: String,
    /// auto, gmgf-general, gmgf-integer, mixture or numeric.
    #[arg(long, default_value = "auto", value_parser = strategy)]
    strategy: Strategy,
    /// Keep only the first N mixture terms (mixture strategy).
    #[arg(long, value_name = "N")]
    terms: Option<usize>,
    /// Output CSV; standard output when omitted.
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args)]
pub struct OutageArgs {
    #[arg(long, help = CONFIG_HELP)]
    config: String,
    /// Thresholds γ_th/γ̄ in dB as start:step:stop.
    #[arg(long, allow_hyphen_values = true)]
    grid: String,
    /// Add the high-SNR asymptote column.
    #[arg(long)]
    asymptotic: bool,
    #[arg(long, default_value = "auto", value_parser = strategy)]
    strategy: Strategy,
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Scale {
    /// Decibels, converted with --db-direction.
    Db,
    /// Natural logarithm already.
    Ln,
    /// Linear values; their natural log is taken.
    Linear,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DbDirectionArg {
    /// t = 20 t_dB / ln 10.
    #[value(alias = "paper")]
    Literal,
    /// t = t_dB ln 10 / 20.
    Conventional,
}

impl From<DbDirectionArg> for DbDirection {
    fn from(d: DbDirectionArg) -> Self {
        match d {
            DbDirectionArg::Literal => DbDirection::Literal,
            DbDirectionArg::Conventional => DbDirection::Conventional,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Lognormal,
    Gamma,
    InverseGaussian,
    InverseGamma,
}

impl From<FamilyArg> for ShadowingFamily {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Lognormal => ShadowingFamily::Lognormal,
            FamilyArg::Gamma => ShadowingFamily::Gamma,
            FamilyArg::InverseGaussian => ShadowingFamily::InverseGaussian,
            FamilyArg::InverseGamma => ShadowingFamily::InverseGamma,
        }
    }
}

#[derive(Args)]
pub struct FitArgs {
    /// CSV with a `value` column of raw samples or `t,cdf` columns of an empirical CDF.
    input: PathBuf,
    #[arg(long, value_enum)]
    scale: Scale,
    #[arg(long, value_enum, default_value = "literal")]
    db_direction: DbDirectionArg,
    /// Comma-separated families to fit.
    #[arg(
        long,
        value_enum,
        value_delimiter = ',',
        default_value = "lognormal,gamma,inverse-gaussian,inverse-gamma"
    )]
    families: Vec<FamilyArg>,
    /// Also fit the inverse gamma with an integer shape.
    #[arg(long)]
    integer_m: bool,
    /// Simplex restarts per family.
    #[arg(long, default_value_t = 8)]
    multistart: usize,
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args)]
pub struct SimulateArgs {
    #[arg(long, help = CONFIG_HELP)]
    config: String,
    #[arg(long, default_value_t = 1_000_000)]
    count: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Write the samples as CSV; `-` for standard output.
    #[arg(long, value_name = "PATH")]
    emit_samples: Option<PathBuf>,
    /// Compare the empirical CDF with the analytic one; exit 5 when the sup
    /// distance reaches 0.003·√(10⁶/count).
    #[arg(long)]
    validate: bool,
    #[arg(long, default_value = "auto", value_parser = strategy)]
    strategy: Strategy,
}

#[derive(Args)]
pub struct GmgfArgs {
    /// Fading model as inline JSON or a file path, e.g. {"type":"twdp","k":4,"delta":0.9,"omega":1}.
    #[arg(long)]
    fading: String,
    /// Order p ≥ 0.
    #[arg(long, short)]
    p: f64,
    /// Argument s ≤ 0.
    #[arg(long, short, allow_negative_numbers = true)]
    s: f64,
    /// Also integrate x^p e^{sx} f(x) numerically and report the relative difference.
    #[arg(long)]
    check: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Eval(a) => eval::run(a),
        Command::Outage(a) => outage::run(a),
        Command::Fit(a) => fit::run(a),
        Command::Simulate(a) => simulate::run(a),
        Command::Gmgf(a) => gmgf::run(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("igfading: {e}");
            e.exit_code()
        }
    }
}
