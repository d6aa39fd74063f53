use igfading::Tolerance;

use crate::config::load_fading;
use crate::error::CliResult;
use crate::output::Table;
use crate::GmgfArgs;

pub fn run(args: &GmgfArgs) -> CliResult<()> {
    let model = load_fading(&args.fading)?;
    let tol = Tolerance::default();
    let value = model.gmgf(args.p, args.s, &tol)?;
    let mut header = vec!["p", "s", "value"];
    let mut row = vec![args.p, args.s, value];
    if args.check {
        let numeric = model.gmgf_numeric(args.p, args.s, &tol)?;
        header.extend(["numeric", "rel_diff"]);
        row.extend([numeric, (value - numeric).abs() / numeric.abs()]);
    }
    let mut table = Table::new(header);
    table.push_numbers(&row);
    table.emit(None)
}
