use crate::error::{CliError, CliResult};

/// Inclusive `start:step:stop` grid.
pub fn parse_grid(text: &str) -> CliResult<Vec<f64>> {
    let bad = |why: &str| CliError::Input(format!("grid `{text}`: {why}"));
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(bad("expected start:step:stop"));
    }
    let mut v = [0.0f64; 3];
    for (slot, part) in v.iter_mut().zip(&parts) {
        *slot = part.trim().parse().map_err(|_| bad(&format!("`{part}` is not a number")))?;
        if !slot.is_finite() {
            return Err(bad("values must be finite"));
        }
    }
    let [start, step, stop] = v;
    if !(step > 0.0) {
        return Err(bad("step must be positive"));
    }
    if stop < start {
        return Err(bad("stop precedes start"));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    if count > 10_000_000 {
        return Err(bad("more than 10⁷ points"));
    }
    Ok((0..count).map(|i| start + i as f64 * step).collect())
}
