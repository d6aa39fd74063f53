//! CSV output with twelve significant digits.

use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use crate::error::{CliError, CliResult};

const DIGITS: usize = 12;

/// `%.12g`: shortest of fixed and scientific notation, trailing zeros removed.
pub fn fmt_g(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{:.*e}", DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= DIGITS as i32 {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim(mantissa), exp.abs())
    } else {
        let decimals = (DIGITS as i32 - 1 - exp).max(0) as usize;
        trim(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// A rectangular table written in one go, so failures never leave partial files.
pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Table {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn push_numbers(&mut self, row: &[f64]) {
        self.push(row.iter().map(|&v| fmt_g(v)).collect());
    }

    fn write_to<W: Write>(&self, sink: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(sink);
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row)?;
        }
        w.flush()?;
        Ok(())
    }

    /// Writes to `path`, or to standard output when `path` is absent or `-`.
    pub fn emit(&self, path: Option<&Path>) -> CliResult<()> {
        match path {
            Some(p) if p != Path::new("-") => {
                let file = File::create(p).map_err(|e| CliError::Output(format!("{}: {e}", p.display())))?;
                if let Err(e) = self.write_to(io::BufWriter::new(file)) {
                    let _ = std::fs::remove_file(p);
                    return Err(CliError::Output(format!("{}: {e}", p.display())));
                }
                Ok(())
            }
            _ => self.write_to(io::stdout().lock()).map_err(|e| CliError::Output(e.to_string())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_printf_g() {
        let cases = [
            (0.25, "0.25"),
            (1.0, "1"),
            (-3.5, "-3.5"),
            (1.0 / 3.0, "0.333333333333"),
            (123456789012.0, "123456789012"),
            (1234567890123.0, "1.23456789012e+12"),
            (1e-4, "0.0001"),
            (1.5e-5, "1.5e-05"),
            (2.0f64.sqrt() * 1e-200, "1.41421356237e-200"),
            (0.0, "0"),
        ];
        for (x, want) in cases {
            assert_eq!(fmt_g(x), want, "{x}");
        }
    }

    #[test]
    fn round_trips_to_twelve_digits() {
        for x in [0.1234567890123456, 98765.4321012345, 7.7e-9, 3.3e17] {
            let back: f64 = fmt_g(x).parse().unwrap();
            assert!((back - x).abs() <= 5e-12 * x.abs(), "{x} {back}");
        }
    }
}
