use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use crate::error::CliResult;

/// 17 significant digits, so every value round-trips.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn csv_writer(path: Option<&Path>) -> CliResult<csv::Writer<Box<dyn Write>>> {
    let sink: Box<dyn Write> = match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    Ok(csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(sink))
}

/// Writes `key=value` metadata next to a CSV file (`<file>.meta`); nothing
/// when the CSV goes to stdout.
pub fn write_metadata(path: Option<&Path>, entries: &[(String, String)]) -> CliResult<()> {
    let Some(p) = path else { return Ok(()) };
    let mut name = p.as_os_str().to_owned();
    name.push(".meta");
    let mut f = BufWriter::new(File::create(name)?);
    for (k, v) in entries {
        writeln!(f, "{k}={v}")?;
    }
    f.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip() {
        for v in [0.1, 1.0 / 3.0, 2.5e-300, -7.0, f64::MAX] {
            assert_eq!(fmt_f64(v).parse::<f64>().unwrap(), v);
        }
        assert_eq!(fmt_f64(0.04), "4.0000000000000001e-2");
    }
}
