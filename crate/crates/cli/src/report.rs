use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use quadbound_core::bounds::{BoundRecord, CSV_HEADER};
use quadbound_core::verify::CriterionResult;
use serde_json::json;

use crate::config::Format;

fn sink(out: Option<&Path>) -> io::Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(File::create(p)?),
        None => Box::new(io::stdout().lock()),
    })
}

fn csv_error(e: csv::Error) -> io::Error {
    io::Error::other(e)
}

pub fn write_records(records: &[BoundRecord], format: Format, out: Option<&Path>) -> io::Result<()> {
    let mut w = sink(out)?;
    match format {
        Format::Csv => {
            let mut csv = csv::Writer::from_writer(w);
            csv.write_record(CSV_HEADER).map_err(csv_error)?;
            for r in records {
                csv.write_record(r.csv_fields()).map_err(csv_error)?;
            }
            csv.flush()
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut w, records)?;
            writeln!(w)
        }
    }
}

/// Sampled adversary: columns `x` and `f0`.
pub fn write_table(path: &Path, table: &[(f64, f64)]) -> io::Result<()> {
    let mut csv = csv::Writer::from_path(path).map_err(csv_error)?;
    csv.write_record(["x", "f0"]).map_err(csv_error)?;
    for (x, y) in table {
        csv.write_record([format!("{x:e}"), format!("{y:e}")]).map_err(csv_error)?;
    }
    csv.flush()
}

pub fn write_verify(results: &[CriterionResult], format: Format, out: &Path) -> io::Result<()> {
    let mut w = sink(Some(out))?;
    match format {
        Format::Csv => {
            let mut csv = csv::Writer::from_writer(w);
            csv.write_record(["id", "name", "passed", "detail"]).map_err(csv_error)?;
            for r in results {
                csv.write_record([r.id.to_string(), r.name.to_owned(), r.passed.to_string(), r.detail.clone()])
                    .map_err(csv_error)?;
            }
            csv.flush()
        }
        Format::Json => {
            let rows: Vec<_> = results
                .iter()
                .map(|r| json!({"id": r.id, "name": r.name, "passed": r.passed, "detail": r.detail}))
                .collect();
            serde_json::to_writer_pretty(&mut w, &rows)?;
            writeln!(w)
        }
    }
}
