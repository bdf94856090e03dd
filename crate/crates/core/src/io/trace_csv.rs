use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::extraction::{Trace, TraceSample};
use crate::geometry::ScenarioGeometry;
use crate::propagation::Frequency;

pub const TRACE_HEADER: [&str; 2] = ["altitude_m", "loss_db"];

fn csv_error(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::Parse(format!("{other:?}")),
    }
}

/// Writes `altitude_m,loss_db` rows at 6 decimals.
pub fn write_trace_csv<W: Write>(trace: &Trace, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(TRACE_HEADER).map_err(csv_error)?;
    for s in trace.samples() {
        w.write_record([format!("{:.6}", s.altitude_m), format!("{:.6}", s.loss_db)])
            .map_err(csv_error)?;
    }
    w.flush()?;
    Ok(())
}

/// Reads a trace CSV; the metadata the file does not carry is supplied.
pub fn read_trace_csv<R: Read>(
    input: R,
    freq: Frequency,
    spatial_resolution: f64,
    scenario: ScenarioGeometry,
) -> Result<Trace> {
    let mut r = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(input);
    let headers = r.headers().map_err(csv_error)?.clone();
    if headers.iter().collect::<Vec<_>>() != TRACE_HEADER {
        return Err(Error::Parse(format!(
            "expected header {:?}, got {:?}",
            TRACE_HEADER.join(","),
            headers.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut samples = Vec::new();
    for (line, rec) in r.records().enumerate() {
        let rec = rec.map_err(csv_error)?;
        let field = |i: usize| -> Result<f64> {
            rec.get(i)
                .ok_or_else(|| Error::Parse(format!("row {}: missing column {}", line + 2, TRACE_HEADER[i])))?
                .parse::<f64>()
                .map_err(|e| Error::Parse(format!("row {}: {}: {e}", line + 2, TRACE_HEADER[i])))
        };
        samples.push(TraceSample {
            altitude_m: field(0)?,
            loss_db: field(1)?,
        });
    }
    Trace::new(samples, freq, spatial_resolution, scenario).map_err(|e| match e {
        Error::Domain(m) => Error::Parse(m),
        other => other,
    })
}
