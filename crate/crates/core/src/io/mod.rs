//! File formats: trace CSV, JSON report with provenance, plot data.

mod plotdata;
mod report;
mod trace_csv;

pub use plotdata::{plot_data, PlotKind};
pub use report::{sha256_hex, Provenance, ReportDocument, TOOL_NAME, TOOL_VERSION};
pub use trace_csv::{read_trace_csv, write_trace_csv, TRACE_HEADER};
