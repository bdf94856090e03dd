use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::extraction::FitReport;

pub const TOOL_NAME: &str = "agchannel";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub tool: String,
    pub version: String,
    /// SHA-256 of the configuration text that produced the report.
    pub config_sha256: String,
    /// SHA-256 of the trace CSV that was analysed.
    pub trace_sha256: String,
    pub seed: Option<u64>,
}

impl Provenance {
    pub fn new(config_text: &str, trace_bytes: &[u8], seed: Option<u64>) -> Self {
        Provenance {
            tool: TOOL_NAME.into(),
            version: TOOL_VERSION.into(),
            config_sha256: sha256_hex(config_text.as_bytes()),
            trace_sha256: sha256_hex(trace_bytes),
            seed,
        }
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Serialized analysis result.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub provenance: Provenance,
    pub report: FitReport,
}

impl ReportDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("report: {e}")))
    }
}
