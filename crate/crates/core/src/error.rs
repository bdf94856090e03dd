use thiserror::Error;

/// Errors produced by the channel models, fits and file formats.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The 3GPP UMa LOS formula was evaluated outside `10 m <= d2D <= d_break`
    /// in strict mode.
    #[error("UMa LOS formula not applicable: d2D = {d2d_m:.3} m outside [10, {d_break_m:.3}] m")]
    Applicability { d2d_m: f64, d_break_m: f64 },

    /// A regression or likelihood fit could not produce an estimate.
    #[error("fit error: {0}")]
    Fit(String),

    /// An invalid configuration (flight, scenario, link budget, model preset).
    #[error("config error: {0}")]
    Config(String),

    /// A malformed input file.
    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn ensure_positive(name: &str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(domain(format!("{name} must be finite and > 0, got {value}")))
    }
}
