//! Sliding-window local means (Lee's method).

use serde::{Deserialize, Serialize};

use super::trace::Trace;
use crate::error::Result;

/// Domain in which the window average is taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AveragingDomain {
    /// Average received power in mW, then convert back to dB.
    #[default]
    LinearPower,
    /// Average the dB values directly.
    Decibel,
}

/// How windows shrink near the ends of the data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeMode {
    /// Clip the window to the data: `[i - k, i + k] ∩ [0, n)`.
    #[default]
    Truncated,
    /// Shrink the half-width to `min(k, i, n - 1 - i)` so the window stays
    /// centred; linear trends pass through unchanged.
    Symmetric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct WindowOptions {
    pub domain: AveragingDomain,
    pub edges: EdgeMode,
}

/// Half-width in samples of a window `window_m` long at `resolution`
/// samples/m, or `None` when the window is shorter than one sample spacing.
pub fn half_width_samples(window_m: f64, resolution: f64) -> Option<usize> {
    let span = window_m * resolution;
    (span >= 1.0).then(|| (span / 2.0).floor() as usize)
}

/// Centred moving average of loss values (dB) with half-width `k`.
pub fn moving_average(loss_db: &[f64], k: usize, opts: WindowOptions) -> Vec<f64> {
    let n = loss_db.len();
    // loss -> relative received power; the sign keeps the mean a power mean
    let values: Vec<f64> = match opts.domain {
        AveragingDomain::LinearPower => loss_db.iter().map(|l| 10f64.powf(-l / 10.0)).collect(),
        AveragingDomain::Decibel => loss_db.to_vec(),
    };
    let mut prefix = Vec::with_capacity(n + 1);
    prefix.push(0.0);
    let mut acc = 0.0;
    for v in &values {
        acc += v;
        prefix.push(acc);
    }
    (0..n)
        .map(|i| {
            let (lo, hi) = match opts.edges {
                EdgeMode::Truncated => (i.saturating_sub(k), (i + k).min(n - 1)),
                EdgeMode::Symmetric => {
                    let h = k.min(i).min(n - 1 - i);
                    (i - h, i + h)
                }
            };
            let mean = if lo == hi {
                values[i]
            } else {
                (prefix[hi + 1] - prefix[lo]) / (hi - lo + 1) as f64
            };
            match opts.domain {
                AveragingDomain::LinearPower => -10.0 * mean.log10(),
                AveragingDomain::Decibel => mean,
            }
        })
        .collect()
}

/// Local mean of a trace over `window_wavelengths` carrier wavelengths.
///
/// A window shorter than one sample spacing leaves the trace unchanged and
/// logs a warning.
pub fn local_mean(trace: &Trace, window_wavelengths: f64, opts: WindowOptions) -> Result<Trace> {
    let window_m = crate::error::ensure_positive("window", window_wavelengths)? * trace.freq.wavelength_m();
    let Some(k) = half_width_samples(window_m, trace.spatial_resolution) else {
        log::warn!(
            "{window_wavelengths} λ window ({window_m:.4} m) is shorter than one sample spacing; returning input"
        );
        return Ok(trace.clone());
    };
    Ok(trace.with_losses(&moving_average(&trace.losses(), k, opts)))
}
