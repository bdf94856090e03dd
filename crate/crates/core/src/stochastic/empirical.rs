//! Empirical percentiles, fading depth and goodness-of-fit helpers.
//!
//! Percentiles use linear interpolation between order statistics: for `n`
//! sorted samples the `p`-quantile sits at fractional rank `(n - 1) p`.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// Below this many samples the 1 % percentile rests on one or two order
/// statistics.
pub const MIN_DEPTH_SAMPLES: usize = 200;

/// Sorted copy of `samples`; rejects empty input and NaN.
pub fn sorted(samples: &[f64]) -> Result<Vec<f64>> {
    if samples.is_empty() {
        return Err(domain("empty sample set"));
    }
    if samples.iter().any(|v| v.is_nan()) {
        return Err(domain("sample set contains NaN"));
    }
    let mut v = samples.to_vec();
    v.sort_by(f64::total_cmp);
    Ok(v)
}

/// `p`-quantile (`p` in `[0, 1]`) of already sorted data.
pub fn percentile_sorted(sorted: &[f64], p: f64) -> f64 {
    assert!(!sorted.is_empty(), "percentile of empty data");
    let rank = (sorted.len() - 1) as f64 * p.clamp(0.0, 1.0);
    let lo = rank.floor() as usize;
    let hi = rank.ceil() as usize;
    let frac = rank - lo as f64;
    sorted[lo] + frac * (sorted[hi] - sorted[lo])
}

pub fn percentile(samples: &[f64], p: f64) -> Result<f64> {
    Ok(percentile_sorted(&sorted(samples)?, p))
}

/// `L50 - L1` of fast-fading samples in dB.
pub fn fading_depth(ff_db: &[f64]) -> Result<f64> {
    Ok(FadingStats::from_db(ff_db)?.fading_depth_db)
}

/// Percentile summary of fast-fading samples in dB.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FadingStats {
    pub count: usize,
    pub p1_db: f64,
    pub p50_db: f64,
    pub fading_depth_db: f64,
    /// Most negative sample (deepest fade).
    pub min_db: f64,
    /// Most positive sample.
    pub max_db: f64,
    pub max_abs_db: f64,
}

impl FadingStats {
    pub fn from_db(ff_db: &[f64]) -> Result<Self> {
        let s = sorted(ff_db)?;
        if s.len() < MIN_DEPTH_SAMPLES {
            log::warn!(
                "fading depth from {} samples; the 1% level is poorly resolved below {MIN_DEPTH_SAMPLES}",
                s.len()
            );
        }
        let p1 = percentile_sorted(&s, 0.01);
        let p50 = percentile_sorted(&s, 0.50);
        let (min, max) = (s[0], s[s.len() - 1]);
        Ok(FadingStats {
            count: s.len(),
            p1_db: p1,
            p50_db: p50,
            fading_depth_db: p50 - p1,
            min_db: min,
            max_db: max,
            max_abs_db: min.abs().max(max.abs()),
        })
    }
}

/// Fraction of sorted samples `<= x`.
pub fn ecdf_sorted(sorted: &[f64], x: f64) -> f64 {
    sorted.partition_point(|&v| v <= x) as f64 / sorted.len() as f64
}

/// Two-sided Kolmogorov-Smirnov statistic of sorted samples against `cdf`.
pub fn ks_statistic(sorted: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let n = sorted.len() as f64;
    sorted
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).max((i + 1) as f64 / n - f)
        })
        .fold(0.0, f64::max)
}

/// Asymptotic KS critical value `sqrt(-ln(a/2)/2) / sqrt(n)`.
pub fn ks_critical_value(n: usize, significance: f64) -> f64 {
    (-(significance / 2.0).ln() / 2.0).sqrt() / (n as f64).sqrt()
}

/// Density histogram over equal-width bins spanning `[lo, hi]`; returns bin
/// centres and densities. Samples outside the range count toward the total
/// but land in no bin.
pub fn histogram_density(samples: &[f64], lo: f64, hi: f64, bins: usize) -> Vec<(f64, f64)> {
    let width = (hi - lo) / bins as f64;
    let mut counts = vec![0usize; bins];
    for &x in samples {
        if x >= lo && x <= hi {
            let i = (((x - lo) / width) as usize).min(bins - 1);
            counts[i] += 1;
        }
    }
    let norm = samples.len() as f64 * width;
    counts
        .iter()
        .enumerate()
        .map(|(i, &c)| (lo + (i as f64 + 0.5) * width, c as f64 / norm))
        .collect()
}
