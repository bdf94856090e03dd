//! End-to-end inverse pipeline: decomposition, per-condition fits and the
//! report that the CLI serializes.

use serde::{Deserialize, Serialize};

use super::decompose::{decompose, Decomposition, DecompositionConfig};
use super::mle::{select_distribution, RankedFit};
use super::regression::AltitudeFit;
use super::trace::Trace;
use crate::error::{domain, Result};
use crate::geometry::{LinkState, ScenarioGeometry};
use crate::stochastic::empirical::{percentile, FadingStats};
use crate::stochastic::{FadingFamily, ShadowingParams};

/// Largest |FF| at which a condition is treated as fading-free.
pub const MIN_FF_SPREAD_DB: f64 = 0.1;

/// Gaussian fit of shadowing samples.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShadowingFit {
    pub params: ShadowingParams,
    pub max_abs_db: f64,
    pub count: usize,
}

/// Sample mean and unbiased standard deviation.
pub fn fit_gaussian(sf_db: &[f64]) -> Result<ShadowingFit> {
    if sf_db.len() < 2 {
        return Err(domain(format!("Gaussian fit needs >= 2 samples, got {}", sf_db.len())));
    }
    let n = sf_db.len() as f64;
    let mean = sf_db.iter().sum::<f64>() / n;
    let var = sf_db.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    Ok(ShadowingFit {
        params: ShadowingParams::new(mean, var.sqrt())?,
        max_abs_db: sf_db.iter().fold(0.0, |m, x| m.max(x.abs())),
        count: sf_db.len(),
    })
}

/// Linear envelope `10^(-FF/20)` of loss-domain FF samples, scaled to unit
/// median.
pub fn normalized_envelope(ff_db: &[f64]) -> Result<(Vec<f64>, f64)> {
    let env: Vec<f64> = ff_db.iter().map(|v| 10f64.powf(-v / 20.0)).collect();
    let median = percentile(&env, 0.5)?;
    Ok((env.iter().map(|e| e / median).collect(), median))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct AnalysisConfig {
    pub decomposition: DecompositionConfig,
    pub families: Vec<FadingFamily>,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            decomposition: DecompositionConfig::default(),
            families: FadingFamily::ALL.to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FastFadingReport {
    /// Percentiles of the received-power fading `-FF`, so fades are negative.
    pub stats: FadingStats,
    /// Median of the raw envelope; fitted samples are divided by it.
    pub envelope_median: f64,
    /// Best first. Empty when |FF| stays below [`MIN_FF_SPREAD_DB`].
    pub ranking: Vec<RankedFit>,
}

impl FastFadingReport {
    /// Top-ranked family; `None` when no fading was detected.
    pub fn best(&self) -> Option<&RankedFit> {
        self.ranking.first()
    }

    pub fn family(&self, family: FadingFamily) -> Option<&RankedFit> {
        self.ranking.iter().find(|r| r.family == family)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub state: LinkState,
    pub sample_count: usize,
    pub shadowing: ShadowingFit,
    pub fast_fading: FastFadingReport,
}

/// Per-sample series kept for plotting.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Curves {
    pub altitude_m: Vec<f64>,
    pub states: Vec<LinkState>,
    pub loss_db: Vec<f64>,
    pub large_scale_db: Vec<f64>,
    pub pl0_db: Vec<f64>,
    pub sf_db: Vec<f64>,
    pub ff_db: Vec<f64>,
}

impl Curves {
    fn from_decomposition(d: &Decomposition) -> Self {
        Curves {
            altitude_m: d.altitude_m.clone(),
            states: d.states.clone(),
            loss_db: d.loss_db.clone(),
            large_scale_db: d.large_scale_db.clone(),
            pl0_db: d.pl0_db.clone(),
            sf_db: d.sf_db.clone(),
            ff_db: d.ff_db.clone(),
        }
    }

    pub fn select(&self, field: &[f64], state: LinkState) -> Vec<f64> {
        field
            .iter()
            .zip(&self.states)
            .filter(|(_, s)| **s == state)
            .map(|(v, _)| *v)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitReport {
    pub scenario: ScenarioGeometry,
    pub frequency_hz: f64,
    pub spatial_resolution: f64,
    pub sample_count: usize,
    pub pathloss: AltitudeFit,
    pub conditions: Vec<ConditionReport>,
    #[serde(default)]
    pub curves: Curves,
}

impl FitReport {
    pub fn condition(&self, state: LinkState) -> Option<&ConditionReport> {
        self.conditions.iter().find(|c| c.state == state)
    }
}

/// Runs the full inverse pipeline on `trace`.
pub fn analyze(trace: &Trace, cfg: &AnalysisConfig) -> Result<FitReport> {
    let d = decompose(trace, &cfg.decomposition)?;
    let mut conditions = Vec::new();
    for state in LinkState::ALL {
        let count = d.count(state);
        if count == 0 {
            continue;
        }
        let shadowing = fit_gaussian(&d.select(&d.sf_db, state))?;
        let ff = d.select(&d.ff_db, state);
        let gain: Vec<f64> = ff.iter().map(|v| -v).collect();
        let stats = FadingStats::from_db(&gain)?;
        let (env, envelope_median) = normalized_envelope(&ff)?;
        let ranking = if stats.max_abs_db < MIN_FF_SPREAD_DB {
            log::warn!("{state}: no fast fading detected, skipping distribution fits");
            Vec::new()
        } else {
            select_distribution(&env, &cfg.families)?
        };
        log::info!(
            "{state}: {count} samples, sigma {:.2} dB, best FF fit {:?}",
            shadowing.params.sigma_db,
            ranking.first().map(|r| r.family)
        );
        conditions.push(ConditionReport {
            state,
            sample_count: count,
            shadowing,
            fast_fading: FastFadingReport {
                stats,
                envelope_median,
                ranking,
            },
        });
    }
    Ok(FitReport {
        scenario: trace.scenario,
        frequency_hz: trace.freq.hz(),
        spatial_resolution: trace.spatial_resolution,
        sample_count: trace.len(),
        pathloss: d.fit.clone(),
        conditions,
        curves: Curves::from_decomposition(&d),
    })
}
