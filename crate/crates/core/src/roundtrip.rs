//! Synthesize-then-extract helpers and parameter recovery tables.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::extraction::{analyze, AnalysisConfig, FitReport};
use crate::geometry::LinkState;
use crate::stochastic::{FadingDistribution, FadingFamily};
use crate::synthesis::{synthesize_flight, ChannelModel, FlightConfig};

/// One synthetic flight analysed with `analysis`.
pub fn roundtrip(cfg: &FlightConfig, model: &ChannelModel, analysis: &AnalysisConfig) -> Result<FitReport> {
    analyze(&synthesize_flight(cfg, model)?, analysis)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecoveryRow {
    pub parameter: String,
    pub generator: f64,
    /// Mean over all reports that carry the parameter.
    pub recovered: f64,
    /// `|recovered - generator| / |generator|`, or the absolute error when
    /// the generator value is zero.
    pub error: f64,
}

impl RecoveryRow {
    fn new(parameter: String, generator: f64, values: &[f64]) -> Option<Self> {
        if values.is_empty() {
            return None;
        }
        let recovered = values.iter().sum::<f64>() / values.len() as f64;
        let abs = (recovered - generator).abs();
        Some(RecoveryRow {
            parameter,
            generator,
            recovered,
            error: if generator == 0.0 { abs } else { abs / generator.abs() },
        })
    }
}

/// Recovered log-logistic shape of one condition, if it was fitted.
pub fn loglogistic_beta(report: &FitReport, state: LinkState) -> Option<f64> {
    let fit = report.condition(state)?.fast_fading.family(FadingFamily::LogLogistic)?;
    match fit.distribution {
        FadingDistribution::LogLogistic(p) => Some(p.beta),
        _ => None,
    }
}

/// Seed-averaged recovery of every generator parameter.
pub fn recovery_table(model: &ChannelModel, reports: &[FitReport]) -> Vec<RecoveryRow> {
    let mut rows = Vec::new();
    for state in LinkState::ALL {
        let tag = state.as_str();
        let fits: Vec<_> = reports.iter().filter_map(|r| r.pathloss.condition(state)).collect();
        let p = &model.pathloss;
        rows.extend(RecoveryRow::new(
            format!("A_{tag}"),
            p.intercept(state),
            &fits.iter().map(|f| f.intercept_db).collect::<Vec<_>>(),
        ));
        rows.extend(RecoveryRow::new(
            format!("n_{tag}"),
            p.altitude_factor(state),
            &fits.iter().map(|f| f.n_db_per_m).collect::<Vec<_>>(),
        ));
        let conds: Vec<_> = reports.iter().filter_map(|r| r.condition(state)).collect();
        rows.extend(RecoveryRow::new(
            format!("sigma_{tag}"),
            model.shadowing.get(state).sigma_db,
            &conds.iter().map(|c| c.shadowing.params.sigma_db).collect::<Vec<_>>(),
        ));
        if let Some(FadingDistribution::LogLogistic(gen)) = model.fading.get(state) {
            let betas: Vec<f64> = reports.iter().filter_map(|r| loglogistic_beta(r, state)).collect();
            rows.extend(RecoveryRow::new(format!("beta_{tag}"), gen.beta, &betas));
        }
    }
    rows
}

/// How often each family ranked first, per condition, in family order.
pub fn top_family_counts(reports: &[FitReport], state: LinkState) -> Vec<(FadingFamily, usize)> {
    FadingFamily::ALL
        .iter()
        .map(|&f| {
            let n = reports
                .iter()
                .filter_map(|r| r.condition(state))
                .filter(|c| c.fast_fading.ranking.first().map(|r| r.family) == Some(f))
                .count();
            (f, n)
        })
        .collect()
}
