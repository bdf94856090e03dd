//! Least-squares fit of the altitude-dependent path-loss model.
//!
//! Per link condition the distance and frequency terms are removed first,
//! `y = PL - b_d log10(d3D) - b_f log10(f_GHz)`, leaving `y = A - n h`.

use serde::{Deserialize, Serialize};

use super::trace::Trace;
use crate::error::{Error, Result};
use crate::geometry::{link_distances, LinkState};
use crate::propagation::PathLossParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InterceptMode {
    /// Fit intercept and altitude factor per condition.
    #[default]
    FreeIntercepts,
    /// Keep the template intercepts and fit the altitude factor only.
    FixedIntercepts,
}

impl std::str::FromStr for InterceptMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "free" | "free_intercepts" => Ok(InterceptMode::FreeIntercepts),
            "fixed" | "fixed_intercepts" => Ok(InterceptMode::FixedIntercepts),
            _ => Err(Error::Domain(format!("unknown intercept mode {s:?} (free|fixed)"))),
        }
    }
}

/// Fit result for one link condition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConditionFit {
    pub state: LinkState,
    pub intercept_db: f64,
    /// Altitude impact factor `n`, dB per meter.
    pub n_db_per_m: f64,
    pub residual_rms_db: f64,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AltitudeFit {
    pub mode: InterceptMode,
    /// Fitted model; a condition without samples keeps the template values.
    pub params: PathLossParams,
    pub los: Option<ConditionFit>,
    pub nlos: Option<ConditionFit>,
    /// RMS residual over all samples.
    pub residual_rms_db: f64,
}

impl AltitudeFit {
    pub fn condition(&self, state: LinkState) -> Option<&ConditionFit> {
        match state {
            LinkState::Los => self.los.as_ref(),
            LinkState::Nlos => self.nlos.as_ref(),
        }
    }
}

/// Fits the altitude model to `trace`, partitioned by geometric LOS state.
pub fn fit_altitude_model(trace: &Trace, mode: InterceptMode, template: &PathLossParams) -> Result<AltitudeFit> {
    let states = trace.link_states()?;
    let f_term = template.freq_coeff * trace.freq.ghz().log10();
    let mut points: [Vec<(f64, f64)>; 2] = [Vec::new(), Vec::new()];
    for (s, state) in trace.samples().iter().zip(&states) {
        let (_, d3d) = link_distances(&trace.scenario, s.altitude_m)?;
        let y = s.loss_db - template.dist_exponent_coeff * d3d.log10() - f_term;
        points[slot(*state)].push((s.altitude_m, y));
    }

    let mut params = PathLossParams {
        name: "fitted".to_owned(),
        ..template.clone()
    };
    let mut fits = [None, None];
    let mut sq_sum = 0.0;
    for state in LinkState::ALL {
        let pts = &points[slot(state)];
        if pts.is_empty() {
            continue;
        }
        let fit = fit_line(pts, state, mode, template.intercept(state))?;
        sq_sum += fit.residual_rms_db.powi(2) * fit.count as f64;
        match state {
            LinkState::Los => {
                params.intercept_los_db = fit.intercept_db;
                params.n_los = fit.n_db_per_m;
            }
            LinkState::Nlos => {
                params.intercept_nlos_db = fit.intercept_db;
                params.n_nlos = fit.n_db_per_m;
            }
        }
        fits[slot(state)] = Some(fit);
    }
    Ok(AltitudeFit {
        mode,
        params,
        los: fits[0],
        nlos: fits[1],
        residual_rms_db: (sq_sum / trace.len() as f64).sqrt(),
    })
}

fn slot(state: LinkState) -> usize {
    match state {
        LinkState::Los => 0,
        LinkState::Nlos => 1,
    }
}

fn fit_line(pts: &[(f64, f64)], state: LinkState, mode: InterceptMode, fixed_intercept: f64) -> Result<ConditionFit> {
    let n = pts.len() as f64;
    let (intercept, slope) = match mode {
        InterceptMode::FreeIntercepts => {
            let h_mean = pts.iter().map(|p| p.0).sum::<f64>() / n;
            let y_mean = pts.iter().map(|p| p.1).sum::<f64>() / n;
            let sxx: f64 = pts.iter().map(|p| (p.0 - h_mean).powi(2)).sum();
            let sxy: f64 = pts.iter().map(|p| (p.0 - h_mean) * (p.1 - y_mean)).sum();
            if !(sxx > 1e-12 * n * h_mean.abs().max(1.0).powi(2)) {
                return Err(Error::Fit(format!(
                    "{state}: altitude regression is rank deficient ({} samples, all at {h_mean} m)",
                    pts.len()
                )));
            }
            let slope = sxy / sxx;
            (y_mean - slope * h_mean, slope)
        }
        InterceptMode::FixedIntercepts => {
            let shh: f64 = pts.iter().map(|p| p.0 * p.0).sum();
            if shh <= 0.0 {
                return Err(Error::Fit(format!("{state}: all samples at zero altitude, slope undefined")));
            }
            let shy: f64 = pts.iter().map(|p| p.0 * (p.1 - fixed_intercept)).sum();
            (fixed_intercept, shy / shh)
        }
    };
    let rss: f64 = pts.iter().map(|p| (p.1 - intercept - slope * p.0).powi(2)).sum();
    Ok(ConditionFit {
        state,
        intercept_db: intercept,
        n_db_per_m: -slope,
        residual_rms_db: (rss / n).sqrt(),
        count: pts.len(),
    })
}
