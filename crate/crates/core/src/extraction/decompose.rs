//! Split a trace into path loss, shadowing and fast fading.
//!
//! `trace = PL0 + SF + FF + residual` holds at every sample (all in loss
//! terms, so a fade is a positive FF), with
//! `L` the large-scale local mean, `S` the small-scale local mean,
//! `SF = L - PL0`, `FF = S - L` and `residual = trace - S`.
//!
//! `PL0` is fitted on the trace itself and `L` is `PL0` plus the windowed
//! mean of the detrended trace, so shrinking edge windows do not pick up the
//! path-loss slope. Windows never straddle a LOS/NLOS change.

use serde::{Deserialize, Serialize};

use super::regression::{fit_altitude_model, AltitudeFit, InterceptMode};
use super::trace::Trace;
use super::window::{half_width_samples, moving_average, AveragingDomain, EdgeMode, WindowOptions};
use crate::error::{Error, Result};
use crate::geometry::{link_distances, LinkState};
use crate::propagation::{pl_altitude_model, PathLossParams};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct DecompositionConfig {
    /// Large-scale window in carrier wavelengths.
    pub large_scale_wavelengths: f64,
    pub large_scale: WindowOptions,
    /// Small-scale window in carrier wavelengths.
    pub small_scale_wavelengths: f64,
    pub small_scale: WindowOptions,
    pub mode: InterceptMode,
    /// Fixed intercepts and coefficient values for the path-loss fit.
    pub template: PathLossParams,
}

impl Default for DecompositionConfig {
    fn default() -> Self {
        DecompositionConfig {
            large_scale_wavelengths: 40.0,
            // dB-domain so heavy-tailed fading does not leak into the trend
            large_scale: WindowOptions {
                domain: AveragingDomain::Decibel,
                edges: EdgeMode::Truncated,
            },
            small_scale_wavelengths: 0.5,
            small_scale: WindowOptions {
                domain: AveragingDomain::LinearPower,
                edges: EdgeMode::Truncated,
            },
            mode: InterceptMode::FreeIntercepts,
            template: PathLossParams::default(),
        }
    }
}

impl DecompositionConfig {
    pub fn validate(&self) -> Result<()> {
        for (name, w) in [
            ("large-scale window", self.large_scale_wavelengths),
            ("small-scale window", self.small_scale_wavelengths),
        ] {
            crate::error::ensure_positive(name, w)?;
        }
        if self.small_scale_wavelengths > self.large_scale_wavelengths {
            return Err(Error::Config("small-scale window exceeds the large-scale window".into()));
        }
        self.template.validate()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Decomposition {
    pub altitude_m: Vec<f64>,
    pub states: Vec<LinkState>,
    pub loss_db: Vec<f64>,
    /// Large-scale local mean `L`.
    pub large_scale_db: Vec<f64>,
    /// Small-scale local mean `S`.
    pub small_scale_db: Vec<f64>,
    pub pl0_db: Vec<f64>,
    pub sf_db: Vec<f64>,
    pub ff_db: Vec<f64>,
    pub residual_db: Vec<f64>,
    pub fit: AltitudeFit,
}

impl Decomposition {
    pub fn len(&self) -> usize {
        self.altitude_m.len()
    }

    pub fn is_empty(&self) -> bool {
        self.altitude_m.is_empty()
    }

    /// Values of `field` restricted to one link condition.
    pub fn select(&self, field: &[f64], state: LinkState) -> Vec<f64> {
        field
            .iter()
            .zip(&self.states)
            .filter(|(_, s)| **s == state)
            .map(|(v, _)| *v)
            .collect()
    }

    pub fn count(&self, state: LinkState) -> usize {
        self.states.iter().filter(|s| **s == state).count()
    }
}

/// Smooths each run of equal link state separately so the LOS edge does not
/// mix the two conditions.
fn smooth_by_state(loss: &[f64], states: &[LinkState], k: Option<usize>, opts: WindowOptions) -> Vec<f64> {
    let Some(k) = k else {
        return loss.to_vec();
    };
    let mut out = Vec::with_capacity(loss.len());
    let mut start = 0;
    while start < loss.len() {
        let end = start + states[start..].iter().take_while(|s| **s == states[start]).count();
        out.extend(moving_average(&loss[start..end], k, opts));
        start = end;
    }
    out
}

pub fn decompose(trace: &Trace, cfg: &DecompositionConfig) -> Result<Decomposition> {
    cfg.validate()?;
    let states = trace.link_states()?;
    let loss = trace.losses();
    let lambda = trace.freq.wavelength_m();
    let k_large = half_width_samples(cfg.large_scale_wavelengths * lambda, trace.spatial_resolution);
    let k_small = half_width_samples(cfg.small_scale_wavelengths * lambda, trace.spatial_resolution);
    if k_small.is_none() {
        log::warn!("small-scale window is shorter than one sample spacing; FF will be zero");
    }
    let small = smooth_by_state(&loss, &states, k_small, cfg.small_scale);

    let fit = fit_altitude_model(trace, cfg.mode, &cfg.template)?;
    let f_ghz = trace.freq.ghz();
    let altitude_m: Vec<f64> = trace.altitudes().collect();
    let pl0 = altitude_m
        .iter()
        .zip(&states)
        .map(|(&h, &s)| {
            let (_, d3d) = link_distances(&trace.scenario, h)?;
            pl_altitude_model(d3d, f_ghz, h, s, &fit.params)
        })
        .collect::<Result<Vec<f64>>>()?;

    let detrended: Vec<f64> = loss.iter().zip(&pl0).map(|(x, p)| x - p).collect();
    let sf = smooth_by_state(&detrended, &states, k_large, cfg.large_scale);
    let large: Vec<f64> = pl0.iter().zip(&sf).map(|(p, s)| p + s).collect();

    let diff = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x - y).collect::<Vec<f64>>();
    Ok(Decomposition {
        sf_db: sf,
        ff_db: diff(&small, &large),
        residual_db: diff(&loss, &small),
        altitude_m,
        states,
        loss_db: loss,
        large_scale_db: large,
        small_scale_db: small,
        pl0_db: pl0,
        fit,
    })
}
