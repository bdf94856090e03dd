//! Forward synthesis of vertical-flight traces.
//!
//! Each stored sample is `PL0 + SF + FF`, with `SF` a Gaussian process that
//! decorrelates over the shadowing distance and `FF = -20 log10(envelope)`
//! with the envelope drawn from the fading law through a Gaussian copula
//! that decorrelates over the fading distance. Every stored sample
//! power-averages `averaging_factor` draws at positions spread over its
//! altitude bin, and every pass of the flight is power-averaged per bin.
//! Passes share the environment (both fields) but sample it at jittered
//! positions.

mod budget;
mod config;
mod field;
mod model;

pub use budget::{received_power, LinkBudget, ReceivedSample};
pub use config::FlightConfig;
pub use model::{ChannelModel, PerCondition, DEFAULT_SIGMA_LOS_DB, DEFAULT_SIGMA_NLOS_DB};

use rand::distr::Uniform;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::extraction::{Trace, TraceSample};
use crate::geometry::LinkState;
use crate::propagation::pl_altitude_model;
use crate::stochastic::special::normal_cdf_pair;
use field::AnchorField;

/// `-10 log10(mean(10^(-x/10)))`, exact when all values are equal.
fn power_mean_db(values: &[f64]) -> f64 {
    let x0 = values[0];
    let mean = values.iter().map(|x| 10f64.powf(-(x - x0) / 10.0)).sum::<f64>() / values.len() as f64;
    x0 - 10.0 * mean.log10()
}

pub fn synthesize_flight(cfg: &FlightConfig, model: &ChannelModel) -> Result<Trace> {
    cfg.validate()?;
    model.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let lambda = cfg.freq.wavelength_m();
    let (lo, hi) = cfg.altitude_range_m;
    let shadowing = AnchorField::new(&mut rng, lo, hi, model.shadowing_decorrelation_wavelengths * lambda);
    let fading = AnchorField::new(&mut rng, lo, hi, model.fading_decorrelation_wavelengths * lambda);

    let altitudes = cfg.altitudes();
    let f_ghz = cfg.freq.ghz();
    let per_bin = altitudes
        .iter()
        .map(|&h| {
            let link = cfg.scenario.link(h)?;
            let pl0 = pl_altitude_model(link.d3d_m, f_ghz, h, link.los, &model.pathloss)?;
            Ok((pl0, link.los))
        })
        .collect::<Result<Vec<(f64, LinkState)>>>()?;

    let a = cfg.averaging_factor as usize;
    let bin = 1.0 / cfg.spatial_resolution;
    let passes = 2 * cfg.round_trips as usize;
    let jitter = Uniform::new(-0.5, 0.5).expect("valid range");
    let mut pass_values = vec![Vec::with_capacity(passes); altitudes.len()];
    let mut draws = vec![0.0; a];
    for _ in 0..passes {
        let offset = rng.sample(jitter) / a as f64;
        for (i, (&h, &(pl0, state))) in altitudes.iter().zip(&per_bin).enumerate() {
            let sh = model.shadowing.get(state);
            let ff = model.fading.get(state);
            for (j, d) in draws.iter_mut().enumerate() {
                let x = h + bin * ((j as f64 + 0.5 + offset) / a as f64 - 0.5);
                let mut loss = pl0 + sh.mean_db + sh.sigma_db * shadowing.value(x);
                if let Some(dist) = ff {
                    let (u, v) = normal_cdf_pair(fading.value(x));
                    loss -= 20.0 * dist.quantile_pair(u, v)?.log10();
                }
                *d = loss;
            }
            pass_values[i].push(power_mean_db(&draws));
        }
    }

    let samples = altitudes
        .iter()
        .zip(&pass_values)
        .map(|(&altitude_m, v)| TraceSample {
            altitude_m,
            loss_db: power_mean_db(v),
        })
        .collect();
    Trace::new(samples, cfg.freq, cfg.spatial_resolution, cfg.scenario)
}
