use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::geometry::{LinkState, ScenarioGeometry};
use crate::propagation::Frequency;

/// One stored measurement point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceSample {
    pub altitude_m: f64,
    pub loss_db: f64,
}

/// Propagation-loss samples of a vertical flight at fixed spatial resolution.
#[derive(Debug, Clone, PartialEq)]
pub struct Trace {
    samples: Vec<TraceSample>,
    pub freq: Frequency,
    /// Stored samples per meter of altitude.
    pub spatial_resolution: f64,
    pub scenario: ScenarioGeometry,
}

impl Trace {
    /// Builds a trace, sorting samples by altitude (stable for ties).
    pub fn new(
        mut samples: Vec<TraceSample>,
        freq: Frequency,
        spatial_resolution: f64,
        scenario: ScenarioGeometry,
    ) -> Result<Self> {
        if samples.len() < 2 {
            return Err(domain(format!("a trace needs >= 2 samples, got {}", samples.len())));
        }
        if !(spatial_resolution.is_finite() && spatial_resolution > 0.0) {
            return Err(domain(format!("spatial resolution must be > 0, got {spatial_resolution}")));
        }
        if let Some(bad) = samples
            .iter()
            .find(|s| !(s.altitude_m.is_finite() && s.altitude_m >= 0.0 && s.loss_db.is_finite()))
        {
            return Err(domain(format!("invalid trace sample {bad:?}")));
        }
        scenario.validate()?;
        samples.sort_by(|a, b| a.altitude_m.total_cmp(&b.altitude_m));
        Ok(Trace {
            samples,
            freq,
            spatial_resolution,
            scenario,
        })
    }

    pub fn samples(&self) -> &[TraceSample] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn altitudes(&self) -> impl Iterator<Item = f64> + '_ {
        self.samples.iter().map(|s| s.altitude_m)
    }

    pub fn losses(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.loss_db).collect()
    }

    /// Same metadata and altitudes, new loss values.
    pub fn with_losses(&self, losses: &[f64]) -> Trace {
        assert_eq!(losses.len(), self.samples.len());
        let samples = self
            .samples
            .iter()
            .zip(losses)
            .map(|(s, &loss_db)| TraceSample { loss_db, ..*s })
            .collect();
        Trace { samples, ..self.clone() }
    }

    /// Geometric LOS state of every sample.
    pub fn link_states(&self) -> Result<Vec<LinkState>> {
        self.samples
            .iter()
            .map(|s| crate::geometry::los_state(&self.scenario, s.altitude_m))
            .collect()
    }
}
