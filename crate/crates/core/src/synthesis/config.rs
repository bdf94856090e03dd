use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::ScenarioGeometry;
use crate::propagation::Frequency;

/// One vertical measurement flight.
///
/// ```toml
/// frequency_hz = 4.0e9
/// altitude_range_m = [0.0, 24.0]
/// spatial_resolution = 62.5
/// averaging_factor = 20
/// round_trips = 1
/// seed = 7
///
/// [scenario]
/// horizontal_distance_m = 350.0
/// gs_height_m = 25.0
/// blocker_distance_m = 100.0
/// blocker_height_m = 15.0
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FlightConfig {
    pub scenario: ScenarioGeometry,
    #[serde(rename = "frequency_hz")]
    pub freq: Frequency,
    pub altitude_range_m: (f64, f64),
    /// Stored samples per meter.
    pub spatial_resolution: f64,
    /// Collected draws averaged into each stored sample.
    pub averaging_factor: u32,
    /// Each round trip is one ascent and one descent.
    pub round_trips: u32,
    pub seed: u64,
}

impl Default for FlightConfig {
    fn default() -> Self {
        FlightConfig {
            scenario: ScenarioGeometry::CAMPUS,
            freq: Frequency::from_hz(4e9).expect("positive"),
            altitude_range_m: (0.0, 24.0),
            spatial_resolution: 62.5,
            averaging_factor: 20,
            round_trips: 1,
            seed: 0,
        }
    }
}

impl FlightConfig {
    pub fn with_frequency(freq: Frequency, seed: u64) -> Self {
        FlightConfig {
            freq,
            seed,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let (lo, hi) = self.altitude_range_m;
        if !(lo.is_finite() && hi.is_finite() && lo >= 0.0 && lo < hi) {
            return Err(Error::Config(format!("altitude range must satisfy 0 <= min < max, got ({lo}, {hi})")));
        }
        if !(self.spatial_resolution.is_finite() && self.spatial_resolution > 0.0) {
            return Err(Error::Config(format!(
                "spatial resolution must be > 0, got {}",
                self.spatial_resolution
            )));
        }
        if self.averaging_factor == 0 {
            return Err(Error::Config("averaging_factor must be >= 1".into()));
        }
        if self.round_trips == 0 {
            return Err(Error::Config("round_trips must be >= 1".into()));
        }
        if self.sample_count() < 2 {
            return Err(Error::Config("flight yields fewer than 2 stored samples".into()));
        }
        self.scenario.validate().map_err(|e| Error::Config(e.to_string()))
    }

    /// Stored samples per one-way pass.
    pub fn sample_count(&self) -> usize {
        let (lo, hi) = self.altitude_range_m;
        ((hi - lo) * self.spatial_resolution).round() as usize
    }

    /// Stored altitudes, `min + i / resolution`.
    pub fn altitudes(&self) -> Vec<f64> {
        let lo = self.altitude_range_m.0;
        (0..self.sample_count())
            .map(|i| lo + i as f64 / self.spatial_resolution)
            .collect()
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: FlightConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("flight config serializes")
    }
}
