use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::LinkState;
use crate::propagation::PathLossParams;
use crate::stochastic::{FadingDistribution, ShadowingParams};

/// A value per link condition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PerCondition<T> {
    pub los: T,
    pub nlos: T,
}

impl<T> PerCondition<T> {
    pub fn get(&self, state: LinkState) -> &T {
        match state {
            LinkState::Los => &self.los,
            LinkState::Nlos => &self.nlos,
        }
    }
}

/// Generator parameters for the forward channel model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelModel {
    pub pathloss: PathLossParams,
    pub shadowing: PerCondition<ShadowingParams>,
    /// `None` means a unit envelope (no fast fading).
    pub fading: PerCondition<Option<FadingDistribution>>,
    /// Spacing of independent shadowing values, in wavelengths.
    #[serde(default = "default_shadowing_spacing")]
    pub shadowing_decorrelation_wavelengths: f64,
    /// Spacing of independent fading values, in wavelengths.
    #[serde(default = "default_fading_spacing")]
    pub fading_decorrelation_wavelengths: f64,
}

fn default_shadowing_spacing() -> f64 {
    40.0
}

fn default_fading_spacing() -> f64 {
    0.5
}

/// Default generator shadowing spreads, in the usual air-ground range.
pub const DEFAULT_SIGMA_LOS_DB: f64 = 2.0;
pub const DEFAULT_SIGMA_NLOS_DB: f64 = 4.0;

impl ChannelModel {
    fn campus(pathloss: PathLossParams, beta_los: f64, beta_nlos: f64) -> Self {
        ChannelModel {
            pathloss,
            shadowing: PerCondition {
                los: ShadowingParams::zero_mean(DEFAULT_SIGMA_LOS_DB).expect("valid"),
                nlos: ShadowingParams::zero_mean(DEFAULT_SIGMA_NLOS_DB).expect("valid"),
            },
            fading: PerCondition {
                los: Some(FadingDistribution::log_logistic(1.0, beta_los).expect("valid")),
                nlos: Some(FadingDistribution::log_logistic(1.0, beta_nlos).expect("valid")),
            },
            shadowing_decorrelation_wavelengths: default_shadowing_spacing(),
            fading_decorrelation_wavelengths: default_fading_spacing(),
        }
    }

    pub fn paper_1ghz() -> Self {
        Self::campus(PathLossParams::paper_1ghz(), 1.41, 1.74)
    }

    pub fn paper_4ghz() -> Self {
        Self::campus(PathLossParams::paper_4ghz(), 1.12, 1.38)
    }

    /// `paper-1ghz` or `paper-4ghz`.
    pub fn preset(name: &str) -> Option<Self> {
        match name {
            "paper-1ghz" => Some(Self::paper_1ghz()),
            "paper-4ghz" => Some(Self::paper_4ghz()),
            _ => None,
        }
    }

    /// Path loss only: no shadowing, unit envelope.
    pub fn deterministic(pathloss: PathLossParams) -> Self {
        let zero = ShadowingParams::zero_mean(0.0).expect("valid");
        ChannelModel {
            pathloss,
            shadowing: PerCondition { los: zero, nlos: zero },
            fading: PerCondition { los: None, nlos: None },
            shadowing_decorrelation_wavelengths: default_shadowing_spacing(),
            fading_decorrelation_wavelengths: default_fading_spacing(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.pathloss.validate()?;
        for state in LinkState::ALL {
            let s = self.shadowing.get(state);
            ShadowingParams::new(s.mean_db, s.sigma_db)?;
            if let Some(d) = self.fading.get(state) {
                d.validate()?;
            }
        }
        for (name, v) in [
            ("shadowing decorrelation", self.shadowing_decorrelation_wavelengths),
            ("fading decorrelation", self.fading_decorrelation_wavelengths),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Config(format!("{name} distance must be > 0, got {v}")));
            }
        }
        Ok(())
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        let m: ChannelModel = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        m.validate()?;
        Ok(m)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("channel model serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets() {
        let m = ChannelModel::preset("paper-4ghz").unwrap();
        assert_eq!(m.pathloss.n_nlos, 2.075);
        assert_eq!(m.fading.los, Some(FadingDistribution::log_logistic(1.0, 1.12).unwrap()));
        assert_eq!(m.fading.nlos, Some(FadingDistribution::log_logistic(1.0, 1.38).unwrap()));
        let m1 = ChannelModel::preset("paper-1ghz").unwrap();
        assert_eq!(m1.fading.los, Some(FadingDistribution::log_logistic(1.0, 1.41).unwrap()));
        assert!(ChannelModel::preset("paper-2ghz").is_none());
    }

    #[test]
    fn toml_round_trip() {
        for m in [ChannelModel::paper_1ghz(), ChannelModel::deterministic(PathLossParams::paper_4ghz())] {
            let text = m.to_toml_string();
            assert_eq!(ChannelModel::from_toml_str(&text).unwrap(), m, "{text}");
        }
    }
}
