//! Deterministic path-loss models.
//!
//! Three models are provided: free space (distance in km, frequency in MHz),
//! the 3GPP TR 38.901 UMa pair (distance in m, frequency in GHz) and the
//! altitude-dependent UAV model, which reuses the UMa units.

use serde::{Deserialize, Serialize};

use crate::error::{domain, ensure_positive, Error, Result};
use crate::geometry::{breakpoint_distance, LinkGeometry, LinkState, SPEED_OF_LIGHT};

/// Carrier frequency.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Frequency(f64);

impl Frequency {
    pub fn from_hz(hz: f64) -> Result<Self> {
        ensure_positive("frequency", hz).map(Frequency)
    }

    pub fn from_mhz(mhz: f64) -> Result<Self> {
        Self::from_hz(mhz * 1e6)
    }

    pub fn from_ghz(ghz: f64) -> Result<Self> {
        Self::from_hz(ghz * 1e9)
    }

    pub fn hz(self) -> f64 {
        self.0
    }

    pub fn mhz(self) -> f64 {
        self.0 / 1e6
    }

    pub fn ghz(self) -> f64 {
        self.0 / 1e9
    }

    pub fn wavelength_m(self) -> f64 {
        SPEED_OF_LIGHT / self.0
    }
}

impl TryFrom<f64> for Frequency {
    type Error = Error;

    fn try_from(hz: f64) -> Result<Self> {
        Frequency::from_hz(hz)
    }
}

impl From<Frequency> for f64 {
    fn from(f: Frequency) -> f64 {
        f.0
    }
}

/// Free-space path loss, `32.45 + 20 log10(d_km) + 20 log10(f_MHz)`.
pub fn fspl(d_km: f64, f_mhz: f64) -> Result<f64> {
    ensure_positive("distance", d_km)?;
    ensure_positive("frequency", f_mhz)?;
    Ok(32.45 + 20.0 * d_km.log10() + 20.0 * f_mhz.log10())
}

/// Free-space path loss for a distance in meters.
pub fn free_space_loss(d_m: f64, freq: Frequency) -> Result<f64> {
    fspl(d_m / 1000.0, freq.mhz())
}

/// 3GPP UMa path loss: LOS `28 + 22 log10(d3D) + 20 log10(f)`, NLOS
/// `13.54 + 39.08 log10(d3D) + 20 log10(f) - 0.6 (h - 0.5)`; `d3D` in m,
/// `f` in GHz, `h` the UAV (UE) altitude in m.
pub fn pl_3gpp_uma(d3d_m: f64, f_ghz: f64, uav_altitude_m: f64, los: LinkState) -> Result<f64> {
    ensure_positive("d3d", d3d_m)?;
    ensure_positive("frequency", f_ghz)?;
    if !uav_altitude_m.is_finite() {
        return Err(domain("altitude must be finite"));
    }
    Ok(match los {
        LinkState::Los => 28.0 + 22.0 * d3d_m.log10() + 20.0 * f_ghz.log10(),
        LinkState::Nlos => {
            13.54 + 39.08 * d3d_m.log10() + 20.0 * f_ghz.log10() - 0.6 * (uav_altitude_m - 0.5)
        }
    })
}

/// How strictly [`pl_3gpp_uma_checked`] enforces the LOS distance range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Applicability {
    /// Log a warning and evaluate anyway.
    #[default]
    Advisory,
    /// Return [`Error::Applicability`].
    Strict,
}

/// Checks `10 m <= d2D <= d_break` for the UMa LOS formula.
pub fn uma_los_applicability(d2d_m: f64, h_tx_m: f64, h_rx_m: f64, freq: Frequency) -> Result<()> {
    let d_break_m = breakpoint_distance(h_tx_m, h_rx_m, freq.hz())?;
    if (10.0..=d_break_m).contains(&d2d_m) {
        Ok(())
    } else {
        Err(Error::Applicability { d2d_m, d_break_m })
    }
}

/// UMa path loss for a full link description, with the LOS applicability check.
pub fn pl_3gpp_uma_checked(
    link: &LinkGeometry,
    gs_height_m: f64,
    freq: Frequency,
    check: Applicability,
) -> Result<f64> {
    if link.los == LinkState::Los {
        if let Err(e) = uma_los_applicability(link.d2d_m, link.uav_altitude_m, gs_height_m, freq) {
            match check {
                Applicability::Strict => return Err(e),
                Applicability::Advisory => log::warn!("{e}"),
            }
        }
    }
    pl_3gpp_uma(link.d3d_m, freq.ghz(), link.uav_altitude_m, link.los)
}

/// Coefficients of the altitude-dependent model
/// `PL0 = A_c + b_d log10(d3D) + b_f log10(f_GHz) - n_c h`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PathLossParams {
    pub name: String,
    pub intercept_los_db: f64,
    pub intercept_nlos_db: f64,
    #[serde(default = "twenty")]
    pub dist_exponent_coeff: f64,
    #[serde(default = "twenty")]
    pub freq_coeff: f64,
    /// Altitude impact factor in LOS, dB per meter.
    pub n_los: f64,
    /// Altitude impact factor in NLOS, dB per meter.
    pub n_nlos: f64,
}

fn twenty() -> f64 {
    20.0
}

impl PathLossParams {
    pub const INTERCEPT_LOS_DB: f64 = 40.55;
    pub const INTERCEPT_NLOS_DB: f64 = 62.41;

    fn campus(name: &str, n_los: f64, n_nlos: f64) -> Self {
        PathLossParams {
            name: name.to_owned(),
            intercept_los_db: Self::INTERCEPT_LOS_DB,
            intercept_nlos_db: Self::INTERCEPT_NLOS_DB,
            dist_exponent_coeff: 20.0,
            freq_coeff: 20.0,
            n_los,
            n_nlos,
        }
    }

    /// Fitted campus model at 1 GHz.
    pub fn paper_1ghz() -> Self {
        Self::campus("paper-1ghz", 0.102, 1.190)
    }

    /// Fitted campus model at 4 GHz.
    pub fn paper_4ghz() -> Self {
        Self::campus("paper-4ghz", 0.250, 2.075)
    }

    pub fn preset(name: &str) -> Option<Self> {
        match name {
            "paper-1ghz" => Some(Self::paper_1ghz()),
            "paper-4ghz" => Some(Self::paper_4ghz()),
            _ => None,
        }
    }

    pub fn intercept(&self, los: LinkState) -> f64 {
        match los {
            LinkState::Los => self.intercept_los_db,
            LinkState::Nlos => self.intercept_nlos_db,
        }
    }

    pub fn altitude_factor(&self, los: LinkState) -> f64 {
        match los {
            LinkState::Los => self.n_los,
            LinkState::Nlos => self.n_nlos,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let all = [
            self.intercept_los_db,
            self.intercept_nlos_db,
            self.dist_exponent_coeff,
            self.freq_coeff,
            self.n_los,
            self.n_nlos,
        ];
        if all.iter().all(|v| v.is_finite()) {
            Ok(())
        } else {
            Err(Error::Config(format!("non-finite coefficient in model {:?}", self.name)))
        }
    }

    /// Parses the TOML preset text format.
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let p: PathLossParams = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        p.validate()?;
        Ok(p)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("path-loss params serialize to TOML")
    }
}

impl Default for PathLossParams {
    fn default() -> Self {
        Self::paper_1ghz()
    }
}

/// Altitude-dependent path loss; `d3D` in m, `f` in GHz, altitude in m.
pub fn pl_altitude_model(
    d3d_m: f64,
    f_ghz: f64,
    uav_altitude_m: f64,
    los: LinkState,
    params: &PathLossParams,
) -> Result<f64> {
    ensure_positive("d3d", d3d_m)?;
    ensure_positive("frequency", f_ghz)?;
    if !(uav_altitude_m.is_finite() && uav_altitude_m >= 0.0) {
        return Err(domain(format!("UAV altitude must be finite and >= 0, got {uav_altitude_m}")));
    }
    Ok(params.intercept(los)
        + params.dist_exponent_coeff * d3d_m.log10()
        + params.freq_coeff * f_ghz.log10()
        - params.altitude_factor(los) * uav_altitude_m)
}
