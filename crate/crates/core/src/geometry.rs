//! Link geometry for a ground station, a vertically flying UAV and a single
//! blocking building.
//!
//! Everything lives in the vertical plane through the UAV ground point and the
//! ground-station mast. The UAV sits at horizontal position 0, the ground
//! station at `horizontal_distance_m`, and the blocker is a thin wall at
//! `blocker_distance_m` from the UAV with height `blocker_height_m`.

use serde::{Deserialize, Serialize};

use crate::error::{domain, ensure_positive, Result};

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Line-of-sight state of the direct Tx-Rx ray.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LinkState {
    Los,
    Nlos,
}

impl LinkState {
    pub const ALL: [LinkState; 2] = [LinkState::Los, LinkState::Nlos];

    pub fn as_str(self) -> &'static str {
        match self {
            LinkState::Los => "los",
            LinkState::Nlos => "nlos",
        }
    }
}

impl std::fmt::Display for LinkState {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            LinkState::Los => "LOS",
            LinkState::Nlos => "NLOS",
        })
    }
}

/// Static placement of the ground station and the blocking building.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioGeometry {
    /// Ground-plane separation between the UAV take-off point and the GS mast.
    pub horizontal_distance_m: f64,
    /// Ground-station antenna height.
    pub gs_height_m: f64,
    /// Horizontal distance from the UAV ground point to the blocker face.
    pub blocker_distance_m: f64,
    /// Blocker height; zero means an unobstructed scenario.
    pub blocker_height_m: f64,
}

impl ScenarioGeometry {
    /// Campus scenario: 350 m offset, 25 m mast, 15 m building.
    ///
    /// A building 100 m from the UAV puts the NLOS/LOS transition at 11 m.
    pub const CAMPUS: ScenarioGeometry = ScenarioGeometry {
        horizontal_distance_m: 350.0,
        gs_height_m: 25.0,
        blocker_distance_m: 100.0,
        blocker_height_m: 15.0,
    };

    pub fn new(
        horizontal_distance_m: f64,
        gs_height_m: f64,
        blocker_distance_m: f64,
        blocker_height_m: f64,
    ) -> Result<Self> {
        let s = ScenarioGeometry {
            horizontal_distance_m,
            gs_height_m,
            blocker_distance_m,
            blocker_height_m,
        };
        s.validate()?;
        Ok(s)
    }

    /// Places the blocker so that the ray grazes its top at `transition_altitude_m`.
    pub fn with_transition_altitude(
        horizontal_distance_m: f64,
        gs_height_m: f64,
        blocker_height_m: f64,
        transition_altitude_m: f64,
    ) -> Result<Self> {
        if !(transition_altitude_m < blocker_height_m && blocker_height_m < gs_height_m) {
            return Err(domain(
                "transition altitude must lie below the blocker top, which must lie below the GS",
            ));
        }
        let frac = (blocker_height_m - transition_altitude_m) / (gs_height_m - transition_altitude_m);
        Self::new(
            horizontal_distance_m,
            gs_height_m,
            frac * horizontal_distance_m,
            blocker_height_m,
        )
    }

    pub fn validate(&self) -> Result<()> {
        ensure_positive("horizontal_distance_m", self.horizontal_distance_m)?;
        ensure_positive("gs_height_m", self.gs_height_m)?;
        ensure_positive("blocker_distance_m", self.blocker_distance_m)?;
        if !(self.blocker_height_m.is_finite() && self.blocker_height_m >= 0.0) {
            return Err(domain(format!(
                "blocker_height_m must be finite and >= 0, got {}",
                self.blocker_height_m
            )));
        }
        if self.blocker_distance_m >= self.horizontal_distance_m {
            return Err(domain(format!(
                "blocker_distance_m ({}) must be smaller than horizontal_distance_m ({})",
                self.blocker_distance_m, self.horizontal_distance_m
            )));
        }
        Ok(())
    }

    /// Full link description at the given UAV altitude.
    pub fn link(&self, uav_altitude_m: f64) -> Result<LinkGeometry> {
        let (d2d_m, d3d_m) = link_distances(self, uav_altitude_m)?;
        Ok(LinkGeometry {
            d2d_m,
            d3d_m,
            elevation_deg: elevation_angle(uav_altitude_m, self.gs_height_m, self.horizontal_distance_m)?,
            los: los_state(self, uav_altitude_m)?,
            uav_altitude_m,
        })
    }

    /// Lowest altitude with an unobstructed ray, or `None` when the blocker
    /// never obstructs (transition at or below ground).
    pub fn los_transition_altitude(&self) -> Option<f64> {
        let r = self.blocker_distance_m / self.horizontal_distance_m;
        let h = (self.blocker_height_m - self.gs_height_m * r) / (1.0 - r);
        (h >= 0.0).then_some(h)
    }

    /// Height of the direct ray above ground at the blocker position.
    fn ray_height_at_blocker(&self, uav_altitude_m: f64) -> f64 {
        uav_altitude_m
            + (self.gs_height_m - uav_altitude_m) * self.blocker_distance_m / self.horizontal_distance_m
    }
}

impl Default for ScenarioGeometry {
    fn default() -> Self {
        Self::CAMPUS
    }
}

/// Geometry of one Tx/Rx placement.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinkGeometry {
    pub d2d_m: f64,
    pub d3d_m: f64,
    pub elevation_deg: f64,
    pub los: LinkState,
    pub uav_altitude_m: f64,
}

fn check_altitude(uav_altitude_m: f64) -> Result<()> {
    if uav_altitude_m.is_finite() && uav_altitude_m >= 0.0 {
        Ok(())
    } else {
        Err(domain(format!("UAV altitude must be finite and >= 0, got {uav_altitude_m}")))
    }
}

/// Horizontal and slant distance between the UAV and the GS antenna.
pub fn link_distances(scenario: &ScenarioGeometry, uav_altitude_m: f64) -> Result<(f64, f64)> {
    scenario.validate()?;
    check_altitude(uav_altitude_m)?;
    let d2d = scenario.horizontal_distance_m;
    let d3d = d2d.hypot(scenario.gs_height_m - uav_altitude_m);
    Ok((d2d, d3d))
}

/// Elevation angle `atan((h_R - h_T) / D)` in degrees. Positive when the GS
/// antenna is above the UAV.
pub fn elevation_angle(uav_altitude_m: f64, gs_height_m: f64, horizontal_distance_m: f64) -> Result<f64> {
    ensure_positive("horizontal_distance_m", horizontal_distance_m)?;
    if !(uav_altitude_m.is_finite() && gs_height_m.is_finite()) {
        return Err(domain("heights must be finite"));
    }
    Ok(((gs_height_m - uav_altitude_m) / horizontal_distance_m).atan().to_degrees())
}

/// NLOS iff the straight UAV-GS segment passes at or below the blocker top.
pub fn los_state(scenario: &ScenarioGeometry, uav_altitude_m: f64) -> Result<LinkState> {
    scenario.validate()?;
    check_altitude(uav_altitude_m)?;
    if scenario.blocker_height_m > 0.0
        && scenario.ray_height_at_blocker(uav_altitude_m) <= scenario.blocker_height_m
    {
        Ok(LinkState::Nlos)
    } else {
        Ok(LinkState::Los)
    }
}

/// Two-ray breakpoint distance `4 h_TX h_RX / λ`.
pub fn breakpoint_distance(h_tx_m: f64, h_rx_m: f64, freq_hz: f64) -> Result<f64> {
    ensure_positive("h_tx_m", h_tx_m)?;
    ensure_positive("h_rx_m", h_rx_m)?;
    ensure_positive("freq_hz", freq_hz)?;
    Ok(4.0 * h_tx_m * h_rx_m * freq_hz / SPEED_OF_LIGHT)
}
