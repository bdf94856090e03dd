use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extraction::Trace;

/// Transmit power, antenna gains and receiver noise floor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LinkBudget {
    pub tx_power_dbm: f64,
    pub tx_gain_dbi: f64,
    pub rx_gain_dbi: f64,
    pub noise_floor_dbm: f64,
}

impl Default for LinkBudget {
    fn default() -> Self {
        LinkBudget {
            tx_power_dbm: 30.0,
            tx_gain_dbi: 3.0,
            rx_gain_dbi: 2.15,
            noise_floor_dbm: -120.0,
        }
    }
}

impl LinkBudget {
    pub fn validate(&self) -> Result<()> {
        let all = [self.tx_power_dbm, self.tx_gain_dbi, self.rx_gain_dbi, self.noise_floor_dbm];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::Config(format!("non-finite link budget {self:?}")));
        }
        if self.link_margin_db() < 0.0 {
            return Err(Error::Config(format!(
                "negative link margin: {} dBm below a {} dBm noise floor",
                self.tx_power_dbm, self.noise_floor_dbm
            )));
        }
        Ok(())
    }

    /// Transmit power minus noise floor.
    pub fn link_margin_db(&self) -> f64 {
        self.tx_power_dbm - self.noise_floor_dbm
    }

    pub fn received_dbm(&self, loss_db: f64) -> f64 {
        self.tx_power_dbm + self.tx_gain_dbi + self.rx_gain_dbi - loss_db
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReceivedSample {
    pub altitude_m: f64,
    pub power_dbm: f64,
    pub below_floor: bool,
}

pub fn received_power(trace: &Trace, budget: &LinkBudget) -> Result<Vec<ReceivedSample>> {
    budget.validate()?;
    Ok(trace
        .samples()
        .iter()
        .map(|s| {
            let power_dbm = budget.received_dbm(s.loss_db);
            ReceivedSample {
                altitude_m: s.altitude_m,
                power_dbm,
                below_floor: power_dbm < budget.noise_floor_dbm,
            }
        })
        .collect())
}
