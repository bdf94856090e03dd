use std::path::PathBuf;

use anyhow::Result;
use clap::{Args, ValueEnum};

use agchannel::geometry::{LinkGeometry, LinkState, ScenarioGeometry};
use agchannel::propagation::{
    fspl, pl_3gpp_uma_checked, pl_altitude_model, Applicability, Frequency, PathLossParams,
};

use crate::usage;

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Model {
    Fspl,
    #[value(name = "3gpp")]
    Uma3gpp,
    /// Altitude-dependent model with fitted coefficients.
    Paper,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Condition {
    Auto,
    Los,
    Nlos,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    #[arg(long)]
    pub model: Model,
    /// Carrier frequency in Hz.
    #[arg(long, conflicts_with = "f_mhz")]
    pub freq: Option<f64>,
    /// Carrier frequency in MHz.
    #[arg(long)]
    pub f_mhz: Option<f64>,
    /// Slant distance in km; otherwise derived from the scenario geometry.
    #[arg(long)]
    pub d_km: Option<f64>,
    /// UAV altitude in m.
    #[arg(long)]
    pub altitude: Option<f64>,
    /// Link condition; `auto` uses the blocker geometry.
    #[arg(long, value_enum, default_value_t = Condition::Auto)]
    pub condition: Condition,
    #[arg(long, default_value_t = ScenarioGeometry::CAMPUS.horizontal_distance_m)]
    pub distance_m: f64,
    #[arg(long, default_value_t = ScenarioGeometry::CAMPUS.gs_height_m)]
    pub gs_height: f64,
    #[arg(long, default_value_t = ScenarioGeometry::CAMPUS.blocker_distance_m)]
    pub blocker_distance: f64,
    #[arg(long, default_value_t = ScenarioGeometry::CAMPUS.blocker_height_m)]
    pub blocker_height: f64,
    /// Altitude-model coefficients: paper-1ghz, paper-4ghz, or a TOML file.
    /// Defaults to the preset nearest the carrier.
    #[arg(long)]
    pub params: Option<String>,
    /// Fail instead of warning when the UMa LOS formula is out of range.
    #[arg(long)]
    pub strict: bool,
    /// Decimal places printed.
    #[arg(long, default_value_t = 2)]
    pub precision: usize,
}

fn params_for(spec: Option<&str>, freq: Frequency) -> Result<PathLossParams> {
    match spec {
        None if freq.ghz() < 2.5 => Ok(PathLossParams::paper_1ghz()),
        None => Ok(PathLossParams::paper_4ghz()),
        Some(name) => match PathLossParams::preset(name) {
            Some(p) => Ok(p),
            None => {
                let path = PathBuf::from(name);
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| usage(format!("--params {name}: not a preset and not readable ({e})")))?;
                Ok(PathLossParams::from_toml_str(&text)?)
            }
        },
    }
}

pub fn run(a: EvaluateArgs) -> Result<()> {
    let freq = match (a.freq, a.f_mhz) {
        (Some(hz), _) => Frequency::from_hz(hz)?,
        (None, Some(mhz)) => Frequency::from_mhz(mhz)?,
        (None, None) => return Err(usage("give --freq <hz> or --f-mhz <mhz>")),
    };
    let scenario = ScenarioGeometry::new(a.distance_m, a.gs_height, a.blocker_distance, a.blocker_height)?;

    let value = match (a.model, a.d_km, a.altitude) {
        (Model::Fspl, Some(d_km), _) => fspl(d_km, freq.mhz())?,
        (Model::Fspl, None, Some(h)) => fspl(scenario.link(h)?.d3d_m / 1e3, freq.mhz())?,
        (_, _, None) => return Err(usage("this model needs --altitude <m> (or --d-km for fspl)")),
        (model, d_km, Some(h)) => {
            let mut link: LinkGeometry = scenario.link(h)?;
            if let Some(d) = d_km {
                link.d3d_m = d * 1e3;
                let dz = a.gs_height - h;
                link.d2d_m = (link.d3d_m * link.d3d_m - dz * dz).max(0.0).sqrt();
            }
            match a.condition {
                Condition::Los => link.los = LinkState::Los,
                Condition::Nlos => link.los = LinkState::Nlos,
                Condition::Auto => {}
            }
            match model {
                Model::Uma3gpp => {
                    let check = if a.strict {
                        Applicability::Strict
                    } else {
                        Applicability::Advisory
                    };
                    pl_3gpp_uma_checked(&link, a.gs_height, freq, check)?
                }
                _ => {
                    let params = params_for(a.params.as_deref(), freq)?;
                    pl_altitude_model(link.d3d_m, freq.ghz(), h, link.los, &params)?
                }
            }
        }
    };
    println!("{value:.*}", a.precision);
    Ok(())
}
