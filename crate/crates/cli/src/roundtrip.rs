use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::Args;
use rayon::prelude::*;

use agchannel::extraction::{AnalysisConfig, FitReport, InterceptMode};
use agchannel::geometry::LinkState;
use agchannel::roundtrip::{recovery_table, roundtrip, top_family_counts, RecoveryRow};
use agchannel::synthesis::ChannelModel;

use crate::commands::{load_flight, load_model, preset_frequency};
use crate::usage;

#[derive(Debug, Args)]
pub struct RoundtripArgs {
    /// First seed; repeats use consecutive seeds.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Flight configuration (TOML).
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, default_value = "paper-4ghz")]
    pub preset: String,
    /// Channel model file for `--preset custom`.
    #[arg(long)]
    pub model: Option<PathBuf>,
    /// Independent flights, run in parallel.
    #[arg(long, default_value_t = 1)]
    pub repeats: u64,
    /// Overrides the round trips of the configuration.
    #[arg(long)]
    pub round_trips: Option<u32>,
    /// Drop shadowing and fast fading from the generator.
    #[arg(long)]
    pub deterministic: bool,
    #[arg(long, default_value = "free")]
    pub mode: InterceptMode,
    /// Print the table as JSON.
    #[arg(long)]
    pub json: bool,
}

pub fn run(a: RoundtripArgs) -> Result<()> {
    if a.repeats == 0 {
        return Err(usage("--repeats must be >= 1"));
    }
    let mut model = load_model(&a.preset, a.model.as_deref())?;
    if a.deterministic {
        model = ChannelModel::deterministic(model.pathloss);
    }
    let (mut cfg, _) = load_flight(a.config.as_deref())?;
    if a.config.is_none() {
        if let Some(f) = preset_frequency(&a.preset) {
            cfg.freq = f;
        }
    }
    if let Some(r) = a.round_trips {
        cfg.round_trips = r;
    }
    let mut analysis = AnalysisConfig::default();
    analysis.decomposition.mode = a.mode;
    analysis.decomposition.template = model.pathloss.clone();

    let reports = (a.seed..a.seed + a.repeats)
        .into_par_iter()
        .map(|seed| {
            let mut c = cfg.clone();
            c.seed = seed;
            roundtrip(&c, &model, &analysis).with_context(|| format!("seed {seed}"))
        })
        .collect::<Result<Vec<FitReport>>>()?;
    let rows = recovery_table(&model, &reports);

    if a.json {
        let top: Vec<_> = LinkState::ALL
            .iter()
            .map(|&s| (s, top_family_counts(&reports, s)))
            .collect();
        let doc = serde_json::json!({
            "seeds": [a.seed, a.seed + a.repeats - 1],
            "rows": rows,
            "top_family": top,
        });
        println!("{}", serde_json::to_string_pretty(&doc)?);
    } else {
        print_table(&rows);
        for state in LinkState::ALL {
            let counts: Vec<String> = top_family_counts(&reports, state)
                .into_iter()
                .filter(|(_, n)| *n > 0)
                .map(|(f, n)| format!("{f} {n}/{}", reports.len()))
                .collect();
            if !counts.is_empty() {
                println!("top FF family {state}: {}", counts.join(", "));
            }
        }
    }
    Ok(())
}

fn print_table(rows: &[RecoveryRow]) {
    println!("{:<12} {:>12} {:>12} {:>12}", "parameter", "generator", "recovered", "error");
    for r in rows {
        println!(
            "{:<12} {:>12.6} {:>12.6} {:>12.3e}",
            r.parameter, r.generator, r.recovered, r.error
        );
    }
}
