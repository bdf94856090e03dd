use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::Args;

use agchannel::extraction::{analyze, AnalysisConfig, FitReport, InterceptMode};
use agchannel::io::{plot_data, read_trace_csv, write_trace_csv, PlotKind, Provenance, ReportDocument};
use agchannel::propagation::Frequency;
use agchannel::stochastic::FadingFamily;
use agchannel::synthesis::{synthesize_flight, ChannelModel, FlightConfig};

use crate::usage;

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

/// Flight config from a file or the defaults, plus the text it came from.
pub fn load_flight(path: Option<&Path>) -> Result<(FlightConfig, String)> {
    match path {
        Some(p) => {
            let text = read_text(p)?;
            let cfg = FlightConfig::from_toml_str(&text).with_context(|| format!("in {}", p.display()))?;
            Ok((cfg, text))
        }
        None => {
            let cfg = FlightConfig::default();
            let text = cfg.to_toml_string();
            Ok((cfg, text))
        }
    }
}

/// Generator model for `--preset`, reading `--model` for `custom`.
pub fn load_model(preset: &str, model: Option<&Path>) -> Result<ChannelModel> {
    match (preset, model) {
        ("custom", Some(p)) => {
            Ok(ChannelModel::from_toml_str(&read_text(p)?).with_context(|| format!("in {}", p.display()))?)
        }
        ("custom", None) => Err(usage("--preset custom needs --model <file>")),
        (name, None) => ChannelModel::preset(name)
            .ok_or_else(|| usage(format!("unknown preset {name:?} (paper-1ghz|paper-4ghz|custom)"))),
        (_, Some(_)) => Err(usage("--model is only used with --preset custom")),
    }
}

/// Frequency implied by a built-in preset.
pub fn preset_frequency(preset: &str) -> Option<Frequency> {
    match preset {
        "paper-1ghz" => Frequency::from_ghz(1.0).ok(),
        "paper-4ghz" => Frequency::from_ghz(4.0).ok(),
        _ => None,
    }
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Flight configuration (TOML); defaults to the campus flight.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Generator parameters.
    #[arg(long, default_value = "paper-4ghz")]
    pub preset: String,
    /// Channel model file for `--preset custom` (TOML).
    #[arg(long)]
    pub model: Option<PathBuf>,
    /// Overrides the seed of the configuration.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output trace CSV.
    #[arg(long)]
    pub out: PathBuf,
}

pub fn simulate(a: SimulateArgs) -> Result<()> {
    let model = load_model(&a.preset, a.model.as_deref())?;
    let (mut cfg, _) = load_flight(a.config.as_deref())?;
    if a.config.is_none() {
        if let Some(f) = preset_frequency(&a.preset) {
            cfg.freq = f;
        }
    } else if preset_frequency(&a.preset).is_some_and(|f| f != cfg.freq) {
        log::warn!("preset {} used at {} Hz from the config", a.preset, cfg.freq.hz());
    }
    if let Some(seed) = a.seed {
        cfg.seed = seed;
    }
    let trace = synthesize_flight(&cfg, &model)?;
    let file = fs::File::create(&a.out).with_context(|| format!("creating {}", a.out.display()))?;
    write_trace_csv(&trace, std::io::BufWriter::new(file))?;
    log::info!("wrote {} samples to {}", trace.len(), a.out.display());
    Ok(())
}

#[derive(Debug, Args)]
pub struct ExtractArgs {
    /// Trace CSV (`altitude_m,loss_db`).
    #[arg(long)]
    pub trace: PathBuf,
    /// Flight configuration giving scenario, frequency and resolution.
    #[arg(long)]
    pub scenario: Option<PathBuf>,
    /// Carrier frequency in Hz; overrides the scenario file.
    #[arg(long)]
    pub freq: Option<f64>,
    /// Path-loss intercepts: `free` fits them, `fixed` keeps the model values.
    #[arg(long, default_value = "free")]
    pub mode: InterceptMode,
    /// Comma-separated candidate families.
    #[arg(long, value_delimiter = ',')]
    pub families: Option<Vec<FadingFamily>>,
    /// Output report (JSON).
    #[arg(long)]
    pub report: PathBuf,
}

pub fn extract(a: ExtractArgs) -> Result<()> {
    if a.scenario.is_none() && a.freq.is_none() {
        return Err(usage("give --scenario <file> or --freq <hz>"));
    }
    let (mut flight, flight_text) = load_flight(a.scenario.as_deref())?;
    if let Some(hz) = a.freq {
        flight.freq = Frequency::from_hz(hz)?;
    }
    let bytes = fs::read(&a.trace).with_context(|| format!("reading {}", a.trace.display()))?;
    let trace = read_trace_csv(bytes.as_slice(), flight.freq, flight.spatial_resolution, flight.scenario)
        .with_context(|| format!("in {}", a.trace.display()))?;

    let mut cfg = AnalysisConfig::default();
    cfg.decomposition.mode = a.mode;
    if let Some(f) = a.families {
        if f.is_empty() {
            return Err(usage("--families is empty"));
        }
        cfg.families = f;
    }
    let report = analyze(&trace, &cfg)?;
    let config_text = format!(
        "{flight_text}\n# frequency_hz {}\n{}",
        flight.freq.hz(),
        serde_json::to_string(&cfg)?
    );
    let seed = a.scenario.as_ref().map(|_| flight.seed);
    let doc = ReportDocument {
        provenance: Provenance::new(&config_text, &bytes, seed),
        report,
    };
    fs::write(&a.report, doc.to_json() + "\n").with_context(|| format!("writing {}", a.report.display()))?;
    print_summary(&doc.report);
    Ok(())
}

pub fn print_summary(r: &FitReport) {
    println!("{:<6} {:>8} {:>10} {:>10} {:>9} {:>11} {:>12}", "cond", "samples", "A [dB]", "n [dB/m]", "sigma", "FF depth", "best FF");
    for c in &r.conditions {
        let fit = r.pathloss.condition(c.state);
        println!(
            "{:<6} {:>8} {:>10.3} {:>10.4} {:>9.3} {:>11.3} {:>12}",
            c.state.to_string(),
            c.sample_count,
            fit.map_or(f64::NAN, |f| f.intercept_db),
            fit.map_or(f64::NAN, |f| f.n_db_per_m),
            c.shadowing.params.sigma_db,
            c.fast_fading.stats.fading_depth_db,
            c.fast_fading.best().map_or("-", |b| b.family.as_str()),
        );
    }
}

#[derive(Debug, Args)]
pub struct PlotdataArgs {
    /// Report written by `extract`.
    #[arg(long)]
    pub report: PathBuf,
    /// pdf, cdf or pathloss.
    #[arg(long)]
    pub what: PlotKind,
    /// Output CSV.
    #[arg(long)]
    pub out: PathBuf,
}

pub fn plotdata(a: PlotdataArgs) -> Result<()> {
    let doc = ReportDocument::from_json(&read_text(&a.report)?)?;
    let file = fs::File::create(&a.out).with_context(|| format!("creating {}", a.out.display()))?;
    plot_data(&doc.report, a.what, std::io::BufWriter::new(file))?;
    Ok(())
}
