use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;
mod evaluate;
mod roundtrip;

/// UAV air-ground channel synthesis and trace analysis.
#[derive(Debug, Parser)]
#[command(name = "agchannel", version, about)]
struct Cli {
    /// More log output (-v info, -vv debug).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Synthesize a vertical-flight trace.
    Simulate(commands::SimulateArgs),
    /// Decompose a trace and fit path loss, shadowing and fast fading.
    Extract(commands::ExtractArgs),
    /// Evaluate a single path-loss model.
    Evaluate(evaluate::EvaluateArgs),
    /// Synthesize, extract and compare with the generator parameters.
    Roundtrip(roundtrip::RoundtripArgs),
    /// Write plottable curves from a report.
    Plotdata(commands::PlotdataArgs),
}

/// Bad flag combinations detected after parsing; exit code 1.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

pub fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let level = match cli.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    env_logger::Builder::new()
        .filter_level(level)
        .parse_default_env()
        .format_timestamp(None)
        .init();

    let result = match cli.command {
        Command::Simulate(a) => commands::simulate(a),
        Command::Extract(a) => commands::extract(a),
        Command::Evaluate(a) => evaluate::run(a),
        Command::Roundtrip(a) => roundtrip::run(a),
        Command::Plotdata(a) => commands::plotdata(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.is::<UsageError>() {
                ExitCode::from(1)
            } else {
                ExitCode::from(2)
            }
        }
    }
}
