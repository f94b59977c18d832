//! `simulate <preset|config-file> [--out DIR] [--dt X] [--tail X] [--phase-aware]`

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use cqed_router::config::{preset, ExperimentConfig, RawConfig, PRESETS};
use cqed_router::error::Error;
use cqed_router::experiment::{run_to_dir, RunError};

#[derive(Parser, Debug)]
#[command(name = "simulate", about = "Run a router experiment from a preset or config file")]
struct Args {
    /// Preset name (fig1, fig3, fig4, fig5-g2, fig5-g3) or path to a config file.
    source: String,
    /// Output directory.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Integration step, overrides `grid.dt`.
    #[arg(long)]
    dt: Option<f64>,
    /// Ring-down time after the pulse, overrides `grid.tail`.
    #[arg(long)]
    tail: Option<f64>,
    /// Keep branch phases in conditional states.
    #[arg(long)]
    phase_aware: bool,
}

fn load(args: &Args) -> Result<ExperimentConfig, RunError> {
    let text = match preset(&args.source) {
        Some(t) => t.to_string(),
        None => std::fs::read_to_string(&args.source).map_err(|e| {
            let names: Vec<_> = PRESETS.iter().map(|(n, _)| *n).collect();
            RunError::config(Error::ConfigInvalid {
                key: args.source.clone(),
                reason: format!("not a preset ({}) and not readable: {e}", names.join(", ")),
            })
        })?,
    };
    let mut raw = RawConfig::parse(&text).map_err(RunError::config)?;
    if let Some(dt) = args.dt {
        raw.set("grid.dt", dt.to_string());
    }
    if let Some(tail) = args.tail {
        raw.set("grid.tail", tail.to_string());
    }
    if args.phase_aware {
        raw.set("phase_mode", "phase_aware");
    }
    ExperimentConfig::from_raw(&raw).map_err(RunError::config)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let result = load(&args).and_then(|cfg| run_to_dir(&cfg, &args.out));
    match result {
        Ok(paths) => {
            for p in paths {
                println!("{}", p.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
