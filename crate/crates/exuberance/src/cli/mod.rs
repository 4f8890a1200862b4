//! Command-line surface: argument types, dispatch, and run manifests.
//!
//! Every command writes its artifacts into `--out DIR` together with a
//! `manifest.json` echoing the resolved parameters, seeds, and input file
//! digests, so a run is reproducible from the manifest and inputs alone.
//! Exit codes: 0 success, 1 internal error, 2 user/input error.

mod commands;
mod config;
pub mod report;

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::adf::AdfSpec;
use crate::datestamp::MinDuration;
use crate::error::{Error, Result};
use crate::month::MonthIndex;
use crate::recursive::WindowPolicy;

#[derive(Debug, Parser)]
#[command(
    name = "exuberance",
    version,
    about = "Explosive-episode detection for monthly time series",
    propagate_version = true
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build PPP fundamentals (s, f^T, f^N and deviations) from five price CSVs
    Fundamentals(commands::FundamentalsArgs),
    /// Recursive test statistics, critical values, and date-stamping for one series
    Test(commands::TestArgs),
    /// Simulate a critical-value table and save it for reuse
    Critvals(commands::CritvalsArgs),
    /// Date-stamp episodes from a saved test result and critical-value table
    Stamp(commands::StampArgs),
    /// Fit the logit attribution model of an indicator on covariates
    Logit(commands::LogitArgs),
    /// Run fundamentals → tests → indicators → logit from a config file
    Pipeline(commands::PipelineArgs),
    /// Generate synthetic bubble data with ground-truth windows
    Simulate(commands::SimulateArgs),
}

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Fundamentals(args) => commands::fundamentals(args),
        Command::Test(args) => commands::test(args),
        Command::Critvals(args) => commands::critvals(args),
        Command::Stamp(args) => commands::stamp(args),
        Command::Logit(args) => commands::logit(args),
        Command::Pipeline(args) => commands::pipeline(args),
        Command::Simulate(args) => commands::simulate(args),
    }
}

impl Error {
    /// CLI exit code: user/input problems are 2, internal failures 1.
    pub fn exit_code(&self) -> u8 {
        match self {
            Error::NullSimulationFailed { .. } => 1,
            _ => 2,
        }
    }
}

// ---- shared flag types ----

/// `--min-window {N | phillips}`
#[derive(Debug, Clone, Copy)]
pub struct MinWindowArg(pub WindowPolicy);

impl FromStr for MinWindowArg {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("phillips") {
            return Ok(MinWindowArg(WindowPolicy::Phillips));
        }
        s.parse::<usize>()
            .map(|n| MinWindowArg(WindowPolicy::explicit(n)))
            .map_err(|_| format!("expected a window size or 'phillips', got {s:?}"))
    }
}

impl fmt::Display for MinWindowArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            WindowPolicy::Phillips => write!(f, "phillips"),
            WindowPolicy::Explicit { min_window } => write!(f, "{min_window}"),
        }
    }
}

/// `--lags {N | bic:N}`
#[derive(Debug, Clone, Copy)]
pub struct LagsArg(pub AdfSpec);

impl FromStr for LagsArg {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        if let Some(max) = s.strip_prefix("bic:") {
            return max
                .parse::<usize>()
                .map(|m| LagsArg(AdfSpec::bic(m)))
                .map_err(|_| format!("expected bic:N, got {s:?}"));
        }
        s.parse::<usize>()
            .map(|k| LagsArg(AdfSpec::fixed(k)))
            .map_err(|_| format!("expected a lag count or bic:N, got {s:?}"))
    }
}

impl fmt::Display for LagsArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0.lag_rule {
            crate::adf::LagRule::Fixed { lags } => write!(f, "{lags}"),
            crate::adf::LagRule::Bic { max_lags } => write!(f, "bic:{max_lags}"),
        }
    }
}

/// `--min-duration {N | logT}`
#[derive(Debug, Clone, Copy)]
pub struct MinDurationArg(pub MinDuration);

impl FromStr for MinDurationArg {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("logt") {
            return Ok(MinDurationArg(MinDuration::LogT));
        }
        s.parse::<usize>()
            .map(|observations| MinDurationArg(MinDuration::Fixed { observations }))
            .map_err(|_| format!("expected an observation count or 'logT', got {s:?}"))
    }
}

impl fmt::Display for MinDurationArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            MinDuration::LogT => write!(f, "logT"),
            MinDuration::Fixed { observations } => write!(f, "{observations}"),
        }
    }
}

/// Flags shared by the statistics-producing commands.
#[derive(Debug, Args, Clone)]
pub struct StatFlags {
    /// Simulation seed
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Monte Carlo replications for critical values
    #[arg(long, default_value_t = 2000)]
    pub reps: usize,
    /// Minimum window: observation count or 'phillips'
    #[arg(long, default_value = "phillips")]
    pub min_window: MinWindowArg,
    /// Lag order: fixed count or 'bic:N'
    #[arg(long, default_value = "0")]
    pub lags: LagsArg,
    /// Stamping level (must be one of the simulated quantiles)
    #[arg(long, default_value_t = 0.95)]
    pub level: f64,
    /// Minimum episode duration: observation count or 'logT'
    #[arg(long, default_value = "1")]
    pub min_duration: MinDurationArg,
}

// ---- run directory and manifest ----

#[derive(Debug, Serialize)]
struct InputDigest {
    path: String,
    sha256: String,
}

/// Collects outputs and input digests while a command runs, then writes
/// `manifest.json`.
pub(crate) struct RunDir {
    root: PathBuf,
    inputs: Vec<InputDigest>,
    outputs: Vec<String>,
    notes: Vec<String>,
}

impl RunDir {
    pub fn create(root: &Path) -> Result<Self> {
        std::fs::create_dir_all(root).map_err(|source| Error::Io {
            path: root.display().to_string(),
            source,
        })?;
        Ok(Self {
            root: root.to_path_buf(),
            inputs: Vec::new(),
            outputs: Vec::new(),
            notes: Vec::new(),
        })
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn record_input(&mut self, path: &Path) -> Result<()> {
        let bytes = std::fs::read(path).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        let digest = Sha256::digest(&bytes);
        let mut hex = String::with_capacity(64);
        for b in digest {
            hex.push_str(&format!("{b:02x}"));
        }
        self.inputs.push(InputDigest {
            path: path.display().to_string(),
            sha256: hex,
        });
        Ok(())
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn write(&mut self, rel: &str, content: &str) -> Result<PathBuf> {
        let path = self.root.join(rel);
        if let Some(parent) = path.parent() {
            std::fs::create_dir_all(parent).map_err(|source| Error::Io {
                path: parent.display().to_string(),
                source,
            })?;
        }
        std::fs::write(&path, content).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        self.outputs.push(rel.to_string());
        Ok(path)
    }

    pub fn write_json<T: Serialize>(&mut self, rel: &str, value: &T) -> Result<PathBuf> {
        let mut text = serde_json::to_string_pretty(value)?;
        text.push('\n');
        self.write(rel, &text)
    }

    /// Finalizes the run by writing the manifest.
    pub fn finish(mut self, command: &str, parameters: serde_json::Value) -> Result<()> {
        #[derive(Serialize)]
        struct Manifest<'a> {
            command: &'a str,
            package: &'a str,
            version: &'a str,
            parameters: serde_json::Value,
            inputs: &'a [InputDigest],
            outputs: &'a [String],
            notes: &'a [String],
        }
        self.outputs.push("manifest.json".to_string());
        let manifest = Manifest {
            command,
            package: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            parameters,
            inputs: &self.inputs,
            outputs: &self.outputs,
            notes: &self.notes,
        };
        let mut text = serde_json::to_string_pretty(&manifest)?;
        text.push('\n');
        let path = self.root.join("manifest.json");
        std::fs::write(&path, text).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })
    }
}

pub(crate) fn parse_month_arg(s: &str) -> std::result::Result<MonthIndex, String> {
    s.parse::<MonthIndex>().map_err(|e| e.to_string())
}
