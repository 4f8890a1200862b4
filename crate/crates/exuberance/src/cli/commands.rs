//! Implementations of the seven subcommands.

use std::path::{Path, PathBuf};

use clap::Args;
use serde_json::json;

use crate::cli::config::ConfigFile;
use crate::cli::report;
use crate::cli::{parse_month_arg, LagsArg, MinDurationArg, MinWindowArg, RunDir, StatFlags};
use crate::datestamp::{stamp_episodes, to_indicator, BubbleIndicator, EpisodeSet};
use crate::dgp::{generate, BubbleDgpConfig, Collapse};
use crate::error::{Error, Result};
use crate::fundamentals::{build_fundamentals, split_regimes, DEFAULT_BREAK};
use crate::logit::{fit_logit, CovariatePanel, LogitFit, Transform};
use crate::montecarlo::{simulate_null, CriticalValueTable, McConfig, DEFAULT_QUANTILES};
use crate::month::MonthIndex;
use crate::plot::render_bsadf_svg;
use crate::recursive::{scan, RecursiveResult};
use crate::series::{ingest_csv, Series};

// ---------------------------------------------------------------- shared

fn write_series_csv(dir: &mut RunDir, rel: &str, series: &Series) -> Result<()> {
    dir.write(rel, &series.to_csv_string())?;
    Ok(())
}

fn bsadf_csv(series_start: MonthIndex, result: &RecursiveResult, cv: &[f64]) -> String {
    let mut out = String::from("obs_index,date,bsadf,cv\n");
    for (&(idx, value), &c) in result.bsadf_seq.iter().zip(cv) {
        let month = series_start.plus(idx as i64 - 1);
        out.push_str(&format!("{idx},{month},{value},{c}\n"));
    }
    out
}

/// The full per-series evaluation used by `test` and `pipeline`:
/// statistics, stamping, and artifact writes under `prefix/`.
#[allow(clippy::too_many_arguments)]
fn evaluate_series(
    dir: &mut RunDir,
    prefix: &str,
    label: &str,
    series: &Series,
    table: &CriticalValueTable,
    result: &RecursiveResult,
    level: f64,
    min_duration: usize,
    plots: bool,
) -> Result<(EpisodeSet, BubbleIndicator, String)> {
    let cv_seq = table
        .bsadf_cv_at(level)
        .ok_or_else(|| bad_level(level, table))?
        .to_vec();
    let episodes = stamp_episodes(
        &result.bsadf_seq,
        &cv_seq,
        min_duration,
        series.start(),
        Some(level),
    )?;

    let w0 = result.policy_echo.min_window;
    let covered_start = series.start().plus(w0 as i64 - 1);
    let covered_len = series.len() - w0 + 1;
    let indicator = to_indicator(&episodes, covered_start, covered_len)?;

    let p = |name: &str| format!("{prefix}{name}");
    dir.write_json(&p("result.json"), result)?;
    dir.write(&p("bsadf.csv"), &bsadf_csv(series.start(), result, &cv_seq))?;
    dir.write(&p("episodes.csv"), &episodes.to_csv_string())?;
    dir.write(&p("episodes.txt"), &format!("{}\n", episodes.summary()))?;
    dir.write(&p("indicator.csv"), &indicator.to_csv_string())?;
    if plots {
        let svg = render_bsadf_svg(label, &result.bsadf_seq, &cv_seq, &episodes, series.start());
        dir.write(&p("plot.svg"), &svg)?;
    }
    let panel = report::test_panel(label, result, table, &episodes, level);
    dir.write(&p("panel.txt"), &panel)?;
    Ok((episodes, indicator, panel))
}

fn bad_level(level: f64, table: &CriticalValueTable) -> Error {
    Error::BadArgument(format!(
        "level {level} is not among the simulated quantiles {:?}",
        table.config.quantiles
    ))
}

// ---------------------------------------------------------- fundamentals

#[derive(Debug, Args)]
pub struct FundamentalsArgs {
    /// Raw (unlogged) nominal exchange rate CSV
    #[arg(long)]
    pub spot: PathBuf,
    /// Domestic consumer price index CSV
    #[arg(long)]
    pub cpi: PathBuf,
    /// Foreign consumer price index CSV
    #[arg(long)]
    pub cpi_star: PathBuf,
    /// Domestic producer price index CSV
    #[arg(long)]
    pub ppi: PathBuf,
    /// Foreign producer price index CSV
    #[arg(long)]
    pub ppi_star: PathBuf,
    #[arg(long, default_value = "date")]
    pub date_column: String,
    #[arg(long, default_value = "value")]
    pub value_column: String,
    #[arg(long)]
    pub out: PathBuf,
}

pub fn fundamentals(args: FundamentalsArgs) -> Result<()> {
    let mut dir = RunDir::create(&args.out)?;
    let mut load = |path: &Path| -> Result<Series> {
        dir.record_input(path)?;
        ingest_csv(path, &args.date_column, &args.value_column)
    };
    let spot = load(&args.spot)?;
    let cpi = load(&args.cpi)?;
    let cpi_star = load(&args.cpi_star)?;
    let ppi = load(&args.ppi)?;
    let ppi_star = load(&args.ppi_star)?;

    let (fs, trim) = build_fundamentals(&spot, &cpi, &cpi_star, &ppi, &ppi_star)?;
    write_series_csv(&mut dir, "s.csv", &fs.s)?;
    write_series_csv(&mut dir, "f_traded.csv", &fs.f_traded)?;
    write_series_csv(&mut dir, "f_nontraded.csv", &fs.f_nontraded)?;
    write_series_csv(&mut dir, "s_minus_ft.csv", &fs.s_minus_ft)?;
    write_series_csv(&mut dir, "s_minus_fn.csv", &fs.s_minus_fn)?;

    println!(
        "fundamentals: {} observations on {}..{} ({} rows trimmed by intersection)",
        fs.len(),
        fs.start(),
        fs.end(),
        trim.total_trimmed()
    );
    dir.finish(
        "fundamentals",
        json!({
            "date_column": args.date_column,
            "value_column": args.value_column,
            "common_range": trim,
        }),
    )
}

// ------------------------------------------------------------------ test

#[derive(Debug, Args)]
pub struct TestArgs {
    /// Series CSV to test
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value = "date")]
    pub date_column: String,
    #[arg(long, default_value = "value")]
    pub value_column: String,
    #[command(flatten)]
    pub stat: StatFlags,
    /// Reuse a cached critical-value table (refused on any parameter mismatch)
    #[arg(long)]
    pub cv_table: Option<PathBuf>,
    /// Skip the SVG plot
    #[arg(long)]
    pub no_plot: bool,
    #[arg(long)]
    pub out: PathBuf,
}

pub fn test(args: TestArgs) -> Result<()> {
    let mut dir = RunDir::create(&args.out)?;
    dir.record_input(&args.input)?;
    let series = ingest_csv(&args.input, &args.date_column, &args.value_column)?;

    let policy = args.stat.min_window.0;
    let spec = args.stat.lags.0;
    let config = McConfig {
        reps: args.stat.reps,
        seed: args.stat.seed,
        t: series.len(),
        policy,
        spec,
        quantiles: DEFAULT_QUANTILES.to_vec(),
    };
    let w0 = policy.resolve(series.len(), &spec)?;

    let (table, cv_source) = match &args.cv_table {
        Some(path) => {
            dir.record_input(path)?;
            (CriticalValueTable::load_matching(path, &config)?, "loaded")
        }
        None => (simulate_null(&config)?, "simulated"),
    };
    dir.write_json("cv_table.json", &table)?;

    let result = scan(series.values(), &policy, &spec)?;
    let min_duration = args.stat.min_duration.0.resolve(series.len());
    let (_, _, panel) = evaluate_series(
        &mut dir,
        "",
        series.label(),
        &series,
        &table,
        &result,
        args.stat.level,
        min_duration,
        !args.no_plot,
    )?;
    print!("{panel}");

    dir.finish(
        "test",
        json!({
            "input": args.input.display().to_string(),
            "date_column": args.date_column,
            "value_column": args.value_column,
            "t": series.len(),
            "min_window": w0,
            "policy": policy,
            "lag_rule": spec.lag_rule,
            "reps": args.stat.reps,
            "seed": args.stat.seed,
            "level": args.stat.level,
            "min_duration": min_duration,
            "quantiles": DEFAULT_QUANTILES,
            "cv_source": cv_source,
            "generator": table.generator,
        }),
    )
}

// -------------------------------------------------------------- critvals

#[derive(Debug, Args)]
pub struct CritvalsArgs {
    /// Sample length to simulate
    #[arg(long)]
    pub t: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = 2000)]
    pub reps: usize,
    #[arg(long, default_value = "phillips")]
    pub min_window: MinWindowArg,
    #[arg(long, default_value = "0")]
    pub lags: LagsArg,
    /// Comma-separated quantiles
    #[arg(long, value_delimiter = ',')]
    pub quantiles: Option<Vec<f64>>,
    #[arg(long)]
    pub out: PathBuf,
}

pub fn critvals(args: CritvalsArgs) -> Result<()> {
    let mut dir = RunDir::create(&args.out)?;
    let config = McConfig {
        reps: args.reps,
        seed: args.seed,
        t: args.t,
        policy: args.min_window.0,
        spec: args.lags.0,
        quantiles: args
            .quantiles
            .clone()
            .unwrap_or_else(|| DEFAULT_QUANTILES.to_vec()),
    };
    let table = simulate_null(&config)?;
    dir.write_json("cv_table.json", &table)?;

    println!(
        "critical values for T={} (min window {}):",
        args.t, table.min_window
    );
    for (i, &q) in table.config.quantiles.iter().enumerate() {
        println!(
            "  {:>4.1}%  adf {:>8.4}  sadf {:>8.4}  gsadf {:>8.4}",
            q * 100.0,
            table.adf_cv[i],
            table.sadf_cv[i],
            table.gsadf_cv[i]
        );
    }
    let fingerprint = config.fingerprint();
    dir.finish(
        "critvals",
        json!({
            "config": config,
            "fingerprint": fingerprint,
            "generator": table.generator,
        }),
    )
}

// ----------------------------------------------------------------- stamp

#[derive(Debug, Args)]
pub struct StampArgs {
    /// result.json produced by the test command
    #[arg(long)]
    pub result: PathBuf,
    /// cv_table.json with matching sample length and window
    #[arg(long)]
    pub cv_table: PathBuf,
    /// Month of observation 1 of the tested series
    #[arg(long, value_parser = parse_month_arg)]
    pub start_month: MonthIndex,
    #[arg(long, default_value_t = 0.95)]
    pub level: f64,
    #[arg(long, default_value = "1")]
    pub min_duration: MinDurationArg,
    #[arg(long)]
    pub out: PathBuf,
}

pub fn stamp(args: StampArgs) -> Result<()> {
    let mut dir = RunDir::create(&args.out)?;
    dir.record_input(&args.result)?;
    dir.record_input(&args.cv_table)?;

    let text = std::fs::read_to_string(&args.result).map_err(|source| Error::Io {
        path: args.result.display().to_string(),
        source,
    })?;
    let result: RecursiveResult = serde_json::from_str(&text)?;
    let table = CriticalValueTable::load(&args.cv_table)?;
    if table.min_window != result.policy_echo.min_window {
        return Err(Error::TableMismatch {
            expected: format!("min_window={}", result.policy_echo.min_window),
            found: format!("min_window={}", table.min_window),
        });
    }
    let cv_seq = table
        .bsadf_cv_at(args.level)
        .ok_or_else(|| bad_level(args.level, &table))?;
    if cv_seq.len() != result.bsadf_seq.len() {
        return Err(Error::LengthMismatch {
            got: result.bsadf_seq.len(),
            want: cv_seq.len(),
        });
    }

    let t = result.bsadf_seq.last().map(|&(r2, _)| r2).unwrap_or(0);
    let min_duration = args.min_duration.0.resolve(t);
    let episodes = stamp_episodes(
        &result.bsadf_seq,
        cv_seq,
        min_duration,
        args.start_month,
        Some(args.level),
    )?;
    let covered_start = args
        .start_month
        .plus(result.policy_echo.min_window as i64 - 1);
    let indicator = to_indicator(&episodes, covered_start, result.bsadf_seq.len())?;

    dir.write("episodes.csv", &episodes.to_csv_string())?;
    dir.write("episodes.txt", &format!("{}\n", episodes.summary()))?;
    dir.write("indicator.csv", &indicator.to_csv_string())?;
    println!("episodes: {}", episodes.summary());

    dir.finish(
        "stamp",
        json!({
            "result": args.result.display().to_string(),
            "cv_table": args.cv_table.display().to_string(),
            "start_month": args.start_month,
            "level": args.level,
            "min_duration": min_duration,
        }),
    )
}

// ----------------------------------------------------------------- logit

#[derive(Debug, Clone)]
pub struct CovariateArg {
    pub name: String,
    pub path: PathBuf,
}

fn parse_covariate(s: &str) -> std::result::Result<CovariateArg, String> {
    let (name, path) = s
        .split_once('=')
        .ok_or_else(|| format!("expected NAME=path, got {s:?}"))?;
    if name.trim().is_empty() {
        return Err("covariate name must be non-empty".to_string());
    }
    Ok(CovariateArg {
        name: name.trim().to_string(),
        path: PathBuf::from(path.trim()),
    })
}

#[derive(Debug, Args)]
pub struct LogitArgs {
    /// Indicator CSV (date, 0/1 values)
    #[arg(long)]
    pub indicator: PathBuf,
    #[arg(long, default_value = "date")]
    pub date_column: String,
    #[arg(long, default_value = "indicator")]
    pub indicator_column: String,
    /// Covariate as NAME=path.csv; repeatable
    #[arg(long = "covariate", value_parser = parse_covariate, required = true)]
    pub covariates: Vec<CovariateArg>,
    /// Covariate names to enter in logs (comma separated)
    #[arg(long = "log", value_delimiter = ',')]
    pub log_names: Vec<String>,
    #[arg(long, default_value = "value")]
    pub covariate_column: String,
    #[arg(long)]
    pub out: PathBuf,
}

fn series_to_indicator(series: &Series) -> Result<Vec<u8>> {
    series
        .iter()
        .map(|(month, v)| {
            if v == 0.0 {
                Ok(0u8)
            } else if v == 1.0 {
                Ok(1u8)
            } else {
                Err(Error::BadArgument(format!(
                    "indicator value at {month} is {v}; expected 0 or 1"
                )))
            }
        })
        .collect()
}

/// Aligns the indicator and covariates on their common date range and
/// fits the model.
fn fit_aligned(
    indicator: &Series,
    covariates: &[(String, Series, Transform)],
) -> Result<(LogitFit, MonthIndex, usize)> {
    let mut all: Vec<&Series> = vec![indicator];
    all.extend(covariates.iter().map(|(_, s, _)| s));
    let (start, end) = crate::fundamentals::common_range(&all).map_err(|_| {
        let ranges: Vec<String> = all
            .iter()
            .map(|s| format!("{} spans {}..{}", s.label(), s.start(), s.end()))
            .collect();
        Error::BadArgument(format!(
            "indicator and covariates share no common months: {}",
            ranges.join("; ")
        ))
    })?;
    let n = (end.months_since(&start) + 1) as usize;

    let indicator_values = series_to_indicator(&indicator.slice(start, end)?)?;
    let mut panel = CovariatePanel::new(n);
    for (name, series, transform) in covariates {
        let sliced = series.slice(start, end)?;
        panel.push(name.clone(), sliced.values(), *transform)?;
    }
    let fit = fit_logit(&indicator_values, &panel)?;
    Ok((fit, start, n))
}

pub fn logit(args: LogitArgs) -> Result<()> {
    let mut dir = RunDir::create(&args.out)?;
    dir.record_input(&args.indicator)?;
    let indicator = ingest_csv(&args.indicator, &args.date_column, &args.indicator_column)?;

    for name in &args.log_names {
        if !args.covariates.iter().any(|c| &c.name == name) {
            return Err(Error::BadArgument(format!(
                "--log names unknown covariate '{name}'"
            )));
        }
    }
    let mut covariates = Vec::new();
    for cov in &args.covariates {
        dir.record_input(&cov.path)?;
        let series =
            ingest_csv(&cov.path, &args.date_column, &args.covariate_column)?.with_label(&cov.name);
        let transform = if args.log_names.contains(&cov.name) {
            Transform::Log
        } else {
            Transform::Level
        };
        covariates.push((cov.name.clone(), series, transform));
    }

    let (fit, start, n) = fit_aligned(&indicator, &covariates)?;
    dir.write_json("fit.json", &fit)?;
    let text = report::logit_report(&fit);
    dir.write("report.txt", &text)?;
    print!("{text}");

    dir.finish(
        "logit",
        json!({
            "indicator": args.indicator.display().to_string(),
            "covariates": args.covariates.iter().map(|c| json!({
                "name": c.name,
                "path": c.path.display().to_string(),
                "transform": if args.log_names.contains(&c.name) { "log" } else { "level" },
            })).collect::<Vec<_>>(),
            "common_start": start,
            "n": n,
        }),
    )
}

// -------------------------------------------------------------- simulate

fn parse_window(s: &str) -> std::result::Result<(usize, usize), String> {
    let (a, b) = s
        .split_once(':')
        .ok_or_else(|| format!("expected start:length, got {s:?}"))?;
    let start = a.parse().map_err(|_| format!("bad start in {s:?}"))?;
    let length = b.parse().map_err(|_| format!("bad length in {s:?}"))?;
    Ok((start, length))
}

fn parse_collapse(s: &str) -> std::result::Result<Collapse, String> {
    if s.eq_ignore_ascii_case("reset") {
        return Ok(Collapse::ResetToZero);
    }
    if let Some(f) = s.strip_prefix("fraction:") {
        let fraction: f64 = f.parse().map_err(|_| format!("bad fraction in {s:?}"))?;
        return Ok(Collapse::Fraction { fraction });
    }
    Err(format!("expected 'reset' or 'fraction:F', got {s:?}"))
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Observations to generate
    #[arg(long, default_value_t = 300)]
    pub t: usize,
    /// Per-step bubble growth factor 1/alpha
    #[arg(long, default_value_t = 1.05)]
    pub growth: f64,
    /// Bubble window start:length (1-based); repeatable
    #[arg(long = "bubble", value_parser = parse_window)]
    pub bubbles: Vec<(usize, usize)>,
    /// Innovation standard deviation
    #[arg(long, default_value_t = 1.0)]
    pub sd: f64,
    /// Bubble ignition level, in innovation standard deviations
    #[arg(long, default_value_t = crate::dgp::DEFAULT_IGNITION_SDS)]
    pub ignition: f64,
    /// Collapse rule: 'reset' or 'fraction:F'
    #[arg(long, default_value = "reset", value_parser = parse_collapse)]
    pub collapse: Collapse,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}

pub fn simulate(args: SimulateArgs) -> Result<()> {
    let mut dir = RunDir::create(&args.out)?;
    if args.growth <= 1.0 {
        return Err(Error::BadArgument(format!(
            "growth must exceed 1, got {}",
            args.growth
        )));
    }
    let config = BubbleDgpConfig {
        t: args.t,
        alpha: 1.0 / args.growth,
        bubble_windows: args.bubbles.clone(),
        innovation_sd: args.sd,
        ignition_sds: args.ignition,
        collapse: args.collapse,
        seed: args.seed,
    };
    let (series, truth) = generate(&config)?;
    write_series_csv(&mut dir, "series.csv", &series)?;
    dir.write_json("truth.json", &truth)?;
    println!(
        "simulated {} observations, ground truth: {}",
        series.len(),
        truth.summary()
    );
    dir.finish("simulate", json!({ "config": config }))
}

// -------------------------------------------------------------- pipeline

#[derive(Debug, Args)]
pub struct PipelineArgs {
    /// Pipeline config file (see the config schema in the README)
    #[arg(long, required_unless_present = "demo", conflicts_with = "demo")]
    pub config: Option<PathBuf>,
    /// Generate a bundled synthetic dataset and run on it
    #[arg(long)]
    pub demo: bool,
    /// Override the replication count (demo mode)
    #[arg(long)]
    pub reps: Option<usize>,
    /// Override the seed (demo mode)
    #[arg(long)]
    pub seed: Option<u64>,
    /// Disable SVG plots
    #[arg(long)]
    pub no_plot: bool,
    #[arg(long)]
    pub out: PathBuf,
}

struct PipelineParams {
    policy: crate::recursive::WindowPolicy,
    spec: crate::adf::AdfSpec,
    reps: usize,
    seed: u64,
    level: f64,
    min_duration: MinDurationArg,
    break_after: MonthIndex,
    break_defaulted: bool,
}

fn read_params(cfg: &ConfigFile) -> Result<PipelineParams> {
    let parse_flag = |key: &str, default: &str| -> String {
        cfg.get("test", key).unwrap_or(default).to_string()
    };
    let policy: MinWindowArg = parse_flag("min_window", "phillips")
        .parse()
        .map_err(Error::BadConfig)?;
    let lags: LagsArg = parse_flag("lags", "0").parse().map_err(Error::BadConfig)?;
    let min_duration: MinDurationArg = parse_flag("min_duration", "1")
        .parse()
        .map_err(Error::BadConfig)?;
    let reps: usize = parse_flag("reps", "2000")
        .parse()
        .map_err(|_| Error::BadConfig("reps must be an integer".into()))?;
    let seed: u64 = parse_flag("seed", "42")
        .parse()
        .map_err(|_| Error::BadConfig("seed must be an integer".into()))?;
    let level: f64 = parse_flag("level", "0.95")
        .parse()
        .map_err(|_| Error::BadConfig("level must be a probability".into()))?;
    let (break_after, break_defaulted) = match cfg.get("test", "break_after") {
        Some(text) => (
            text.parse::<MonthIndex>()
                .map_err(|e| Error::BadConfig(e.to_string()))?,
            false,
        ),
        None => (DEFAULT_BREAK, true),
    };
    Ok(PipelineParams {
        policy: policy.0,
        spec: lags.0,
        reps,
        seed,
        level,
        min_duration,
        break_after,
        break_defaulted,
    })
}

pub fn pipeline(args: PipelineArgs) -> Result<()> {
    let mut dir = RunDir::create(&args.out)?;

    let config_path = if args.demo {
        let path = write_demo_dataset(
            dir.root(),
            args.seed.unwrap_or(42),
            args.reps.unwrap_or(400),
        )?;
        dir.note(format!(
            "demo dataset generated under {}",
            path.parent().unwrap().display()
        ));
        path
    } else {
        args.config
            .clone()
            .expect("clap enforces --config without --demo")
    };
    dir.record_input(&config_path)?;
    let cfg = ConfigFile::load(&config_path)?;
    let params = read_params(&cfg)?;
    if params.break_defaulted {
        dir.note(format!("break_after not set; defaulted to {DEFAULT_BREAK}"));
    }

    let date_column = cfg
        .get("inputs", "date_column")
        .unwrap_or("date")
        .to_string();
    let value_column = cfg
        .get("inputs", "value_column")
        .unwrap_or("value")
        .to_string();
    let config_dir = config_path.parent().unwrap_or(Path::new(".")).to_path_buf();
    let load = |dir: &mut RunDir, key: &str| -> Result<Series> {
        let rel = cfg.require("inputs", key)?;
        let path = config_dir.join(rel);
        dir.record_input(&path)?;
        ingest_csv(&path, &date_column, &value_column)
    };

    // stage 1: fundamentals
    let spot = load(&mut dir, "spot")?;
    let cpi = load(&mut dir, "cpi")?;
    let cpi_star = load(&mut dir, "cpi_star")?;
    let ppi = load(&mut dir, "ppi")?;
    let ppi_star = load(&mut dir, "ppi_star")?;
    let (fs, trim) = build_fundamentals(&spot, &cpi, &cpi_star, &ppi, &ppi_star)?;
    write_series_csv(&mut dir, "fundamentals/s.csv", &fs.s)?;
    write_series_csv(&mut dir, "fundamentals/f_traded.csv", &fs.f_traded)?;
    write_series_csv(&mut dir, "fundamentals/f_nontraded.csv", &fs.f_nontraded)?;
    write_series_csv(&mut dir, "fundamentals/s_minus_ft.csv", &fs.s_minus_ft)?;
    write_series_csv(&mut dir, "fundamentals/s_minus_fn.csv", &fs.s_minus_fn)?;

    // stage 2: regime split
    let split = split_regimes(&fs, params.break_after)?;

    // covariates for stage 4, if configured
    let mut covariates: Vec<(String, Series, Transform)> = Vec::new();
    if cfg.has_section("logit") {
        let log_names: Vec<String> = cfg
            .get("logit", "log")
            .map(|s| s.split(',').map(|x| x.trim().to_string()).collect())
            .unwrap_or_default();
        for (name, rel) in cfg.prefixed("logit", "covariate") {
            let path = config_dir.join(&rel);
            dir.record_input(&path)?;
            let series = ingest_csv(&path, &date_column, &value_column)?.with_label(&name);
            let transform = if log_names.contains(&name) {
                Transform::Log
            } else {
                Transform::Level
            };
            covariates.push((name, series, transform));
        }
    }

    // stage 3: tests + stamping per regime and variant
    let mut panel_count = 0;
    let mut logit_runs: Vec<serde_json::Value> = Vec::new();
    for (regime, set) in split.panels() {
        let t = set.len();
        let mc = McConfig {
            reps: params.reps,
            seed: params.seed,
            t,
            policy: params.policy,
            spec: params.spec,
            quantiles: DEFAULT_QUANTILES.to_vec(),
        };
        let table = simulate_null(&mc)?;
        dir.write_json(&format!("tests/{regime}/cv_table.json"), &table)?;
        for (variant, series) in set.variants() {
            let prefix = format!("tests/{regime}/{variant}/");
            let result = scan(series.values(), &params.policy, &params.spec)?;
            let min_duration = params.min_duration.0.resolve(t);
            let label = format!("{regime}/{variant}");
            let (_, indicator, panel) = evaluate_series(
                &mut dir,
                &prefix,
                &label,
                series,
                &table,
                &result,
                params.level,
                min_duration,
                !args.no_plot,
            )?;
            println!("{panel}");
            panel_count += 1;

            // stage 4: logit attribution where the indicator is informative
            if !covariates.is_empty() {
                let indicator_series = Series::new(
                    format!("indicator_{label}"),
                    indicator.start,
                    indicator.values.iter().map(|&v| v as f64).collect(),
                )?;
                match fit_aligned(&indicator_series, &covariates) {
                    Ok((fit, start, n)) => {
                        let lp = format!("logit/{regime}/{variant}/");
                        dir.write_json(&format!("{lp}fit.json"), &fit)?;
                        dir.write(&format!("{lp}report.txt"), &report::logit_report(&fit))?;
                        logit_runs.push(json!({
                            "regime": regime,
                            "variant": variant,
                            "n": n,
                            "start": start,
                            "status": "fitted",
                        }));
                    }
                    // data outcomes of this panel, not run failures
                    Err(
                        reason @ (Error::AllSameOutcome(_)
                        | Error::PerfectSeparation { .. }
                        | Error::TooFewObservations { .. }),
                    ) => {
                        dir.note(format!("logit skipped for {label}: {reason}"));
                        logit_runs.push(json!({
                            "regime": regime,
                            "variant": variant,
                            "status": "skipped",
                            "reason": reason.to_string(),
                        }));
                    }
                    Err(other) => return Err(other),
                }
            }
        }
    }

    dir.finish(
        "pipeline",
        json!({
            "config": config_path.display().to_string(),
            "break_after": params.break_after,
            "break_defaulted": params.break_defaulted,
            "reps": params.reps,
            "seed": params.seed,
            "level": params.level,
            "policy": params.policy,
            "lag_rule": params.spec.lag_rule,
            "panels": panel_count,
            "common_range": trim,
            "logit": logit_runs,
        }),
    )
}

/// Writes the bundled synthetic dataset (five price CSVs plus three
/// covariates) and a config that runs on it; returns the config path.
fn write_demo_dataset(root: &Path, seed: u64, reps: usize) -> Result<PathBuf> {
    use crate::montecarlo::stream_rng;
    use rand_distr::{Distribution, StandardNormal};

    let data = root.join("demo_data");
    std::fs::create_dir_all(&data).map_err(|source| Error::Io {
        path: data.display().to_string(),
        source,
    })?;
    let t = 465;
    let start: MonthIndex = MonthIndex::new(1985, 1);

    // log spot: bubble path with one managed-regime and one free-regime window
    let dgp = BubbleDgpConfig {
        t,
        alpha: 1.0 / 1.06,
        bubble_windows: vec![(90, 30), (330, 25)],
        innovation_sd: 1.0,
        ignition_sds: crate::dgp::DEFAULT_IGNITION_SDS,
        collapse: Collapse::ResetToZero,
        seed,
    };
    let (path_series, truth) = generate(&dgp)?;
    // re-anchor ground-truth months: the generator dates observation 1 at
    // its own nominal start, while this dataset begins at `start`
    let truth = crate::datestamp::EpisodeSet {
        episodes: truth
            .episodes
            .iter()
            .map(|e| crate::datestamp::Episode {
                start: start.plus(e.start_index as i64 - 1),
                end: start.plus(e.end_index as i64 - 1),
                ..*e
            })
            .collect(),
        ..truth
    };
    let spot: Vec<f64> = path_series
        .values()
        .iter()
        .map(|v| 10_000.0 * (0.02 * v).exp())
        .collect();

    let walk = |stream: u64, scale: f64, base: f64| -> Vec<f64> {
        let mut rng = stream_rng(seed, stream);
        let mut level = 0.0;
        (0..t)
            .map(|_| {
                let e: f64 = StandardNormal.sample(&mut rng);
                level += e;
                base * (scale * level).exp()
            })
            .collect()
    };

    let write = |name: &str, values: Vec<f64>| -> Result<()> {
        let series = Series::new(name, start, values)?;
        let path = data.join(format!("{name}.csv"));
        std::fs::write(&path, series.to_csv_string()).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })
    };
    write("spot", spot)?;
    write("cpi", walk(10, 0.004, 100.0))?;
    write("cpi_star", walk(11, 0.003, 100.0))?;
    write("ppi", walk(12, 0.004, 100.0))?;
    write("ppi_star", walk(13, 0.003, 100.0))?;
    // uncertainty indices need real log-scale variation for a
    // well-scaled logit fit
    write("gpr", walk(14, 0.1, 100.0))?;
    write("gepu", walk(15, 0.1, 100.0))?;
    write("gpri", walk(16, 0.1, 100.0))?;

    let truth_json = serde_json::to_string_pretty(&truth)?;
    std::fs::write(data.join("truth.json"), truth_json).map_err(|source| Error::Io {
        path: data.join("truth.json").display().to_string(),
        source,
    })?;

    let config = format!(
        "# bundled synthetic demo
[inputs]
spot = spot.csv
cpi = cpi.csv
cpi_star = cpi_star.csv
ppi = ppi.csv
ppi_star = ppi_star.csv

[test]
min_window = phillips
lags = 0
reps = {reps}
seed = {seed}
level = 0.95
min_duration = 1

[logit]
covariate.GPR = gpr.csv
covariate.GEPU = gepu.csv
covariate.GPRI = gpri.csv
log = GPR,GEPU,GPRI
"
    );
    let config_path = data.join("run.conf");
    std::fs::write(&config_path, config).map_err(|source| Error::Io {
        path: config_path.display().to_string(),
        source,
    })?;
    Ok(config_path)
}
