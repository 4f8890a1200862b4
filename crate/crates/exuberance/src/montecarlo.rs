//! Null-distribution simulation and critical-value tables.
//!
//! The null is a driftless Gaussian random walk with unit innovation
//! variance and y₀ = 0. Each replication draws from its own counter-based
//! stream derived from `(seed, rep)`, so tables are identical under any
//! parallel schedule and reproducible across machines for pinned
//! generator versions.

use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::adf::AdfSpec;
use crate::error::{Error, Result};
use crate::recursive::{self, WindowPolicy};

/// Algorithm identifier embedded in every table; bump when the stream
/// derivation or normal sampler changes.
pub const GENERATOR_ID: &str = "chacha8[stream=rep]/ziggurat-normal/rand_chacha-0.9/rand_distr-0.5";

pub const DEFAULT_REPS: usize = 2000;
pub const DEFAULT_QUANTILES: [f64; 3] = [0.90, 0.95, 0.99];
const MIN_REPS: usize = 100;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McConfig {
    pub reps: usize,
    pub seed: u64,
    pub t: usize,
    pub policy: WindowPolicy,
    pub spec: AdfSpec,
    pub quantiles: Vec<f64>,
}

impl McConfig {
    pub fn new(t: usize, seed: u64) -> Self {
        Self {
            reps: DEFAULT_REPS,
            seed,
            t,
            policy: WindowPolicy::Phillips,
            spec: AdfSpec::default(),
            quantiles: DEFAULT_QUANTILES.to_vec(),
        }
    }

    pub fn with_reps(mut self, reps: usize) -> Self {
        self.reps = reps;
        self
    }

    pub fn with_policy(mut self, policy: WindowPolicy) -> Self {
        self.policy = policy;
        self
    }

    pub fn with_spec(mut self, spec: AdfSpec) -> Self {
        self.spec = spec;
        self
    }

    fn validate(&self) -> Result<usize> {
        if self.reps < MIN_REPS {
            return Err(Error::InsufficientReps {
                reps: self.reps,
                min: MIN_REPS,
            });
        }
        let sorted = self.quantiles.windows(2).all(|w| w[0] < w[1]);
        let in_range = self.quantiles.iter().all(|&q| q > 0.0 && q < 1.0);
        if self.quantiles.is_empty() || !sorted || !in_range {
            return Err(Error::BadQuantiles(self.quantiles.clone()));
        }
        self.policy.resolve(self.t, &self.spec)
    }

    /// Cache key: every parameter that changes the simulated distribution.
    pub fn fingerprint(&self) -> String {
        let w0 = self
            .policy
            .resolve(self.t, &self.spec)
            .map(|w| w.to_string())
            .unwrap_or_else(|_| "invalid".to_string());
        let lag = match self.spec.lag_rule {
            crate::adf::LagRule::Fixed { lags } => format!("k{lags}"),
            crate::adf::LagRule::Bic { max_lags } => format!("bic{max_lags}"),
        };
        let qs: Vec<String> = self.quantiles.iter().map(|q| format!("{q}")).collect();
        format!(
            "t={};w0={};lags={};reps={};seed={};q={};gen={}",
            self.t,
            w0,
            lag,
            self.reps,
            self.seed,
            qs.join("|"),
            GENERATOR_ID
        )
    }
}

/// Empirical quantiles of the null distribution for each statistic, plus
/// the per-observation BSADF quantile sequence from the same draws.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriticalValueTable {
    pub config: McConfig,
    pub generator: String,
    pub min_window: usize,
    /// One value per requested quantile, in quantile order.
    pub adf_cv: Vec<f64>,
    pub sadf_cv: Vec<f64>,
    pub gsadf_cv: Vec<f64>,
    /// `bsadf_cv_seq[qi][j]` is the quantile `qi` critical value at
    /// observation `min_window + j`.
    pub bsadf_cv_seq: Vec<Vec<f64>>,
}

impl CriticalValueTable {
    fn quantile_position(&self, level: f64) -> Option<usize> {
        self.config
            .quantiles
            .iter()
            .position(|&q| (q - level).abs() < 1e-12)
    }

    pub fn gsadf_cv_at(&self, level: f64) -> Option<f64> {
        self.quantile_position(level).map(|i| self.gsadf_cv[i])
    }

    pub fn sadf_cv_at(&self, level: f64) -> Option<f64> {
        self.quantile_position(level).map(|i| self.sadf_cv[i])
    }

    pub fn adf_cv_at(&self, level: f64) -> Option<f64> {
        self.quantile_position(level).map(|i| self.adf_cv[i])
    }

    pub fn bsadf_cv_at(&self, level: f64) -> Option<&[f64]> {
        self.quantile_position(level)
            .map(|i| self.bsadf_cv_seq[i].as_slice())
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let json = serde_json::to_string_pretty(self)?;
        std::fs::write(path, json).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        Ok(serde_json::from_str(&text)?)
    }

    /// Loads a cached table, refusing one whose simulation fingerprint
    /// differs from `expected`.
    pub fn load_matching(path: impl AsRef<Path>, expected: &McConfig) -> Result<Self> {
        let table = Self::load(path)?;
        let found = table.config.fingerprint();
        let want = expected.fingerprint();
        if found != want {
            return Err(Error::TableMismatch {
                expected: want,
                found,
            });
        }
        Ok(table)
    }
}

struct RepOutcome {
    adf: f64,
    sadf: f64,
    gsadf: f64,
    bsadf: Vec<f64>,
}

/// Draws the null paths, evaluates the recursive statistics on each, and
/// collects the requested quantiles. Deterministic given the seed.
pub fn simulate_null(config: &McConfig) -> Result<CriticalValueTable> {
    let w0 = config.validate()?;
    let rows: Vec<std::result::Result<RepOutcome, Error>> = (0..config.reps)
        .into_par_iter()
        .map(|rep| {
            let y = null_path(config.seed, rep as u64, config.t);
            let scan = recursive::scan(&y, &config.policy, &config.spec)?;
            Ok(RepOutcome {
                adf: scan.adf_full,
                sadf: scan.sadf,
                gsadf: scan.gsadf,
                bsadf: scan.bsadf_seq.into_iter().map(|(_, v)| v).collect(),
            })
        })
        .collect();

    let mut outcomes = Vec::with_capacity(rows.len());
    for (rep, row) in rows.into_iter().enumerate() {
        match row {
            Ok(o) => outcomes.push(o),
            Err(source) => {
                // A window failure under the continuous null has
                // probability zero; treat any occurrence as fatal.
                return Err(Error::NullSimulationFailed {
                    rep,
                    source: Box::new(source),
                });
            }
        }
    }
    aggregate(config, w0, &outcomes)
}

/// Quantile aggregation, separated from the simulation so rep order can
/// be permuted in tests without re-drawing.
fn aggregate(config: &McConfig, w0: usize, outcomes: &[RepOutcome]) -> Result<CriticalValueTable> {
    let qs = &config.quantiles;
    let collect_cv = |get: &dyn Fn(&RepOutcome) -> f64| -> Result<Vec<f64>> {
        let values: Vec<f64> = outcomes.iter().map(get).collect();
        qs.iter().map(|&q| quantile(&values, q)).collect()
    };
    let adf_cv = collect_cv(&|o| o.adf)?;
    let sadf_cv = collect_cv(&|o| o.sadf)?;
    let gsadf_cv = collect_cv(&|o| o.gsadf)?;

    let seq_len = config.t - w0 + 1;
    let mut bsadf_cv_seq = vec![Vec::with_capacity(seq_len); qs.len()];
    let mut column = vec![0.0; outcomes.len()];
    for j in 0..seq_len {
        for (i, o) in outcomes.iter().enumerate() {
            column[i] = o.bsadf[j];
        }
        for (qi, &q) in qs.iter().enumerate() {
            bsadf_cv_seq[qi].push(quantile(&column, q)?);
        }
    }

    let table = CriticalValueTable {
        config: config.clone(),
        generator: GENERATOR_ID.to_string(),
        min_window: w0,
        adf_cv,
        sadf_cv,
        gsadf_cv,
        bsadf_cv_seq,
    };
    debug_assert!(table
        .gsadf_cv
        .iter()
        .zip(&table.sadf_cv)
        .all(|(g, s)| g >= s));
    Ok(table)
}

/// The rep's random-walk path: y₀ = 0 (not emitted), unit-normal steps.
pub fn null_path(seed: u64, rep: u64, t: usize) -> Vec<f64> {
    let mut rng = stream_rng(seed, rep);
    let mut level = 0.0;
    (0..t)
        .map(|_| {
            let e: f64 = StandardNormal.sample(&mut rng);
            level += e;
            level
        })
        .collect()
}

/// Independent generator for replication `rep` of run `seed`.
pub fn stream_rng(seed: u64, rep: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(rep.wrapping_add(1));
    rng
}

/// Order statistic with linear interpolation between closest ranks (the
/// "type 7" convention): rank `h = (n−1)p`, interpolate between
/// `floor(h)` and `ceil(h)`.
pub fn quantile(values: &[f64], p: f64) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::EmptyInput);
    }
    if !(0.0..1.0).contains(&p) || p == 0.0 {
        return Err(Error::BadQuantiles(vec![p]));
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite statistics"));
    let h = (sorted.len() - 1) as f64 * p;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    if lo == hi {
        Ok(sorted[lo])
    } else {
        let frac = h - lo as f64;
        Ok(sorted[lo] + frac * (sorted[hi] - sorted[lo]))
    }
}
