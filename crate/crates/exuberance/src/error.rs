//! Crate-wide error type.

use crate::month::MonthIndex;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    // ---- series construction and ingestion ----
    #[error("input contains no data rows")]
    EmptyInput,
    #[error("series '{label}' must contain at least 2 observations, got {len}")]
    SeriesTooShort { label: String, len: usize },
    #[error("series '{label}' has a non-finite value at {month}")]
    NonFiniteValue { label: String, month: MonthIndex },
    #[error("missing month {0}: monthly series must be gap-free")]
    MissingMonth(MonthIndex),
    #[error("duplicate date {0}")]
    DuplicateDate(MonthIndex),
    #[error("non-numeric value {value:?} on line {line}")]
    NonNumericValue { line: usize, value: String },
    #[error("unparseable date {value:?} on line {line}: expected YYYY-MM or YYYYMmm")]
    BadDate { line: usize, value: String },
    #[error("CSV is missing column '{0}'")]
    MissingColumn(String),
    #[error("CSV read failed: {0}")]
    Csv(#[from] csv::Error),
    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),

    // ---- transforms and fundamentals ----
    #[error("non-positive value at {month} in '{label}': logs require strictly positive inputs")]
    NonPositiveValue { label: String, month: MonthIndex },
    #[error("common date range {start}..{end} has {len} observations; at least {min} required")]
    RangeTooShort {
        start: MonthIndex,
        end: MonthIndex,
        len: usize,
        min: usize,
    },
    #[error("input date ranges do not overlap")]
    NoCommonRange,
    #[error("break month {0} must lie strictly inside the sample range")]
    BreakOutOfRange(MonthIndex),
    #[error("requested range {start}..{end} is outside the series range")]
    SliceOutOfRange { start: MonthIndex, end: MonthIndex },

    // ---- regression windows ----
    #[error("window [{r1}, {r2}] has {len} observations; {min} required for {lags} lag(s)")]
    WindowTooShort {
        r1: usize,
        r2: usize,
        len: usize,
        min: usize,
        lags: usize,
    },
    #[error("singular design in window [{r1}, {r2}]: {reason}")]
    SingularDesign {
        r1: usize,
        r2: usize,
        reason: &'static str,
    },
    #[error("every window ending at observation {r2} is singular ({count} skipped)")]
    AllWindowsSingular { r2: usize, count: usize },
    #[error("minimum window {w0} exceeds the sample length {t}")]
    MinWindowTooLarge { w0: usize, t: usize },
    #[error("explicit minimum window {w0} is below {min}, the shortest window for {lags} lag(s)")]
    MinWindowBelowFloor { w0: usize, min: usize, lags: usize },

    // ---- Monte Carlo ----
    #[error("at least {min} replications required, got {reps}")]
    InsufficientReps { reps: usize, min: usize },
    #[error("quantiles must be strictly inside (0,1) and sorted ascending, got {0:?}")]
    BadQuantiles(Vec<f64>),
    #[error("null simulation failed on replication {rep}: {source}")]
    NullSimulationFailed {
        rep: usize,
        #[source]
        source: Box<Error>,
    },
    #[error("cached table fingerprint mismatch: expected {expected}, file contains {found}")]
    TableMismatch { expected: String, found: String },

    // ---- date-stamping ----
    #[error("statistic sequence has {got} entries but the critical sequence has {want}")]
    LengthMismatch { got: usize, want: usize },
    #[error("episode {start}..{end} lies outside the covered range {range_start}..{range_end}")]
    EpisodeOutOfRange {
        start: MonthIndex,
        end: MonthIndex,
        range_start: MonthIndex,
        range_end: MonthIndex,
    },

    // ---- logit ----
    #[error("indicator is degenerate: every outcome equals {0}")]
    AllSameOutcome(u8),
    #[error(
        "perfect separation detected after {iterations} iteration(s): likelihood is unbounded"
    )]
    PerfectSeparation { iterations: usize },
    #[error("covariates are collinear: {0}")]
    CollinearCovariates(&'static str),
    #[error("Newton iterations did not converge within {max_iter} iterations")]
    NoConvergence { max_iter: usize },
    #[error("fit has not converged; refusing to compute downstream quantities")]
    NotConverged,
    #[error("{n} observations are too few for {params} parameters (need {required})")]
    TooFewObservations {
        n: usize,
        params: usize,
        required: usize,
    },
    #[error("covariate '{name}' has {len} rows but the indicator has {want}")]
    PanelMisaligned {
        name: String,
        len: usize,
        want: usize,
    },

    // ---- data generation ----
    #[error("invalid generator config: {0}")]
    ConfigInvalid(String),

    // ---- CLI / config ----
    #[error("{0}")]
    BadArgument(String),
    #[error("config file error: {0}")]
    BadConfig(String),
}
