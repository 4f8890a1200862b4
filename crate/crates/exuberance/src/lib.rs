//! Explosive-episode detection for monthly time series.
//!
//! The library detects explosive (bubble) episodes with recursive
//! right-tailed unit-root tests, simulates their finite-sample critical
//! values, date-stamps the episodes, constructs purchasing-power-parity
//! exchange-rate fundamentals, and attributes detected episodes to
//! covariates with a logit model.
//!
//! Start from the `examples/` directory for runnable walkthroughs of each
//! capability, or from [`recursive::scan`] for the core statistics.

pub mod adf;
pub mod cli;
pub mod datestamp;
pub mod dgp;
pub mod error;
pub mod fundamentals;
mod linalg;
pub mod logit;
pub mod montecarlo;
pub mod month;
pub mod plot;
pub mod recursive;
pub mod series;
pub mod special;

pub use adf::{adf_stat, window_family_stats, AdfResult, AdfSpec, LagRule};
pub use datestamp::{
    stamp_episodes, to_indicator, BubbleIndicator, Episode, EpisodeSet, MinDuration,
};
pub use dgp::{generate, BubbleDgpConfig, Collapse};
pub use error::{Error, Result};
pub use fundamentals::{build_fundamentals, split_regimes, FundamentalSet, RegimeSplit};
pub use logit::{fit_logit, lr_test, marginal_effects, CovariatePanel, LogitFit, MarginalMode};
pub use montecarlo::{quantile, simulate_null, CriticalValueTable, McConfig};
pub use month::MonthIndex;
pub use recursive::{
    bsadf_sequence, gsadf, phillips_window, sadf, scan, RecursiveResult, WindowPolicy,
};
pub use series::{ingest_csv, Series};
