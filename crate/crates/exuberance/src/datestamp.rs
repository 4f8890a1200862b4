//! Converts a BSADF sequence and a critical-value sequence into
//! date-stamped episodes and a binary indicator.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::month::MonthIndex;

/// Minimum episode duration, in observations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum MinDuration {
    Fixed {
        observations: usize,
    },
    /// `max(1, floor(ln T))` for the tested sample length `T`; the
    /// duration filter used when episodes should outlast short blips.
    LogT,
}

impl MinDuration {
    pub fn resolve(&self, sample_len: usize) -> usize {
        match self {
            MinDuration::Fixed { observations } => (*observations).max(1),
            MinDuration::LogT => ((sample_len as f64).ln().floor() as usize).max(1),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Episode {
    pub start: MonthIndex,
    pub end: MonthIndex,
    /// 1-based observation index of the first month.
    pub start_index: usize,
    pub end_index: usize,
    /// Largest BSADF value inside the episode; `None` for ground-truth
    /// sets that were never stamped against a statistic.
    pub peak_bsadf: Option<f64>,
    /// Still above the critical sequence at the end of the sample.
    pub ongoing: bool,
}

impl Episode {
    pub fn len(&self) -> usize {
        self.end_index - self.start_index + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Interval notation: `1990M04-1993M09`, or a bare month when the
    /// episode lasts a single observation.
    pub fn interval_label(&self) -> String {
        if self.start == self.end {
            self.start.to_string()
        } else {
            format!("{}-{}", self.start, self.end)
        }
    }
}

/// Date-stamped bubble episodes, disjoint and sorted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpisodeSet {
    pub episodes: Vec<Episode>,
    pub min_duration: usize,
    /// Quantile of the critical sequence the stamping used; `None` for
    /// ground-truth sets produced by the data generator.
    pub cv_level: Option<f64>,
}

impl EpisodeSet {
    pub fn is_empty(&self) -> bool {
        self.episodes.is_empty()
    }

    pub fn total_months(&self) -> usize {
        self.episodes.iter().map(Episode::len).sum()
    }

    /// Comma-separated interval notation, `NEB` when no episodes exist.
    pub fn summary(&self) -> String {
        if self.episodes.is_empty() {
            return "NEB".to_string();
        }
        let mut out = String::new();
        for (i, ep) in self.episodes.iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            out.push_str(&ep.interval_label());
            if ep.ongoing {
                out.push_str(" (ongoing)");
            }
        }
        out
    }

    pub fn to_csv_string(&self) -> String {
        let mut out = String::from("start,end,length,peak_bsadf,ongoing\n");
        for ep in &self.episodes {
            let _ = writeln!(
                out,
                "{},{},{},{},{}",
                ep.start,
                ep.end,
                ep.len(),
                ep.peak_bsadf.map(|v| v.to_string()).unwrap_or_default(),
                ep.ongoing
            );
        }
        out
    }
}

/// Binary bubble indicator over the BSADF-covered sub-range.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BubbleIndicator {
    pub start: MonthIndex,
    pub values: Vec<u8>,
}

impl BubbleIndicator {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn ones(&self) -> usize {
        self.values.iter().map(|&v| v as usize).sum()
    }

    pub fn month_of(&self, pos: usize) -> MonthIndex {
        self.start.plus(pos as i64)
    }

    pub fn to_csv_string(&self) -> String {
        let mut out = String::from("date,indicator\n");
        for (i, v) in self.values.iter().enumerate() {
            let _ = writeln!(out, "{},{}", self.start.plus(i as i64), v);
        }
        out
    }
}

/// Stamps episodes from aligned `(obs_index, BSADF)` entries and their
/// critical sequence.
///
/// An episode opens at the first entry strictly above its critical value
/// and closes at the first later entry strictly below it; equality keeps
/// the current state. Runs shorter than `min_duration` are discarded. A
/// run still open at the sample end closes there, flagged ongoing.
/// `first_obs_month` is the month of observation index 1.
pub fn stamp_episodes(
    bsadf: &[(usize, f64)],
    cv_seq: &[f64],
    min_duration: usize,
    first_obs_month: MonthIndex,
    cv_level: Option<f64>,
) -> Result<EpisodeSet> {
    if bsadf.len() != cv_seq.len() {
        return Err(Error::LengthMismatch {
            got: bsadf.len(),
            want: cv_seq.len(),
        });
    }
    let min_duration = min_duration.max(1);
    let mut episodes = Vec::new();
    let mut open: Option<(usize, f64)> = None; // (start obs index, running peak)

    let close =
        |episodes: &mut Vec<Episode>, start: usize, end: usize, peak: f64, ongoing: bool| {
            if end - start + 1 >= min_duration {
                episodes.push(Episode {
                    start: first_obs_month.plus(start as i64 - 1),
                    end: first_obs_month.plus(end as i64 - 1),
                    start_index: start,
                    end_index: end,
                    peak_bsadf: Some(peak),
                    ongoing,
                });
            }
        };

    let mut prev_index = None;
    for (&(idx, value), &cv) in bsadf.iter().zip(cv_seq) {
        match open {
            None => {
                if value > cv {
                    open = Some((idx, value));
                }
            }
            Some((start, peak)) => {
                if value < cv {
                    close(
                        &mut episodes,
                        start,
                        prev_index.unwrap_or(start),
                        peak,
                        false,
                    );
                    open = None;
                } else {
                    open = Some((start, peak.max(value)));
                }
            }
        }
        prev_index = Some(idx);
    }
    if let (Some((start, peak)), Some(last)) = (open, prev_index) {
        close(&mut episodes, start, last, peak, true);
    }

    Ok(EpisodeSet {
        episodes,
        min_duration,
        cv_level,
    })
}

/// Expands episodes into a 0/1 vector over `range_start ..` for
/// `range_len` months. Every episode must fall inside the range.
pub fn to_indicator(
    episodes: &EpisodeSet,
    range_start: MonthIndex,
    range_len: usize,
) -> Result<BubbleIndicator> {
    let range_end = range_start.plus(range_len as i64 - 1);
    let mut values = vec![0u8; range_len];
    for ep in &episodes.episodes {
        if ep.start < range_start || ep.end > range_end {
            return Err(Error::EpisodeOutOfRange {
                start: ep.start,
                end: ep.end,
                range_start,
                range_end,
            });
        }
        let lo = ep.start.months_since(&range_start) as usize;
        let hi = ep.end.months_since(&range_start) as usize;
        for v in &mut values[lo..=hi] {
            *v = 1;
        }
    }
    Ok(BubbleIndicator {
        start: range_start,
        values,
    })
}
