//! Purchasing-power-parity fundamentals from price indices, and the
//! managed/free floating regime split.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::month::MonthIndex;
use crate::series::Series;

/// Default regime break: the last month of the managed-floating regime.
pub const DEFAULT_BREAK: MonthIndex = MonthIndex::const_new(1997, 7);

/// Log exchange rate with its traded/non-traded fundamentals and the two
/// deviation series, all on one common date range.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FundamentalSet {
    /// ln of the nominal exchange rate.
    pub s: Series,
    /// Traded-goods fundamental `ln(PPI) − ln(PPI*)`.
    pub f_traded: Series,
    /// Non-traded component `(ln CPI − ln PPI) − (ln CPI* − ln PPI*)`.
    pub f_nontraded: Series,
    pub s_minus_ft: Series,
    pub s_minus_fn: Series,
}

impl FundamentalSet {
    pub fn start(&self) -> MonthIndex {
        self.s.start()
    }

    pub fn end(&self) -> MonthIndex {
        self.s.end()
    }

    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn slice(&self, start: MonthIndex, end: MonthIndex) -> Result<FundamentalSet> {
        Ok(FundamentalSet {
            s: self.s.slice(start, end)?,
            f_traded: self.f_traded.slice(start, end)?,
            f_nontraded: self.f_nontraded.slice(start, end)?,
            s_minus_ft: self.s_minus_ft.slice(start, end)?,
            s_minus_fn: self.s_minus_fn.slice(start, end)?,
        })
    }

    /// The three series the tests run on, with their conventional labels.
    pub fn variants(&self) -> [(&'static str, &Series); 3] {
        [
            ("s", &self.s),
            ("s_minus_fn", &self.s_minus_fn),
            ("s_minus_ft", &self.s_minus_ft),
        ]
    }
}

/// How much each input lost to the common-range intersection.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrimReport {
    pub common_start: MonthIndex,
    pub common_end: MonthIndex,
    /// `(label, months trimmed before, months trimmed after)`.
    pub trimmed: Vec<(String, usize, usize)>,
}

impl TrimReport {
    pub fn total_trimmed(&self) -> usize {
        self.trimmed.iter().map(|(_, b, a)| b + a).sum()
    }
}

/// Intersects the date ranges of several series.
pub fn common_range(series: &[&Series]) -> Result<(MonthIndex, MonthIndex)> {
    let start = series
        .iter()
        .map(|s| s.start())
        .max()
        .ok_or(Error::EmptyInput)?;
    let end = series
        .iter()
        .map(|s| s.end())
        .min()
        .ok_or(Error::EmptyInput)?;
    if end < start {
        return Err(Error::NoCommonRange);
    }
    Ok((start, end))
}

fn trim_entry(s: &Series, start: MonthIndex, end: MonthIndex) -> (String, usize, usize) {
    (
        s.label().to_string(),
        start.months_since(&s.start()) as usize,
        s.end().months_since(&end) as usize,
    )
}

const MIN_COMMON_LEN: usize = 24;

/// Builds the PPP fundamental set on the intersected date range of the
/// five inputs (raw spot rate plus domestic/foreign CPI and PPI), which
/// must span at least 24 months. Returns the set and a report of rows
/// trimmed by the intersection.
pub fn build_fundamentals(
    s_raw: &Series,
    cpi: &Series,
    cpi_star: &Series,
    ppi: &Series,
    ppi_star: &Series,
) -> Result<(FundamentalSet, TrimReport)> {
    let inputs = [s_raw, cpi, cpi_star, ppi, ppi_star];
    let (start, end) = common_range(&inputs)?;
    let len = (end.months_since(&start) + 1) as usize;
    if len < MIN_COMMON_LEN {
        return Err(Error::RangeTooShort {
            start,
            end,
            len,
            min: MIN_COMMON_LEN,
        });
    }
    let report = TrimReport {
        common_start: start,
        common_end: end,
        trimmed: inputs.iter().map(|s| trim_entry(s, start, end)).collect(),
    };

    let ln = |s: &Series, label: &str| -> Result<Series> {
        Ok(s.slice(start, end)?.log()?.with_label(label))
    };
    let s = ln(s_raw, "s")?;
    let ln_cpi = ln(cpi, "ln_cpi")?;
    let ln_cpi_star = ln(cpi_star, "ln_cpi_star")?;
    let ln_ppi = ln(ppi, "ln_ppi")?;
    let ln_ppi_star = ln(ppi_star, "ln_ppi_star")?;

    let zip = |a: &Series, b: &Series, f: fn(f64, f64) -> f64, label: &str| -> Result<Series> {
        let values = a
            .values()
            .iter()
            .zip(b.values())
            .map(|(&x, &y)| f(x, y))
            .collect();
        Series::new(label, start, values)
    };

    let f_traded = zip(&ln_ppi, &ln_ppi_star, |a, b| a - b, "f_traded")?;
    let home_ratio = zip(&ln_cpi, &ln_ppi, |a, b| a - b, "home_ratio")?;
    let foreign_ratio = zip(&ln_cpi_star, &ln_ppi_star, |a, b| a - b, "foreign_ratio")?;
    let f_nontraded = zip(&home_ratio, &foreign_ratio, |a, b| a - b, "f_nontraded")?;
    let s_minus_ft = zip(&s, &f_traded, |a, b| a - b, "s_minus_ft")?;
    let s_minus_fn = zip(&s, &f_nontraded, |a, b| a - b, "s_minus_fn")?;

    Ok((
        FundamentalSet {
            s,
            f_traded,
            f_nontraded,
            s_minus_ft,
            s_minus_fn,
        },
        report,
    ))
}

/// A fundamental set split at a regime break.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegimeSplit {
    pub full: FundamentalSet,
    /// Through `break_after` inclusive.
    pub managed: FundamentalSet,
    /// From the month after `break_after`.
    pub free: FundamentalSet,
    pub break_after: MonthIndex,
}

impl RegimeSplit {
    /// `(regime name, fundamental set)` triples in reporting order.
    pub fn panels(&self) -> [(&'static str, &FundamentalSet); 3] {
        [
            ("full", &self.full),
            ("managed", &self.managed),
            ("free", &self.free),
        ]
    }
}

/// Splits the set into the sub-ranges `start..=break_after` and
/// `break_after+1..=end`. The break must leave at least two observations
/// on each side.
pub fn split_regimes(fs: &FundamentalSet, break_after: MonthIndex) -> Result<RegimeSplit> {
    let start = fs.start();
    let end = fs.end();
    let managed_len = break_after.months_since(&start) + 1;
    let free_len = end.months_since(&break_after);
    if managed_len < 2 || free_len < 2 {
        return Err(Error::BreakOutOfRange(break_after));
    }
    Ok(RegimeSplit {
        full: fs.clone(),
        managed: fs.slice(start, break_after)?,
        free: fs.slice(break_after.succ(), end)?,
        break_after,
    })
}
