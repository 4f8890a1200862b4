//! Gap-free monthly series: construction, CSV ingestion, emission, transforms.

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::month::MonthIndex;

/// An ordered, gap-free monthly sequence of finite observations.
///
/// The start month plus the value count defines the contiguous date range;
/// missing months are a construction error, never interpolated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Series {
    label: String,
    start: MonthIndex,
    values: Vec<f64>,
}

impl Series {
    pub fn new(label: impl Into<String>, start: MonthIndex, values: Vec<f64>) -> Result<Self> {
        let label = label.into();
        if values.len() < 2 {
            return Err(Error::SeriesTooShort {
                label,
                len: values.len(),
            });
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteValue {
                label,
                month: start.plus(i as i64),
            });
        }
        Ok(Self {
            label,
            start,
            values,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn start(&self) -> MonthIndex {
        self.start
    }

    pub fn end(&self) -> MonthIndex {
        self.start.plus(self.values.len() as i64 - 1)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false // invariant: len >= 2
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Month of the 1-based observation index.
    pub fn month_of(&self, obs_index: usize) -> MonthIndex {
        debug_assert!((1..=self.len()).contains(&obs_index));
        self.start.plus(obs_index as i64 - 1)
    }

    pub fn value_at(&self, month: MonthIndex) -> Option<f64> {
        let offset = month.months_since(&self.start);
        if offset < 0 || offset as usize >= self.values.len() {
            None
        } else {
            Some(self.values[offset as usize])
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (MonthIndex, f64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(|(i, &v)| (self.start.plus(i as i64), v))
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Sub-series covering `start..=end` (both inclusive).
    pub fn slice(&self, start: MonthIndex, end: MonthIndex) -> Result<Series> {
        let lo = start.months_since(&self.start);
        let hi = end.months_since(&self.start);
        if lo < 0 || hi < lo || hi as usize >= self.values.len() {
            return Err(Error::SliceOutOfRange { start, end });
        }
        Series::new(
            self.label.clone(),
            start,
            self.values[lo as usize..=hi as usize].to_vec(),
        )
    }

    /// Element-wise natural log; every value must be strictly positive.
    pub fn log(&self) -> Result<Series> {
        if let Some(i) = self.values.iter().position(|&v| v <= 0.0) {
            return Err(Error::NonPositiveValue {
                label: self.label.clone(),
                month: self.start.plus(i as i64),
            });
        }
        Series::new(
            format!("ln({})", self.label),
            self.start,
            self.values.iter().map(|v| v.ln()).collect(),
        )
    }

    /// Writes `date,value` rows with a header. Values print in shortest
    /// round-trip form, so ingest → emit → ingest is lossless.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "date,value")?;
        for (month, value) in self.iter() {
            writeln!(w, "{month},{value}")?;
        }
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("write to Vec cannot fail");
        String::from_utf8(buf).expect("CSV output is UTF-8")
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "label": self.label,
            "start": self.start.to_string(),
            "values": self.values,
        })
    }
}

/// Reads one monthly series from a headered CSV file.
///
/// Dates must parse as `YYYY-MM` or `YYYYMmm`; rows may arrive in any order
/// but must form a gap-free, duplicate-free month range once sorted.
pub fn ingest_csv(path: impl AsRef<Path>, date_column: &str, value_column: &str) -> Result<Series> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    let label = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "series".to_string());
    ingest_csv_reader(file, date_column, value_column, label)
}

pub fn ingest_csv_reader<R: std::io::Read>(
    reader: R,
    date_column: &str,
    value_column: &str,
    label: impl Into<String>,
) -> Result<Series> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(reader);

    let headers = rdr.headers()?.clone();
    let date_idx = headers
        .iter()
        .position(|h| h == date_column)
        .ok_or_else(|| Error::MissingColumn(date_column.to_string()))?;
    let value_idx = headers
        .iter()
        .position(|h| h == value_column)
        .ok_or_else(|| Error::MissingColumn(value_column.to_string()))?;

    let mut rows: Vec<(MonthIndex, f64)> = Vec::new();
    for (i, record) in rdr.records().enumerate() {
        let record = record?;
        let line = i + 2; // 1-based, after the header
        let date_raw = record.get(date_idx).unwrap_or("");
        let value_raw = record.get(value_idx).unwrap_or("");
        if date_raw.is_empty() && value_raw.is_empty() {
            continue;
        }
        let month: MonthIndex = date_raw.parse().map_err(|_| Error::BadDate {
            line,
            value: date_raw.to_string(),
        })?;
        let value: f64 = value_raw.parse().map_err(|_| Error::NonNumericValue {
            line,
            value: value_raw.to_string(),
        })?;
        rows.push((month, value));
    }

    if rows.is_empty() {
        return Err(Error::EmptyInput);
    }
    rows.sort_by_key(|(m, _)| *m);
    let mut values = Vec::with_capacity(rows.len());
    let start = rows[0].0;
    let mut expected = start;
    for (month, value) in &rows {
        if *month == expected {
            values.push(*value);
        } else if *month < expected {
            return Err(Error::DuplicateDate(*month));
        } else {
            return Err(Error::MissingMonth(expected));
        }
        expected = expected.succ();
    }
    Series::new(label, start, values)
}
