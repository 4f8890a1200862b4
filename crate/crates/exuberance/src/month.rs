//! Calendar month indexing for monthly series.

use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A calendar month, totally ordered, with `1997M08`-style formatting.
///
/// Both `1997M08` (compact, single-digit month accepted) and `1997-08`
/// date literals parse to the same value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MonthIndex {
    year: i32,
    month: u8,
}

impl MonthIndex {
    /// Panics if `month` is not in `1..=12`; use [`MonthIndex::try_new`] for
    /// fallible construction from untrusted input.
    pub fn new(year: i32, month: u8) -> Self {
        Self::try_new(year, month).expect("month must be in 1..=12")
    }

    pub fn try_new(year: i32, month: u8) -> Option<Self> {
        (1..=12).contains(&month).then_some(Self { year, month })
    }

    /// Compile-time constructor; the month bound is checked by the const
    /// evaluator.
    pub const fn const_new(year: i32, month: u8) -> Self {
        assert!(month >= 1 && month <= 12);
        Self { year, month }
    }

    pub fn year(&self) -> i32 {
        self.year
    }

    pub fn month(&self) -> u8 {
        self.month
    }

    /// The following calendar month; `(y, 12)` rolls over to `(y+1, 1)`.
    pub fn succ(&self) -> Self {
        if self.month == 12 {
            Self {
                year: self.year + 1,
                month: 1,
            }
        } else {
            Self {
                year: self.year,
                month: self.month + 1,
            }
        }
    }

    pub fn pred(&self) -> Self {
        if self.month == 1 {
            Self {
                year: self.year - 1,
                month: 12,
            }
        } else {
            Self {
                year: self.year,
                month: self.month - 1,
            }
        }
    }

    /// This month shifted by `n` months (negative shifts backwards).
    pub fn plus(&self, n: i64) -> Self {
        let total = self.year as i64 * 12 + (self.month as i64 - 1) + n;
        Self {
            year: total.div_euclid(12) as i32,
            month: (total.rem_euclid(12) + 1) as u8,
        }
    }

    /// Signed month count from `other` to `self`.
    pub fn months_since(&self, other: &Self) -> i64 {
        (self.year as i64 * 12 + self.month as i64) - (other.year as i64 * 12 + other.month as i64)
    }
}

impl fmt::Display for MonthIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}M{:02}", self.year, self.month)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseMonthError(pub String);

impl fmt::Display for ParseMonthError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "invalid month literal {:?}: expected YYYY-MM or YYYYMmm",
            self.0
        )
    }
}

impl std::error::Error for ParseMonthError {}

impl FromStr for MonthIndex {
    type Err = ParseMonthError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let s = s.trim();
        let err = || ParseMonthError(s.to_string());
        let (y, m) = s
            .split_once(['M', 'm'])
            .or_else(|| s.split_once('-'))
            .ok_or_else(err)?;
        let year: i32 = y.parse().map_err(|_| err())?;
        let month: u8 = m.parse().map_err(|_| err())?;
        MonthIndex::try_new(year, month).ok_or_else(err)
    }
}

impl Serialize for MonthIndex {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for MonthIndex {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(D::Error::custom)
    }
}
