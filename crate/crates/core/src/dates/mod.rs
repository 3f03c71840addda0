//! Date expression recognition and normalization.
//!
//! The pipeline runs in two passes over a document. All-numeric dates
//! ("13/02/03", "31.5.2003") are found first, and the unambiguous ones vote
//! on whether the document writes day-month or month-day. Then every month
//! name from the language's parameter file anchors a search for a day, a
//! year, or a relative modifier on either side. Relative days ("yesterday")
//! are found on their own. Overlapping candidates keep the longest.

mod lexical;
mod lexicon;
mod numeric;
mod relative;

use std::fmt;

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use crate::text::CharIndex;

pub use lexical::{find_lexical_dates, LexicalCandidate};
pub use lexicon::{DateLexicon, LexiconError, Order};
pub use numeric::{expand_two_digit_year, find_numeric_dates, infer_document_order, Layout, NumericCandidate};
pub use relative::{resolve_relative, ResolveError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum DateKind {
    Full,
    YearMonth,
    MonthDay,
    RelativeDay,
    RelativeMonth,
    MonthRelativeYear,
}

impl DateKind {
    pub fn as_str(self) -> &'static str {
        match self {
            DateKind::Full => "FULL",
            DateKind::YearMonth => "YEAR_MONTH",
            DateKind::MonthDay => "MONTH_DAY",
            DateKind::RelativeDay => "RELATIVE_DAY",
            DateKind::RelativeMonth => "RELATIVE_MONTH",
            DateKind::MonthRelativeYear => "MONTH_RELATIVE_YEAR",
        }
    }
}

/// Normal form of a date expression. Absolute kinds carry whatever calendar
/// fields the text gave; relative kinds carry an offset to be applied to a
/// reference date.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum NormalizedDate {
    Full {
        year: i32,
        month: u32,
        day: u32,
    },
    YearMonth {
        year: i32,
        month: u32,
    },
    MonthDay {
        month: u32,
        day: u32,
    },
    RelativeDay {
        offset: i64,
    },
    /// `offset` is the direction: -1 last, +1 next, 0 this/late/mid.
    RelativeMonth {
        month: u32,
        offset: i32,
    },
    /// A month in a year given relative to the reference year.
    MonthRelativeYear {
        month: u32,
        offset: i32,
    },
}

impl NormalizedDate {
    pub fn kind(&self) -> DateKind {
        match self {
            NormalizedDate::Full { .. } => DateKind::Full,
            NormalizedDate::YearMonth { .. } => DateKind::YearMonth,
            NormalizedDate::MonthDay { .. } => DateKind::MonthDay,
            NormalizedDate::RelativeDay { .. } => DateKind::RelativeDay,
            NormalizedDate::RelativeMonth { .. } => DateKind::RelativeMonth,
            NormalizedDate::MonthRelativeYear { .. } => DateKind::MonthRelativeYear,
        }
    }

    pub fn is_relative(&self) -> bool {
        matches!(
            self,
            NormalizedDate::RelativeDay { .. }
                | NormalizedDate::RelativeMonth { .. }
                | NormalizedDate::MonthRelativeYear { .. }
        )
    }

    /// Check calendar validity. A day without a year is checked against a
    /// leap year, so "29 February" alone is fine.
    pub fn validate(&self) -> Result<(), String> {
        let month_ok = |m: u32| {
            if (1..=12).contains(&m) {
                Ok(())
            } else {
                Err(format!("month {m} outside 1..=12"))
            }
        };
        let day_ok = |y: Option<i32>, m: u32, d: u32| {
            month_ok(m)?;
            let len = days_in_month(y, m);
            if (1..=len).contains(&d) {
                Ok(())
            } else {
                Err(format!("day {d} outside 1..={len} for month {m}"))
            }
        };
        match *self {
            NormalizedDate::Full { year, month, day } => day_ok(Some(year), month, day),
            NormalizedDate::MonthDay { month, day } => day_ok(None, month, day),
            NormalizedDate::YearMonth { month, .. }
            | NormalizedDate::RelativeMonth { month, .. }
            | NormalizedDate::MonthRelativeYear { month, .. } => month_ok(month),
            NormalizedDate::RelativeDay { .. } => Ok(()),
        }
    }

    pub fn to_naive_date(&self) -> Option<NaiveDate> {
        match *self {
            NormalizedDate::Full { year, month, day } => NaiveDate::from_ymd_opt(year, month, day),
            _ => None,
        }
    }
}

impl From<NaiveDate> for NormalizedDate {
    fn from(d: NaiveDate) -> Self {
        use chrono::Datelike;
        NormalizedDate::Full {
            year: d.year(),
            month: d.month(),
            day: d.day(),
        }
    }
}

/// ISO 8601 where one exists (`2003-05-31`, `2003-05`, `--05-31`); the
/// relative kinds use a compact signed notation.
impl fmt::Display for NormalizedDate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            NormalizedDate::Full { year, month, day } => write!(f, "{year:04}-{month:02}-{day:02}"),
            NormalizedDate::YearMonth { year, month } => write!(f, "{year:04}-{month:02}"),
            NormalizedDate::MonthDay { month, day } => write!(f, "--{month:02}-{day:02}"),
            NormalizedDate::RelativeDay { offset } => write!(f, "day{offset:+}"),
            NormalizedDate::RelativeMonth { month, offset } => write!(f, "--{month:02}{offset:+}"),
            NormalizedDate::MonthRelativeYear { month, offset } => write!(f, "year{offset:+}-{month:02}"),
        }
    }
}

pub fn is_leap_year(year: i32) -> bool {
    (year % 4 == 0 && year % 100 != 0) || year % 400 == 0
}

/// Length of `month`; an unknown year counts as a leap year.
pub fn days_in_month(year: Option<i32>, month: u32) -> u32 {
    match month {
        1 | 3 | 5 | 7 | 8 | 10 | 12 => 31,
        4 | 6 | 9 | 11 => 30,
        2 if year.is_none_or(is_leap_year) => 29,
        2 => 28,
        _ => 0,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DateMatch {
    /// Char offset into the decoded text.
    pub offset: usize,
    /// Length in chars.
    pub length: usize,
    pub surface: String,
    pub normal: NormalizedDate,
    /// Calendar value of a relative expression, when a reference date was given.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub resolved: Option<NormalizedDate>,
}

/// Either finder's output before normalization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DateCandidate {
    Numeric(NumericCandidate),
    Lexical(LexicalCandidate),
}

impl DateCandidate {
    fn span(&self) -> (usize, usize, &str) {
        match self {
            DateCandidate::Numeric(c) => (c.offset, c.length, &c.surface),
            DateCandidate::Lexical(c) => (c.offset, c.length, &c.surface),
        }
    }
}

/// A candidate that failed normalization.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Rejection {
    pub offset: usize,
    pub length: usize,
    pub surface: String,
    pub reason: String,
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}+{}\t{:?}\t{}",
            self.offset, self.length, self.surface, self.reason
        )
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DateOptions {
    /// Overrides the lexicon's default field order.
    pub default_order: Option<Order>,
    /// Discard numeric dates whose year has two digits.
    pub reject_two_digit_years: bool,
    /// Writing or publication date used to resolve relative expressions.
    pub reference: Option<NaiveDate>,
}

/// Turn one candidate into a match, or say why it cannot be one.
pub fn normalize_match(
    candidate: &DateCandidate,
    document_order: Order,
    opts: &DateOptions,
) -> Result<DateMatch, Rejection> {
    let (offset, length, surface) = candidate.span();
    let reject = |reason: String| Rejection {
        offset,
        length,
        surface: surface.to_string(),
        reason,
    };
    let normal = match candidate {
        DateCandidate::Numeric(c) => c
            .normalize(document_order, opts.reject_two_digit_years)
            .map_err(reject)?,
        DateCandidate::Lexical(c) => {
            c.normal.validate().map_err(reject)?;
            c.normal
        }
    };
    let resolved = match opts.reference {
        Some(reference) if normal.is_relative() => {
            Some(resolve_relative(&normal, reference).map_err(|e| reject(e.to_string()))?)
        }
        _ => None,
    };
    Ok(DateMatch {
        offset,
        length,
        surface: surface.to_string(),
        normal,
        resolved,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DateExtraction {
    /// Sorted by offset; no two overlap.
    pub matches: Vec<DateMatch>,
    /// Field order used for ambiguous numeric dates.
    pub order: Order,
    /// Candidates discarded during normalization.
    pub rejected: Vec<Rejection>,
}

/// Full pipeline over one decoded document.
pub fn extract_dates(text: &str, lexicon: &DateLexicon, opts: &DateOptions) -> DateExtraction {
    let chars = CharIndex::new(text);
    let numeric = find_numeric_dates(text);
    let order = infer_document_order(&numeric, opts.default_order.unwrap_or(lexicon.default_order));
    let candidates = numeric.into_iter().map(DateCandidate::Numeric).chain(
        find_lexical_dates(text, lexicon)
            .into_iter()
            .map(DateCandidate::Lexical),
    );

    let mut matches = Vec::new();
    let mut rejected = Vec::new();
    for c in candidates {
        match normalize_match(&c, order, opts) {
            Ok(m) => matches.push(m),
            Err(r) => rejected.push(r),
        }
    }

    // Longest first, then leftmost; a candidate survives if it overlaps
    // nothing already kept.
    matches.sort_by(|a, b| b.length.cmp(&a.length).then(a.offset.cmp(&b.offset)));
    let mut kept: Vec<DateMatch> = Vec::new();
    for m in matches {
        let clash = kept
            .iter()
            .any(|k| m.offset < k.offset + k.length && k.offset < m.offset + m.length);
        if !clash {
            kept.push(m);
        }
    }
    kept.sort_by_key(|m| m.offset);
    rejected.sort_by_key(|r| r.offset);
    debug_assert!(kept.iter().all(|m| chars.slice(text, m.offset, m.length) == m.surface));
    DateExtraction {
        matches: kept,
        order,
        rejected,
    }
}
