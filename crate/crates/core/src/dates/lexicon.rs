//! Per-language date parameter files.
//!
//! ```text
//! [meta]
//! language = en
//! default_order = dmy
//! number_and = and
//!
//! [months]
//! 3 = March|Mar|Mar.
//!
//! [day_ordinals]
//! 2 = 2nd|second
//!
//! [relative_days]
//! yesterday|Yesterday = -1
//!
//! [pre_modifiers]
//! last|Last = -1
//!
//! [relative_years]
//! last year = -1
//!
//! [connectors]
//! of
//! in the year
//!
//! [number_words]
//! nineteen = 19
//! ```
//!
//! Surfaces are matched with their exact case, so a lexicon lists every
//! casing it wants to recognise. `[post_modifiers]` is accepted and parsed
//! like `[pre_modifiers]` but nothing reads it yet.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing [months] section")]
    MissingMonths,
    #[error("month {0} has no surface forms")]
    MissingMonth(u32),
    #[error("surface {surface:?} is listed as {first} and as {second}")]
    Conflict {
        surface: String,
        first: String,
        second: String,
    },
}

/// Field order of all-numeric dates with the year last.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Order {
    Dmy,
    Mdy,
}

impl FromStr for Order {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "dmy" => Ok(Order::Dmy),
            "mdy" => Ok(Order::Mdy),
            _ => Err(format!("unknown date order {s:?}, expected dmy or mdy")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DateLexicon {
    pub language: String,
    pub default_order: Order,
    /// Index 0 is January.
    pub months: [Vec<String>; 12],
    pub day_ordinals: BTreeMap<u32, Vec<String>>,
    pub relative_days: HashMap<String, i64>,
    pub pre_modifiers: HashMap<String, i32>,
    pub post_modifiers: HashMap<String, i32>,
    pub relative_years: HashMap<String, i32>,
    pub connectors: Vec<String>,
    pub number_words: HashMap<String, u32>,
    /// Word allowed between "thousand" and the rest of a spelled year.
    pub number_and: Option<String>,
}

impl DateLexicon {
    pub fn month_surfaces(&self, month: u32) -> &[String] {
        &self.months[(month - 1) as usize]
    }

    pub fn load(path: &Path) -> Result<Self, LexiconError> {
        let src = fs::read_to_string(path).map_err(|source| LexiconError::Io {
            path: path.display().to_string(),
            source,
        })?;
        src.parse()
    }
}

fn syntax(line: usize, msg: impl Into<String>) -> LexiconError {
    LexiconError::Syntax { line, msg: msg.into() }
}

fn surfaces(s: &str) -> Vec<String> {
    s.split('|')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(String::from)
        .collect()
}

/// Insert `surface -> value` into a map, rejecting a second, different value.
fn insert_unique<V: PartialEq + Copy + ToString>(
    map: &mut HashMap<String, V>,
    surface: String,
    value: V,
    section: &str,
) -> Result<(), LexiconError> {
    match map.get(&surface) {
        Some(old) if *old != value => Err(LexiconError::Conflict {
            surface,
            first: format!("{section} {}", old.to_string()),
            second: format!("{section} {}", value.to_string()),
        }),
        _ => {
            map.insert(surface, value);
            Ok(())
        }
    }
}

impl FromStr for DateLexicon {
    type Err = LexiconError;

    fn from_str(src: &str) -> Result<Self, Self::Err> {
        let mut section = String::new();
        let mut saw_months = false;
        let mut language = String::new();
        let mut default_order = Order::Dmy;
        let mut number_and = None;
        let mut months: [Vec<String>; 12] = Default::default();
        let mut day_ordinals: BTreeMap<u32, Vec<String>> = BTreeMap::new();
        let mut relative_days = HashMap::new();
        let mut pre_modifiers = HashMap::new();
        let mut post_modifiers = HashMap::new();
        let mut relative_years = HashMap::new();
        let mut connectors = Vec::new();
        let mut number_words = HashMap::new();

        for (i, raw) in src.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') || line.starts_with(';') {
                continue;
            }
            if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
                section = name.trim().to_string();
                saw_months |= section == "months";
                continue;
            }
            if section == "connectors" {
                connectors.push(line.to_string());
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .map(|(k, v)| (k.trim(), v.trim()))
                .ok_or_else(|| syntax(line_no, "expected `key = value`"))?;
            let int = |v: &str| {
                v.trim_start_matches('+')
                    .parse::<i64>()
                    .map_err(|_| syntax(line_no, format!("expected an integer, got {v:?}")))
            };
            match section.as_str() {
                "meta" => match key {
                    "language" => language = value.to_string(),
                    "default_order" => default_order = value.parse().map_err(|e: String| syntax(line_no, e))?,
                    "number_and" => number_and = Some(value.to_string()).filter(|s| !s.is_empty()),
                    _ => return Err(syntax(line_no, format!("unknown meta key {key:?}"))),
                },
                "months" => {
                    let m = int(key)?;
                    if !(1..=12).contains(&m) {
                        return Err(syntax(line_no, format!("month index {m} outside 1..=12")));
                    }
                    months[(m - 1) as usize].extend(surfaces(value));
                }
                "day_ordinals" => {
                    let d = int(key)?;
                    if !(1..=31).contains(&d) {
                        return Err(syntax(line_no, format!("day {d} outside 1..=31")));
                    }
                    day_ordinals.entry(d as u32).or_default().extend(surfaces(value));
                }
                "relative_days" => {
                    let v = int(value)?;
                    for s in surfaces(key) {
                        insert_unique(&mut relative_days, s, v, "relative day")?;
                    }
                }
                "pre_modifiers" | "post_modifiers" => {
                    let v = int(value)?;
                    if !(-1..=1).contains(&v) {
                        return Err(syntax(line_no, "modifier sign must be -1, 0 or 1"));
                    }
                    let map = if section == "pre_modifiers" {
                        &mut pre_modifiers
                    } else {
                        &mut post_modifiers
                    };
                    for s in surfaces(key) {
                        insert_unique(map, s, v as i32, "modifier")?;
                    }
                }
                "relative_years" => {
                    let v = int(value)?;
                    for s in surfaces(key) {
                        insert_unique(&mut relative_years, s, v as i32, "relative year")?;
                    }
                }
                "number_words" => {
                    let v = int(value)?;
                    if !(0..=1000).contains(&v) {
                        return Err(syntax(line_no, "number word value outside 0..=1000"));
                    }
                    for s in surfaces(key) {
                        insert_unique(&mut number_words, s, v as u32, "number")?;
                    }
                }
                "" => return Err(syntax(line_no, "entry before any [section]")),
                other => return Err(syntax(line_no, format!("unknown section [{other}]"))),
            }
        }

        if !saw_months {
            return Err(LexiconError::MissingMonths);
        }
        if let Some(m) = months.iter().position(Vec::is_empty) {
            return Err(LexiconError::MissingMonth(m as u32 + 1));
        }

        // An anchor surface must mean one thing.
        let mut claims: Vec<(&str, String)> = Vec::new();
        for (i, list) in months.iter().enumerate() {
            claims.extend(list.iter().map(|s| (s.as_str(), format!("month {}", i + 1))));
        }
        for (d, list) in &day_ordinals {
            claims.extend(list.iter().map(|s| (s.as_str(), format!("day {d}"))));
        }
        claims.extend(
            relative_days
                .iter()
                .map(|(s, v)| (s.as_str(), format!("relative day {v}"))),
        );
        claims.extend(pre_modifiers.iter().map(|(s, v)| (s.as_str(), format!("modifier {v}"))));
        claims.sort();
        let mut owner: HashMap<&str, String> = HashMap::new();
        for (s, what) in claims {
            if let Some(prev) = owner.get(s) {
                if *prev != what {
                    return Err(LexiconError::Conflict {
                        surface: s.to_string(),
                        first: prev.clone(),
                        second: what,
                    });
                }
            }
            owner.insert(s, what);
        }

        Ok(DateLexicon {
            language,
            default_order,
            months,
            day_ordinals,
            relative_days,
            pre_modifiers,
            post_modifiers,
            relative_years,
            connectors,
            number_words,
            number_and,
        })
    }
}
