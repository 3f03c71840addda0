//! Place-name database, geo stop words and country triggers.
//!
//! All three are loaded once from plain text files and are read-only
//! afterwards. Names are looked up by token sequence, keyed on the first
//! token, so multi-word names like "Stara Zagora" are found by checking the
//! right-hand context of each candidate first word.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::fs::File;
use std::io::{self, BufRead, BufReader};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::text::{tokenize, Token};

#[derive(Debug, Error)]
pub enum GazetteerError {
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("line {line}: {msg}")]
    Row { line: usize, msg: String },
    #[error("line {line}: duplicate place id {id}")]
    DuplicateId { line: usize, id: u64 },
}

fn row_err(line: usize, msg: impl Into<String>) -> GazetteerError {
    GazetteerError::Row { line, msg: msg.into() }
}

fn open(path: &Path) -> Result<BufReader<File>, GazetteerError> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|source| GazetteerError::Io {
            path: path.display().to_string(),
            source,
        })
}

/// ISO 3166-1 alpha-2 country code, upper case.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct CountryCode([u8; 2]);

impl CountryCode {
    pub fn as_str(&self) -> &str {
        std::str::from_utf8(&self.0).expect("ascii")
    }
}

impl FromStr for CountryCode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.as_bytes() {
            &[a, b] if a.is_ascii_uppercase() && b.is_ascii_uppercase() => Ok(CountryCode([a, b])),
            _ => Err(format!("invalid country code {s:?}")),
        }
    }
}

impl TryFrom<String> for CountryCode {
    type Error = String;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<CountryCode> for String {
    fn from(c: CountryCode) -> String {
        c.as_str().to_string()
    }
}

impl fmt::Display for CountryCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl fmt::Debug for CountryCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_str())
    }
}

/// Importance of a place: 1 = capital, 2 = major city, down to 6 = village.
/// Lower numbers are more important.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct SizeClass(u8);

impl SizeClass {
    pub const CAPITAL: SizeClass = SizeClass(1);
    pub const VILLAGE: SizeClass = SizeClass(6);

    pub fn new(v: u8) -> Option<Self> {
        (1..=6).contains(&v).then_some(SizeClass(v))
    }

    pub fn get(self) -> u8 {
        self.0
    }
}

impl TryFrom<u8> for SizeClass {
    type Error = String;
    fn try_from(v: u8) -> Result<Self, Self::Error> {
        SizeClass::new(v).ok_or_else(|| format!("size class {v} outside 1..=6"))
    }
}

impl From<SizeClass> for u8 {
    fn from(s: SizeClass) -> u8 {
        s.0
    }
}

pub type PlaceId = u64;

#[derive(Debug, Clone, PartialEq)]
pub struct PlaceRecord {
    pub id: PlaceId,
    pub canonical_name: String,
    pub variants: Vec<String>,
    pub country: CountryCode,
    pub latitude: f64,
    pub longitude: f64,
    pub size_class: SizeClass,
}

impl PlaceRecord {
    /// Canonical name followed by variants.
    pub fn surfaces(&self) -> impl Iterator<Item = &str> {
        std::iter::once(self.canonical_name.as_str()).chain(self.variants.iter().map(String::as_str))
    }
}

/// A token sequence plus, for each gap between tokens, whether punctuation
/// sits in that gap. "St. Petersburg" and "Stara Zagora" differ in the gap.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Phrase {
    words: Vec<String>,
    gaps: Vec<bool>,
}

impl Phrase {
    fn parse(surface: &str) -> Option<Phrase> {
        let toks = tokenize(surface);
        if toks.is_empty() {
            return None;
        }
        Some(Phrase {
            gaps: toks.windows(2).map(|w| !w[0].joins(&w[1])).collect(),
            words: toks.iter().map(|t| t.text.to_string()).collect(),
        })
    }

    fn matches_at(&self, tokens: &[Token<'_>], pos: usize) -> bool {
        let n = self.words.len();
        if pos + n > tokens.len() {
            return false;
        }
        let window = &tokens[pos..pos + n];
        window.iter().zip(&self.words).all(|(t, w)| t.text == w)
            && window
                .windows(2)
                .zip(&self.gaps)
                .all(|(pair, &gap)| !pair[0].joins(&pair[1]) == gap)
    }
}

/// Exact-case phrase dictionary keyed by first word; entries under one key
/// are kept longest first so the first hit is the longest match.
#[derive(Debug, Clone, PartialEq)]
struct PhraseIndex<V> {
    by_first: HashMap<String, Vec<(Phrase, V)>>,
}

impl<V> Default for PhraseIndex<V> {
    fn default() -> Self {
        PhraseIndex {
            by_first: HashMap::new(),
        }
    }
}

impl<V> PhraseIndex<V> {
    fn entry(&mut self, phrase: Phrase, init: impl FnOnce() -> V) -> &mut V {
        let bucket = self.by_first.entry(phrase.words[0].clone()).or_default();
        let idx = match bucket.iter().position(|(p, _)| *p == phrase) {
            Some(i) => i,
            None => {
                let at = bucket.partition_point(|(p, _)| p.words.len() >= phrase.words.len());
                bucket.insert(at, (phrase, init()));
                at
            }
        };
        &mut bucket[idx].1
    }

    fn longest_at(&self, tokens: &[Token<'_>], pos: usize) -> Option<(usize, &V)> {
        let first = tokens.get(pos)?;
        self.by_first
            .get(first.text)?
            .iter()
            .find(|(p, _)| p.matches_at(tokens, pos))
            .map(|(p, v)| (p.words.len(), v))
    }

    fn len(&self) -> usize {
        self.by_first.values().map(Vec::len).sum()
    }
}

/// Keep only important places outside a region, the way a world gazetteer is
/// trimmed for a mostly-European news stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SizeFilter {
    pub max_size_class: SizeClass,
    pub region: BTreeSet<CountryCode>,
}

impl SizeFilter {
    pub fn keeps(&self, rec: &PlaceRecord) -> bool {
        rec.size_class <= self.max_size_class || self.region.contains(&rec.country)
    }
}

/// Member states of the Council of Europe plus Belarus, Kosovo and the
/// micro-states; the `europe` shorthand for [`SizeFilter`] regions.
pub const EUROPE: &[&str] = &[
    "AD", "AL", "AM", "AT", "AZ", "BA", "BE", "BG", "BY", "CH", "CY", "CZ", "DE", "DK", "EE", "ES", "FI", "FR", "GB",
    "GE", "GR", "HR", "HU", "IE", "IS", "IT", "LI", "LT", "LU", "LV", "MC", "MD", "ME", "MK", "MT", "NL", "NO", "PL",
    "PT", "RO", "RS", "RU", "SE", "SI", "SK", "SM", "TR", "UA", "VA", "XK",
];

impl FromStr for SizeFilter {
    type Err = String;

    /// `N:CC,CC,...` or `N:europe`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (n, region) = s
            .split_once(':')
            .ok_or_else(|| format!("expected <max_size_class>:<region list>, got {s:?}"))?;
        let max_size_class = n
            .trim()
            .parse::<u8>()
            .ok()
            .and_then(SizeClass::new)
            .ok_or_else(|| format!("bad size class {n:?}"))?;
        let mut codes = BTreeSet::new();
        for item in region.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            if item.eq_ignore_ascii_case("europe") {
                codes.extend(EUROPE.iter().map(|c| c.parse::<CountryCode>().expect("static code")));
            } else {
                codes.insert(item.parse()?);
            }
        }
        Ok(SizeFilter {
            max_size_class,
            region: codes,
        })
    }
}

#[derive(Debug, Clone, Default)]
pub struct LoadOptions {
    pub size_filter: Option<SizeFilter>,
}

/// Result of [`GazetteerIndex::match_at`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NameMatch {
    /// Number of tokens covered.
    pub span: usize,
    /// Every record carrying this exact surface, ascending.
    pub ids: Vec<PlaceId>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GazetteerIndex {
    places: Vec<PlaceRecord>,
    by_id: HashMap<PlaceId, usize>,
    names: PhraseIndex<Vec<PlaceId>>,
}

impl GazetteerIndex {
    pub fn new(records: Vec<PlaceRecord>) -> Result<Self, GazetteerError> {
        let mut index = GazetteerIndex {
            places: Vec::with_capacity(records.len()),
            by_id: HashMap::new(),
            names: PhraseIndex::default(),
        };
        for (i, rec) in records.into_iter().enumerate() {
            index.insert(rec, i + 1)?;
        }
        Ok(index)
    }

    fn insert(&mut self, rec: PlaceRecord, line: usize) -> Result<(), GazetteerError> {
        if self.by_id.contains_key(&rec.id) {
            return Err(GazetteerError::DuplicateId { line, id: rec.id });
        }
        for surface in rec.surfaces() {
            let phrase = Phrase::parse(surface)
                .ok_or_else(|| row_err(line, format!("name {surface:?} has no word characters")))?;
            let ids = self.names.entry(phrase, Vec::new);
            if let Err(at) = ids.binary_search(&rec.id) {
                ids.insert(at, rec.id);
            }
        }
        self.by_id.insert(rec.id, self.places.len());
        self.places.push(rec);
        Ok(())
    }

    pub fn from_reader<R: BufRead>(reader: R, opts: &LoadOptions) -> Result<Self, GazetteerError> {
        let mut index = GazetteerIndex::new(Vec::new())?;
        let mut seen = HashSet::new();
        for (i, line) in reader.lines().enumerate() {
            let lineno = i + 1;
            let line = line.map_err(|e| row_err(lineno, e.to_string()))?;
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let rec = parse_place_row(&line, lineno)?;
            if !seen.insert(rec.id) {
                return Err(GazetteerError::DuplicateId {
                    line: lineno,
                    id: rec.id,
                });
            }
            if opts.size_filter.as_ref().is_some_and(|f| !f.keeps(&rec)) {
                continue;
            }
            index.insert(rec, lineno)?;
        }
        Ok(index)
    }

    pub fn places(&self) -> &[PlaceRecord] {
        &self.places
    }

    pub fn len(&self) -> usize {
        self.places.len()
    }

    pub fn is_empty(&self) -> bool {
        self.places.is_empty()
    }

    /// Number of distinct indexed surfaces.
    pub fn surface_count(&self) -> usize {
        self.names.len()
    }

    pub fn get(&self, id: PlaceId) -> Option<&PlaceRecord> {
        self.by_id.get(&id).map(|&i| &self.places[i])
    }

    /// Longest gazetteer name starting at token `pos`. Case is matched
    /// exactly on every token.
    pub fn match_at(&self, tokens: &[Token<'_>], pos: usize) -> Option<NameMatch> {
        self.names
            .longest_at(tokens, pos)
            .map(|(span, ids)| NameMatch { span, ids: ids.clone() })
    }

    /// Single-token surfaces, for stop-word proposal.
    fn single_token_surfaces(&self) -> impl Iterator<Item = &str> {
        self.names
            .by_first
            .iter()
            .filter(|(_, entries)| entries.iter().any(|(p, _)| p.words.len() == 1))
            .map(|(first, _)| first.as_str())
    }
}

fn parse_place_row(line: &str, lineno: usize) -> Result<PlaceRecord, GazetteerError> {
    let fields: Vec<&str> = line.split('\t').collect();
    let [id, canonical, variants, country, lat, lon, size] = fields[..] else {
        return Err(row_err(
            lineno,
            format!("expected 7 tab-separated fields, found {}", fields.len()),
        ));
    };
    let id = id
        .trim()
        .parse()
        .map_err(|_| row_err(lineno, format!("bad id {id:?}")))?;
    let canonical_name = canonical.trim().to_string();
    if canonical_name.is_empty() {
        return Err(row_err(lineno, "empty canonical name"));
    }
    let variants: Vec<String> = if variants.trim().is_empty() {
        Vec::new()
    } else {
        variants.split('|').map(|v| v.trim().to_string()).collect()
    };
    if variants.iter().any(String::is_empty) {
        return Err(row_err(lineno, "empty variant"));
    }
    let country = country.trim().parse().map_err(|e: String| row_err(lineno, e))?;
    let coord = |s: &str, limit: f64, what: &str| {
        s.trim()
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite() && v.abs() <= limit)
            .ok_or_else(|| row_err(lineno, format!("bad {what} {s:?}")))
    };
    let latitude = coord(lat, 90.0, "latitude")?;
    let longitude = coord(lon, 180.0, "longitude")?;
    let size_class = size
        .trim()
        .parse::<u8>()
        .ok()
        .and_then(SizeClass::new)
        .ok_or_else(|| row_err(lineno, format!("size class {size:?} outside 1..=6")))?;
    Ok(PlaceRecord {
        id,
        canonical_name,
        variants,
        country,
        latitude,
        longitude,
        size_class,
    })
}

pub fn load_gazetteer(path: &Path, opts: &LoadOptions) -> Result<GazetteerIndex, GazetteerError> {
    GazetteerIndex::from_reader(open(path)?, opts)
}

/// Place-name homographs of common words in one language, compared exactly.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GeoStopList {
    pub language: String,
    pub words: HashSet<String>,
}

impl GeoStopList {
    pub fn contains(&self, surface: &str) -> bool {
        self.words.contains(surface)
    }

    /// One word per line. Blank lines and `#` comments are skipped, and
    /// anything after a tab is ignored so curated proposal files load as-is.
    pub fn from_reader<R: BufRead>(reader: R, language: &str) -> io::Result<Self> {
        let mut words = HashSet::new();
        for line in reader.lines() {
            let line = line?;
            let word = line.split('\t').next().unwrap_or("").trim();
            if !word.is_empty() && !word.starts_with('#') {
                words.insert(word.to_string());
            }
        }
        Ok(GeoStopList {
            language: language.to_string(),
            words,
        })
    }
}

pub fn load_stop_words(path: &Path, language: &str) -> Result<GeoStopList, GazetteerError> {
    GeoStopList::from_reader(open(path)?, language).map_err(|source| GazetteerError::Io {
        path: path.display().to_string(),
        source,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TriggerKind {
    IsoCode,
    Currency,
    Adjective,
    CountryName,
}

impl FromStr for TriggerKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "iso_code" => TriggerKind::IsoCode,
            "currency" => TriggerKind::Currency,
            "adjective" => TriggerKind::Adjective,
            "country_name" => TriggerKind::CountryName,
            _ => return Err(format!("unknown trigger kind {s:?}")),
        })
    }
}

/// A non-toponym surface that still counts as a mention of a country:
/// "Iraqi", "forint", "HU", "Franța".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountryTrigger {
    pub surface: String,
    pub country: CountryCode,
    pub kind: TriggerKind,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct TriggerTable {
    triggers: Vec<CountryTrigger>,
    index: PhraseIndex<usize>,
}

impl TriggerTable {
    pub fn new(triggers: Vec<CountryTrigger>) -> Result<Self, GazetteerError> {
        let mut table = TriggerTable::default();
        for (i, t) in triggers.into_iter().enumerate() {
            table.insert(t, i + 1)?;
        }
        Ok(table)
    }

    fn insert(&mut self, trig: CountryTrigger, line: usize) -> Result<(), GazetteerError> {
        let phrase = Phrase::parse(&trig.surface)
            .ok_or_else(|| row_err(line, format!("trigger {:?} has no word characters", trig.surface)))?;
        let next = self.triggers.len();
        let slot = *self.index.entry(phrase, || next);
        if slot == next {
            self.triggers.push(trig);
        } else if self.triggers[slot].country != trig.country {
            return Err(row_err(
                line,
                format!(
                    "trigger {:?} already maps to {}, not {}",
                    trig.surface, self.triggers[slot].country, trig.country
                ),
            ));
        }
        Ok(())
    }

    pub fn from_reader<R: BufRead>(reader: R) -> Result<Self, GazetteerError> {
        let mut table = TriggerTable::default();
        for (i, line) in reader.lines().enumerate() {
            let lineno = i + 1;
            let line = line.map_err(|e| row_err(lineno, e.to_string()))?;
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').map(str::trim).collect();
            let [surface, country, kind] = fields[..] else {
                return Err(row_err(lineno, "expected surface<TAB>country<TAB>kind"));
            };
            if surface.is_empty() {
                return Err(row_err(lineno, "empty trigger surface"));
            }
            let trig = CountryTrigger {
                surface: surface.to_string(),
                country: country.parse().map_err(|e: String| row_err(lineno, e))?,
                kind: kind.parse().map_err(|e: String| row_err(lineno, e))?,
            };
            table.insert(trig, lineno)?;
        }
        Ok(table)
    }

    pub fn len(&self) -> usize {
        self.triggers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triggers.is_empty()
    }

    /// Longest trigger starting at token `pos`, with its token span.
    pub fn match_at(&self, tokens: &[Token<'_>], pos: usize) -> Option<(usize, &CountryTrigger)> {
        self.index
            .longest_at(tokens, pos)
            .map(|(span, &i)| (span, &self.triggers[i]))
    }
}

pub fn load_triggers(path: &Path) -> Result<TriggerTable, GazetteerError> {
    TriggerTable::from_reader(open(path)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StopWordProposal {
    /// 1-based rank in the frequency list.
    pub rank: usize,
    pub word: String,
    pub surface: String,
}

/// Gazetteer surfaces that are also among the `top_n` most frequent words,
/// compared case-insensitively, in frequency order. The result is meant for
/// a human to prune ("London" is frequent but should stay a place).
pub fn propose_stop_words(index: &GazetteerIndex, frequency_list: &[String], top_n: usize) -> Vec<StopWordProposal> {
    let mut by_lower: HashMap<String, Vec<&str>> = HashMap::new();
    for s in index.single_token_surfaces() {
        by_lower.entry(s.to_lowercase()).or_default().push(s);
    }
    for v in by_lower.values_mut() {
        v.sort_unstable();
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (i, word) in frequency_list.iter().take(top_n).enumerate() {
        if let Some(surfaces) = by_lower.get(&word.to_lowercase()) {
            for s in surfaces {
                if seen.insert(*s) {
                    out.push(StopWordProposal {
                        rank: i + 1,
                        word: word.clone(),
                        surface: s.to_string(),
                    });
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const STARA: &str = "\
# id\tname\tvariants\tcountry\tlat\tlon\tsize
1\tStara Zagora\t\tBG\t42.43\t25.64\t2
2\tStara Reka\t\tBG\t42.83\t26.15\t6
3\tStara Tura\t\tSK\t48.78\t17.70\t5
4\tVenezia\tVenice|Venedig\tIT\t45.44\t12.33\t2
";

    fn idx(src: &str) -> GazetteerIndex {
        GazetteerIndex::from_reader(src.as_bytes(), &LoadOptions::default()).unwrap()
    }

    #[test]
    fn comments_only_is_empty() {
        let g = idx("# nothing here\n\n");
        assert!(g.is_empty());
    }

    #[test]
    fn loads_rows_and_variants() {
        let g = idx(STARA);
        assert_eq!(g.len(), 4);
        let r = g.get(1).unwrap();
        assert_eq!(r.canonical_name, "Stara Zagora");
        assert_eq!(r.country.as_str(), "BG");
        assert_eq!(r.size_class.get(), 2);
        // two-token name filed under its first token
        assert!(g.names.by_first["Stara"]
            .iter()
            .any(|(p, _)| p.words == ["Stara", "Zagora"]));
        let toks = tokenize("Venedig");
        assert_eq!(g.match_at(&toks, 0).unwrap().ids, [4]);
    }

    #[test]
    fn longest_match_and_prefix_alone() {
        let g = idx(STARA);
        let toks = tokenize("Stara Zagora is");
        assert_eq!(g.match_at(&toks, 0), Some(NameMatch { span: 2, ids: vec![1] }));
        assert_eq!(g.match_at(&tokenize("Stara"), 0), None);
        assert_eq!(g.match_at(&tokenize("Stara. Zagora"), 0), None);
        assert_eq!(g.match_at(&tokenize("stara zagora"), 0), None);
    }

    #[test]
    fn bad_rows() {
        let bad_size = "1\tX\t\tBG\t1\t1\t7\n";
        let err = GazetteerIndex::from_reader(bad_size.as_bytes(), &LoadOptions::default()).unwrap_err();
        assert!(matches!(err, GazetteerError::Row { line: 1, .. }));
        let dup = "1\tX\t\tBG\t1\t1\t3\n1\tY\t\tBG\t1\t1\t3\n";
        let err = GazetteerIndex::from_reader(dup.as_bytes(), &LoadOptions::default()).unwrap_err();
        assert!(matches!(err, GazetteerError::DuplicateId { line: 2, id: 1 }));
        for row in [
            "1\tX\tBG\t1\t1\t3",
            "1\tX\t\tbg\t1\t1\t3",
            "1\tX\t\tBG\t91\t1\t3",
            "1\t \t\tBG\t1\t1\t3",
        ] {
            let err = GazetteerIndex::from_reader(row.as_bytes(), &LoadOptions::default()).unwrap_err();
            assert!(matches!(err, GazetteerError::Row { line: 1, .. }), "{row:?}");
        }
    }

    #[test]
    fn size_filter_keeps_region() {
        let src = "1\tBig\t\tUS\t1\t1\t2\n2\tSmall\t\tUS\t1\t1\t4\n3\tTiny\t\tFR\t1\t1\t6\n";
        let opts = LoadOptions {
            size_filter: Some("2:europe".parse().unwrap()),
        };
        let g = GazetteerIndex::from_reader(src.as_bytes(), &opts).unwrap();
        let ids: Vec<_> = g.places().iter().map(|p| p.id).collect();
        assert_eq!(ids, [1, 3]);
    }

    #[test]
    fn stop_words_dedup_and_comments() {
        let s = GeoStopList::from_reader("And\nSplit\nAnnan\nSplit\n# x\n\n".as_bytes(), "en").unwrap();
        assert_eq!(s.words.len(), 3);
        assert!(s.contains("Split") && !s.contains("split"));
        let e = GeoStopList::from_reader("".as_bytes(), "en").unwrap();
        assert!(e.words.is_empty());
    }

    #[test]
    fn trigger_table() {
        let t =
            TriggerTable::from_reader("Iraqi\tIQ\tadjective\nMarea Britanie\tGB\tcountry_name\n".as_bytes()).unwrap();
        let toks = tokenize("Marea Britanie si Iraqi");
        let (span, trig) = t.match_at(&toks, 0).unwrap();
        assert_eq!((span, trig.country.as_str()), (2, "GB"));
        assert_eq!(t.match_at(&toks, 3).unwrap().1.kind, TriggerKind::Adjective);
        let clash = TriggerTable::from_reader("Congo\tCG\tcountry_name\nCongo\tCD\tcountry_name\n".as_bytes());
        assert!(clash.is_err());
        assert!(TriggerTable::from_reader("x\tIQ\tnoun\n".as_bytes()).is_err());
    }

    #[test]
    fn stop_word_proposals() {
        let g = idx(
            "1\tSplit\t\tHR\t43.5\t16.44\t3\n2\tLondon\t\tGB\t51.5\t-0.12\t1\n3\tStara Zagora\t\tBG\t42.4\t25.6\t2\n",
        );
        let mut freq: Vec<String> = (0..1000).map(|i| format!("w{i}")).collect();
        freq[411] = "split".into();
        freq[50] = "london".into();
        freq[10] = "stara".into();
        let p = propose_stop_words(&g, &freq, 1000);
        let got: Vec<(&str, usize)> = p.iter().map(|p| (p.surface.as_str(), p.rank)).collect();
        assert_eq!(got, [("London", 51), ("Split", 412)]);
        assert!(propose_stop_words(&g, &freq, 40).is_empty());
    }
}
