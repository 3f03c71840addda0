use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::io::{self, BufRead, Write};
use std::str::FromStr;

use thiserror::Error;

use super::encoding::Encoding;

/// Add-one smoothing spreads mass over every possible next byte.
const ALPHABET: f64 = 256.0;

/// Shortest input holding one trigram.
pub const MIN_BYTES: usize = 3;

#[derive(Debug, Error)]
pub enum LangIdError {
    #[error("training corpus has {0} bytes, need at least {MIN_BYTES}")]
    CorpusTooShort(usize),
    #[error("text has {0} bytes, need at least {MIN_BYTES} to score")]
    TextTooShort(usize),
    #[error("no profiles to compare against")]
    NoProfiles,
    #[error("invalid language code {0:?}: expected two lowercase ASCII letters")]
    BadLanguage(String),
    #[error(transparent)]
    UnknownEncoding(#[from] super::encoding::UnknownEncoding),
    #[error("profile line {line}: {msg}")]
    Format { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// A (language, encoding) pair such as `hu`/`ISO-8859-2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LangEncLabel {
    language: String,
    encoding: Encoding,
}

impl LangEncLabel {
    pub fn new(language: &str, encoding: Encoding) -> Result<Self, LangIdError> {
        let ok = language.len() == 2 && language.bytes().all(|b| b.is_ascii_lowercase());
        if !ok {
            return Err(LangIdError::BadLanguage(language.to_string()));
        }
        Ok(LangEncLabel {
            language: language.to_string(),
            encoding,
        })
    }

    pub fn language(&self) -> &str {
        &self.language
    }

    pub fn encoding(&self) -> Encoding {
        self.encoding
    }
}

impl Ord for LangEncLabel {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.language.as_str(), self.encoding.name()).cmp(&(other.language.as_str(), other.encoding.name()))
    }
}

impl PartialOrd for LangEncLabel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for LangEncLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.language, self.encoding)
    }
}

impl FromStr for LangEncLabel {
    type Err = LangIdError;

    /// Parses `lang/ENCODING` or `lang.ENCODING`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (lang, enc) = s
            .split_once(['/', '.'])
            .ok_or_else(|| LangIdError::BadLanguage(s.to_string()))?;
        LangEncLabel::new(lang, enc.parse()?)
    }
}

/// Byte bigram and trigram counts for one language/encoding pair.
#[derive(Debug, Clone, PartialEq)]
pub struct LangEncProfile {
    label: LangEncLabel,
    bigrams: HashMap<[u8; 2], u64>,
    trigrams: HashMap<[u8; 3], u64>,
    total_bytes: u64,
}

impl LangEncProfile {
    /// A profile with no observations; scores every byte at ln(1/256).
    pub fn empty(label: LangEncLabel) -> Self {
        LangEncProfile {
            label,
            bigrams: HashMap::new(),
            trigrams: HashMap::new(),
            total_bytes: 0,
        }
    }

    pub fn label(&self) -> &LangEncLabel {
        &self.label
    }

    pub fn total_bytes(&self) -> u64 {
        self.total_bytes
    }

    pub fn bigram(&self, a: u8, b: u8) -> u64 {
        self.bigrams.get(&[a, b]).copied().unwrap_or(0)
    }

    pub fn trigram(&self, a: u8, b: u8, c: u8) -> u64 {
        self.trigrams.get(&[a, b, c]).copied().unwrap_or(0)
    }

    pub fn bigram_counts(&self) -> impl Iterator<Item = ([u8; 2], u64)> + '_ {
        self.bigrams.iter().map(|(k, v)| (*k, *v))
    }

    pub fn trigram_counts(&self) -> impl Iterator<Item = ([u8; 3], u64)> + '_ {
        self.trigrams.iter().map(|(k, v)| (*k, *v))
    }

    /// Write the profile in its line-oriented text form. Records are sorted,
    /// so the same profile always serializes to the same bytes.
    pub fn write_to<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(
            w,
            "#langenc {} {} {}",
            self.label.language, self.label.encoding, self.total_bytes
        )?;
        let mut bi: Vec<_> = self.bigram_counts().collect();
        bi.sort_unstable();
        for ([a, b], n) in bi {
            writeln!(w, "B {a} {b} {n}")?;
        }
        let mut tri: Vec<_> = self.trigram_counts().collect();
        tri.sort_unstable();
        for ([a, b, c], n) in tri {
            writeln!(w, "T {a} {b} {c} {n}")?;
        }
        Ok(())
    }

    pub fn read_from<R: BufRead>(r: R) -> Result<Self, LangIdError> {
        let mut lines = r.lines().enumerate();
        let header = match lines.next() {
            Some((_, line)) => line?,
            None => {
                return Err(LangIdError::Format {
                    line: 1,
                    msg: "empty profile".into(),
                })
            }
        };
        let bad = |line: usize, msg: &str| LangIdError::Format {
            line,
            msg: msg.to_string(),
        };
        let fields: Vec<&str> = header.split_whitespace().collect();
        let [tag, lang, enc, total] = fields[..] else {
            return Err(bad(1, "expected `#langenc <lang> <encoding> <total_bytes>`"));
        };
        if tag != "#langenc" {
            return Err(bad(1, "missing #langenc header"));
        }
        let label = LangEncLabel::new(lang, enc.parse()?)?;
        let total_bytes = total.parse().map_err(|_| bad(1, "bad total_bytes"))?;
        let mut profile = LangEncProfile {
            total_bytes,
            ..LangEncProfile::empty(label)
        };

        for (i, line) in lines {
            let line = line?;
            let lineno = i + 1;
            let mut parts = line.split_whitespace();
            let Some(kind) = parts.next() else { continue };
            let nums: Result<Vec<u64>, _> = parts.map(str::parse::<u64>).collect();
            let nums = nums.map_err(|_| bad(lineno, "non-numeric field"))?;
            let byte = |v: u64| u8::try_from(v).map_err(|_| bad(lineno, "byte out of range"));
            match (kind, nums.as_slice()) {
                ("B", &[a, b, n]) => {
                    profile.bigrams.insert([byte(a)?, byte(b)?], n);
                }
                ("T", &[a, b, c, n]) => {
                    profile.trigrams.insert([byte(a)?, byte(b)?, byte(c)?], n);
                }
                _ => return Err(bad(lineno, "expected `B b1 b2 n` or `T b1 b2 b3 n`")),
            }
        }
        for (&[a, b, c], &n) in &profile.trigrams {
            if n > profile.bigram(a, b) {
                return Err(bad(0, &format!("trigram {a} {b} {c} exceeds its bigram count")));
            }
        }
        Ok(profile)
    }
}

/// Count overlapping byte bigrams and trigrams in `corpus`.
pub fn train_profile(corpus: &[u8], label: LangEncLabel) -> Result<LangEncProfile, LangIdError> {
    if corpus.len() < MIN_BYTES {
        return Err(LangIdError::CorpusTooShort(corpus.len()));
    }
    let mut profile = LangEncProfile::empty(label);
    for w in corpus.windows(2) {
        *profile.bigrams.entry([w[0], w[1]]).or_insert(0) += 1;
    }
    for w in corpus.windows(3) {
        *profile.trigrams.entry([w[0], w[1], w[2]]).or_insert(0) += 1;
    }
    profile.total_bytes = corpus.len() as u64;
    Ok(profile)
}

/// Mean natural-log probability per predicted byte under an order-2 Markov
/// model with add-one smoothing. Always finite and at most zero.
pub fn score_text(profile: &LangEncProfile, text: &[u8]) -> Result<f64, LangIdError> {
    if text.len() < MIN_BYTES {
        return Err(LangIdError::TextTooShort(text.len()));
    }
    let sum: f64 = text
        .windows(3)
        .map(|w| {
            let tri = profile.trigram(w[0], w[1], w[2]) as f64;
            let bi = profile.bigram(w[0], w[1]) as f64;
            ((tri + 1.0) / (bi + ALPHABET)).ln()
        })
        .sum();
    Ok(sum / (text.len() - 2) as f64)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScoredLabel {
    pub label: LangEncLabel,
    pub score: f64,
}

/// Score `text` against every profile; best first, ties by label order.
pub fn identify(profiles: &[LangEncProfile], text: &[u8]) -> Result<Vec<ScoredLabel>, LangIdError> {
    if profiles.is_empty() {
        return Err(LangIdError::NoProfiles);
    }
    let mut ranked = profiles
        .iter()
        .map(|p| {
            Ok(ScoredLabel {
                label: p.label.clone(),
                score: score_text(p, text)?,
            })
        })
        .collect::<Result<Vec<_>, LangIdError>>()?;
    ranked.sort_by(|a, b| b.score.total_cmp(&a.score).then_with(|| a.label.cmp(&b.label)));
    Ok(ranked)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn label(l: &str, e: Encoding) -> LangEncLabel {
        LangEncLabel::new(l, e).unwrap()
    }

    #[test]
    fn aaa_counts() {
        let p = train_profile(b"aaa", label("en", Encoding::UsAscii)).unwrap();
        assert_eq!(p.trigram(b'a', b'a', b'a'), 1);
        assert_eq!(p.bigram(b'a', b'a'), 2);
        assert_eq!(p.total_bytes(), 3);
    }

    #[test]
    fn short_corpus_rejected() {
        let l = label("en", Encoding::UsAscii);
        assert!(matches!(
            train_profile(b"", l.clone()),
            Err(LangIdError::CorpusTooShort(0))
        ));
        assert!(matches!(train_profile(b"ab", l), Err(LangIdError::CorpusTooShort(2))));
    }

    #[test]
    fn untrained_profile_scores_uniform() {
        let p = LangEncProfile::empty(label("en", Encoding::UsAscii));
        let s = score_text(&p, b"xyz").unwrap();
        assert!((s - (1.0f64 / 256.0).ln()).abs() < 1e-12);
        assert!((s + 5.545).abs() < 1e-3);
    }

    #[test]
    fn trained_on_a_run_of_a() {
        let corpus = vec![b'a'; 1000];
        let p = train_profile(&corpus, label("en", Encoding::UsAscii)).unwrap();
        // 998 trigrams, 999 bigrams
        let s = score_text(&p, b"aaa").unwrap();
        assert!((s - (999.0f64 / 1255.0).ln()).abs() < 1e-12);
        assert!((s + 0.2282).abs() < 1e-4);
    }

    #[test]
    fn short_text_rejected() {
        let p = LangEncProfile::empty(label("en", Encoding::UsAscii));
        assert!(matches!(score_text(&p, b"ab"), Err(LangIdError::TextTooShort(2))));
    }

    #[test]
    fn identify_needs_profiles() {
        assert!(matches!(identify(&[], b"abc"), Err(LangIdError::NoProfiles)));
    }

    #[test]
    fn singleton_ranks_first() {
        let p = train_profile(b"zzzzzz", label("hu", Encoding::Iso8859_2)).unwrap();
        let r = identify(&[p], b"hello world").unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].label.language(), "hu");
    }

    #[test]
    fn ties_break_by_label() {
        let a = LangEncProfile::empty(label("hu", Encoding::Utf8));
        let b = LangEncProfile::empty(label("en", Encoding::Iso8859_1));
        let c = LangEncProfile::empty(label("hu", Encoding::Iso8859_2));
        let r = identify(&[a, b, c], b"abcd").unwrap();
        let names: Vec<String> = r.iter().map(|s| s.label.to_string()).collect();
        assert_eq!(names, ["en/ISO-8859-1", "hu/ISO-8859-2", "hu/UTF-8"]);
    }

    #[test]
    fn label_validation() {
        assert!(LangEncLabel::new("EN", Encoding::Utf8).is_err());
        assert!(LangEncLabel::new("eng", Encoding::Utf8).is_err());
        let l: LangEncLabel = "ro/UTF-8".parse().unwrap();
        assert_eq!(l.language(), "ro");
        assert_eq!(l.encoding(), Encoding::Utf8);
    }

    #[test]
    fn file_format_round_trips() {
        let p = train_profile("Stara Zagora, Bulgaria".as_bytes(), label("bg", Encoding::Utf8)).unwrap();
        let mut buf = Vec::new();
        p.write_to(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("#langenc bg UTF-8 22\n"));
        let q = LangEncProfile::read_from(buf.as_slice()).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn malformed_profile_lines() {
        let r = LangEncProfile::read_from("#langenc en US-ASCII 3\nB 1 2\n".as_bytes());
        assert!(matches!(r, Err(LangIdError::Format { line: 2, .. })));
        let r = LangEncProfile::read_from("#langenc en US-ASCII 3\nB 1 300 4\n".as_bytes());
        assert!(matches!(r, Err(LangIdError::Format { line: 2, .. })));
        let r = LangEncProfile::read_from("#langenc en EBCDIC 3\n".as_bytes());
        assert!(matches!(r, Err(LangIdError::UnknownEncoding(_))));
    }
}
