//! Month-anchored date search.
//!
//! Every month surface from the lexicon is an anchor. From an anchor the
//! scanner looks left and right for the rest of the date, allowing at most
//! one connector phrase ("of", "in the year", ", the") in each gap between
//! two date parts:
//!
//! ```text
//! [year ,the] [day of] MONTH [the day] [, year | in the year <spelled>]
//! [pre-modifier] MONTH                    -> relative month
//! MONTH <relative-year phrase>            -> month in a relative year
//! ```
//!
//! A bare month with nothing around it is not a date. Relative day words
//! ("yesterday") are matched on their own. All matching is exact-case.

use super::{DateLexicon, NormalizedDate};
use crate::text::CharIndex;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexicalCandidate {
    pub offset: usize,
    pub length: usize,
    pub surface: String,
    /// Not yet checked against the calendar.
    pub normal: NormalizedDate,
}

fn char_before(text: &str, pos: usize) -> Option<char> {
    text[..pos].chars().next_back()
}

fn char_at(text: &str, pos: usize) -> Option<char> {
    text[pos..].chars().next()
}

fn alnum_before(text: &str, pos: usize) -> bool {
    char_before(text, pos).is_some_and(char::is_alphanumeric)
}

fn alnum_at(text: &str, pos: usize) -> bool {
    char_at(text, pos).is_some_and(char::is_alphanumeric)
}

fn skip_ws(text: &str, pos: usize) -> usize {
    pos + text[pos..]
        .chars()
        .take_while(|c| c.is_whitespace())
        .map(char::len_utf8)
        .sum::<usize>()
}

fn skip_ws_back(text: &str, pos: usize) -> usize {
    pos - text[..pos]
        .chars()
        .rev()
        .take_while(|c| c.is_whitespace())
        .map(char::len_utf8)
        .sum::<usize>()
}

fn starts_alnum(s: &str) -> bool {
    s.chars().next().is_some_and(char::is_alphanumeric)
}

fn ends_alnum(s: &str) -> bool {
    s.chars().next_back().is_some_and(char::is_alphanumeric)
}

/// Match `phrase` starting exactly at `pos`; any whitespace run in the text
/// stands for a space in the phrase. Returns the end, which must not split
/// a word.
fn phrase_fwd(text: &str, pos: usize, phrase: &str) -> Option<usize> {
    let mut p = pos;
    for (i, piece) in phrase.split_whitespace().enumerate() {
        if i > 0 {
            let q = skip_ws(text, p);
            if q == p {
                return None;
            }
            p = q;
        }
        if !text[p..].starts_with(piece) {
            return None;
        }
        p += piece.len();
    }
    if ends_alnum(phrase) && alnum_at(text, p) {
        return None;
    }
    Some(p)
}

/// Match `phrase` ending exactly at `end`; returns its start.
fn phrase_back(text: &str, end: usize, phrase: &str) -> Option<usize> {
    let mut p = end;
    for (i, piece) in phrase.split_whitespace().rev().enumerate() {
        if i > 0 {
            let q = skip_ws_back(text, p);
            if q == p {
                return None;
            }
            p = q;
        }
        if !text[..p].ends_with(piece) {
            return None;
        }
        p -= piece.len();
    }
    if starts_alnum(phrase) && alnum_before(text, p) {
        return None;
    }
    Some(p)
}

struct Scanner<'a> {
    text: &'a str,
    lex: &'a DateLexicon,
    /// (surface, month), longest surface first.
    months: Vec<(&'a str, u32)>,
    /// (surface, day), longest first.
    days: Vec<(&'a str, u32)>,
    connectors: Vec<&'a str>,
    relative_days: Vec<(&'a str, i64)>,
    pre_modifiers: Vec<(&'a str, i32)>,
    relative_years: Vec<(&'a str, i32)>,
}

fn longest_first<T>(mut v: Vec<(&str, T)>) -> Vec<(&str, T)> {
    v.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then(a.0.cmp(b.0)));
    v
}

impl<'a> Scanner<'a> {
    fn new(text: &'a str, lex: &'a DateLexicon) -> Self {
        let months = lex
            .months
            .iter()
            .enumerate()
            .flat_map(|(i, list)| list.iter().map(move |s| (s.as_str(), i as u32 + 1)))
            .collect();
        let days = lex
            .day_ordinals
            .iter()
            .flat_map(|(&d, list)| list.iter().map(move |s| (s.as_str(), d)))
            .collect();
        let mut connectors: Vec<&str> = lex.connectors.iter().map(String::as_str).collect();
        connectors.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
        Scanner {
            text,
            lex,
            months: longest_first(months),
            days: longest_first(days),
            connectors,
            relative_days: longest_first(lex.relative_days.iter().map(|(s, &v)| (s.as_str(), v)).collect()),
            pre_modifiers: longest_first(lex.pre_modifiers.iter().map(|(s, &v)| (s.as_str(), v)).collect()),
            relative_years: longest_first(lex.relative_years.iter().map(|(s, &v)| (s.as_str(), v)).collect()),
        }
    }

    /// Positions where the next date part may start after `pos`: past plain
    /// whitespace, or past one connector phrase.
    fn gaps_fwd(&self, pos: usize) -> Vec<usize> {
        let t = self.text;
        let mut out = Vec::new();
        let ws = skip_ws(t, pos);
        if ws > pos {
            out.push(ws);
        }
        for c in &self.connectors {
            if starts_alnum(c) && ws == pos {
                continue;
            }
            if let Some(e) = phrase_fwd(t, ws, c) {
                let next = skip_ws(t, e);
                if ends_alnum(c) && next == e {
                    continue;
                }
                out.push(next);
            }
        }
        out
    }

    /// Mirror of [`Self::gaps_fwd`]: where the previous date part may end.
    fn gaps_back(&self, pos: usize) -> Vec<usize> {
        let t = self.text;
        let mut out = Vec::new();
        let ws = skip_ws_back(t, pos);
        if ws < pos {
            out.push(ws);
        }
        for c in &self.connectors {
            if ends_alnum(c) && ws == pos {
                continue;
            }
            if let Some(s) = phrase_back(t, ws, c) {
                let prev = skip_ws_back(t, s);
                if starts_alnum(c) && prev == s {
                    continue;
                }
                out.push(prev);
            }
        }
        out
    }

    fn digits_fwd(&self, pos: usize) -> usize {
        self.text[pos..].bytes().take_while(u8::is_ascii_digit).count()
    }

    fn digits_back(&self, end: usize) -> usize {
        self.text[..end].bytes().rev().take_while(u8::is_ascii_digit).count()
    }

    /// A number continuing as "5.30", "5:30" or "5/6" is not a day.
    fn continues_numerically(&self, end: usize) -> bool {
        let b = self.text.as_bytes();
        matches!(b.get(end), Some(b'.' | b':' | b'/' | b'-')) && b.get(end + 1).is_some_and(u8::is_ascii_digit)
    }

    fn day_fwd(&self, pos: usize) -> Option<(u32, usize)> {
        if alnum_before(self.text, pos) {
            return None;
        }
        for &(s, d) in &self.days {
            if let Some(e) = phrase_fwd(self.text, pos, s) {
                return Some((d, e));
            }
        }
        let n = self.digits_fwd(pos);
        let end = pos + n;
        if !(1..=2).contains(&n) || alnum_at(self.text, end) || self.continues_numerically(end) {
            return None;
        }
        let d: u32 = self.text[pos..end].parse().ok()?;
        (1..=31).contains(&d).then_some((d, end))
    }

    fn day_back(&self, end: usize) -> Option<(u32, usize)> {
        if alnum_at(self.text, end) {
            return None;
        }
        for &(s, d) in &self.days {
            if let Some(st) = phrase_back(self.text, end, s) {
                return Some((d, st));
            }
        }
        let n = self.digits_back(end);
        let start = end - n;
        if !(1..=2).contains(&n) || alnum_before(self.text, start) {
            return None;
        }
        let d: u32 = self.text[start..end].parse().ok()?;
        (1..=31).contains(&d).then_some((d, start))
    }

    fn year_digits_fwd(&self, pos: usize) -> Option<(i32, usize)> {
        let n = self.digits_fwd(pos);
        let end = pos + n;
        if n != 4 || alnum_at(self.text, end) || alnum_before(self.text, pos) || self.continues_numerically(end) {
            return None;
        }
        let y: i32 = self.text[pos..end].parse().ok()?;
        (y >= 1000).then_some((y, end))
    }

    fn year_digits_back(&self, end: usize) -> Option<(i32, usize)> {
        let n = self.digits_back(end);
        let start = end - n;
        if n != 4 || alnum_before(self.text, start) || alnum_at(self.text, end) {
            return None;
        }
        let y: i32 = self.text[start..end].parse().ok()?;
        (y >= 1000).then_some((y, start))
    }

    fn word_fwd(&self, pos: usize) -> Option<(&'a str, usize)> {
        if alnum_before(self.text, pos) {
            return None;
        }
        let len: usize = self.text[pos..]
            .chars()
            .take_while(|c| c.is_alphabetic())
            .map(char::len_utf8)
            .sum();
        (len > 0).then(|| (&self.text[pos..pos + len], pos + len))
    }

    fn number_word(&self, word: &str) -> Option<u32> {
        self.lex.number_words.get(word).copied()
    }

    /// 1..=99 spelled as one word or as tens plus units ("eighty four",
    /// "eighty-four").
    fn small_number_fwd(&self, pos: usize) -> Option<(u32, usize)> {
        let (w, e) = self.word_fwd(pos)?;
        let v = self.number_word(w).filter(|v| (1..=99).contains(v))?;
        if v >= 20 && v % 10 == 0 {
            let t = self.text;
            let next = match t[e..].chars().next() {
                Some('-') => Some(e + 1),
                Some(c) if c.is_whitespace() => Some(skip_ws(t, e)),
                _ => None,
            };
            if let Some(n) = next {
                if let Some((w2, e2)) = self.word_fwd(n) {
                    if let Some(u) = self.number_word(w2).filter(|u| (1..=9).contains(u)) {
                        return Some((v + u, e2));
                    }
                }
            }
        }
        Some((v, e))
    }

    /// "nineteen eighty four" (hundreds pair) always; "two thousand and
    /// two" only when a day was already found.
    fn spelled_year_fwd(&self, pos: usize, with_day: bool) -> Option<(i32, usize)> {
        let (hi, e1) = self.small_number_fwd(pos)?;
        let p = skip_ws(self.text, e1);
        if p == e1 {
            return None;
        }
        if (10..=99).contains(&hi) {
            if let Some((lo, e2)) = self.small_number_fwd(p) {
                return Some((hi as i32 * 100 + lo as i32, e2));
            }
        }
        if !with_day || hi > 9 {
            return None;
        }
        let (w, e2) = self.word_fwd(p)?;
        if self.number_word(w) != Some(1000) {
            return None;
        }
        let base = hi as i32 * 1000;
        let mut q = skip_ws(self.text, e2);
        if q == e2 {
            return Some((base, e2));
        }
        if let Some(and) = &self.lex.number_and {
            if let Some(e) = phrase_fwd(self.text, q, and) {
                let r = skip_ws(self.text, e);
                if r > e {
                    q = r;
                }
            }
        }
        match self.small_number_fwd(q) {
            Some((lo, e3)) => Some((base + lo as i32, e3)),
            None => Some((base, e2)),
        }
    }

    fn year_fwd(&self, pos: usize, with_day: bool) -> Option<(i32, usize)> {
        self.year_digits_fwd(pos)
            .or_else(|| self.spelled_year_fwd(pos, with_day))
    }

    fn first<T>(positions: Vec<usize>, f: impl Fn(usize) -> Option<T>) -> Option<T> {
        positions.into_iter().find_map(f)
    }

    /// Build a date around the month surface at `start..end`.
    fn around_month(&self, month: u32, start: usize, end: usize) -> Option<(NormalizedDate, usize, usize)> {
        let t = self.text;
        let mut lo = start;
        let mut hi = end;
        let mut day = None;
        let mut day_left = false;

        if let Some((d, s)) = Self::first(self.gaps_back(start), |p| self.day_back(p)) {
            day = Some(d);
            lo = s;
            day_left = true;
        } else if let Some((d, e)) = Self::first(self.gaps_fwd(end), |p| self.day_fwd(p)) {
            day = Some(d);
            hi = e;
        }

        let mut year = None;
        if let Some((y, e)) = Self::first(self.gaps_fwd(hi), |p| self.year_fwd(p, day.is_some())) {
            year = Some(y);
            hi = e;
        } else if day_left {
            if let Some((y, s)) = Self::first(self.gaps_back(lo), |p| self.year_digits_back(p)) {
                year = Some(y);
                lo = s;
            }
        }

        let normal = match (day, year) {
            (Some(day), Some(year)) => NormalizedDate::Full { year, month, day },
            (None, Some(year)) => NormalizedDate::YearMonth { year, month },
            (Some(day), None) => NormalizedDate::MonthDay { month, day },
            (None, None) => {
                let after = skip_ws(t, end);
                if after > end {
                    for &(s, offset) in &self.relative_years {
                        if let Some(e) = phrase_fwd(t, after, s) {
                            return Some((NormalizedDate::MonthRelativeYear { month, offset }, start, e));
                        }
                    }
                }
                let before = match char_before(t, start) {
                    Some('-') => Some(start - 1),
                    Some(c) if c.is_whitespace() => Some(skip_ws_back(t, start)),
                    _ => None,
                }?;
                for &(s, offset) in &self.pre_modifiers {
                    if let Some(b) = phrase_back(t, before, s) {
                        return Some((NormalizedDate::RelativeMonth { month, offset }, b, end));
                    }
                }
                return None;
            }
        };
        Some((normal, lo, hi))
    }

    fn month_at(&self, pos: usize) -> Option<(u32, usize)> {
        self.months
            .iter()
            .find_map(|&(s, m)| phrase_fwd(self.text, pos, s).map(|e| (m, e)))
    }

    fn relative_day_at(&self, pos: usize) -> Option<(i64, usize)> {
        self.relative_days
            .iter()
            .find_map(|&(s, v)| phrase_fwd(self.text, pos, s).map(|e| (v, e)))
    }
}

/// Find month-anchored and relative-day expressions.
pub fn find_lexical_dates(text: &str, lexicon: &DateLexicon) -> Vec<LexicalCandidate> {
    let scanner = Scanner::new(text, lexicon);
    let chars = CharIndex::new(text);
    let mut out = Vec::new();
    let mut push = |normal, lo: usize, hi: usize| {
        let offset = chars.char_at_byte(lo);
        out.push(LexicalCandidate {
            offset,
            length: chars.char_at_byte(hi) - offset,
            surface: text[lo..hi].to_string(),
            normal,
        });
    };
    for (pos, c) in text.char_indices() {
        // anchors start a word; month abbreviations may begin with a letter only
        if !c.is_alphabetic() || alnum_before(text, pos) {
            continue;
        }
        if let Some((month, end)) = scanner.month_at(pos) {
            if let Some((normal, lo, hi)) = scanner.around_month(month, pos, end) {
                push(normal, lo, hi);
            }
        }
        if let Some((offset, end)) = scanner.relative_day_at(pos) {
            push(NormalizedDate::RelativeDay { offset }, pos, end);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINI: &str = "\
[meta]
language = en
number_and = and
[months]
1 = January|Jan.|Jan
2 = February|Feb.
3 = March
4 = April
5 = May
6 = June
7 = July
8 = August
9 = September
10 = October
11 = November
12 = December
[day_ordinals]
2 = 2nd|second
3 = 3rd|third
6 = 6th|sixth
8 = 8th
[relative_days]
yesterday = -1
[pre_modifiers]
next = 1
last = -1
mid = 0
[relative_years]
last year = -1
[connectors]
of
the
,
, the
in the year
[number_words]
two = 2
four = 4
nineteen = 19
eighty = 80
thousand = 1000
";

    fn lex() -> DateLexicon {
        MINI.parse().unwrap()
    }

    fn found(text: &str) -> Vec<(String, NormalizedDate)> {
        find_lexical_dates(text, &lex())
            .into_iter()
            .map(|c| (c.surface, c.normal))
            .collect()
    }

    #[test]
    fn phrase_matching_respects_words() {
        assert_eq!(phrase_fwd("in the  year 1984", 0, "in the year"), Some(12));
        assert_eq!(phrase_fwd("of course", 0, "of"), Some(2));
        assert_eq!(phrase_fwd("often", 0, "of"), None);
        assert_eq!(phrase_back("1999, the 2nd", 9, ", the"), Some(4));
        assert_eq!(phrase_back("bathe", 5, "the"), None);
    }

    #[test]
    fn day_of_month_in_the_year_spelled() {
        let f = found("the sixth of March in the year nineteen eighty four.");
        assert_eq!(
            f,
            [(
                "sixth of March in the year nineteen eighty four".to_string(),
                NormalizedDate::Full {
                    year: 1984,
                    month: 3,
                    day: 6
                }
            )]
        );
    }

    #[test]
    fn month_and_year_or_day() {
        assert_eq!(
            found("Jan. 2003")[0].1,
            NormalizedDate::YearMonth { year: 2003, month: 1 }
        );
        assert_eq!(
            found("third February")[0].1,
            NormalizedDate::MonthDay { month: 2, day: 3 }
        );
        assert_eq!(
            found("May 2, 1999")[0].1,
            NormalizedDate::Full {
                year: 1999,
                month: 5,
                day: 2
            }
        );
        assert_eq!(
            found("1999, the 2nd of May")[0].1,
            NormalizedDate::Full {
                year: 1999,
                month: 5,
                day: 2
            }
        );
    }

    #[test]
    fn relatives() {
        assert_eq!(
            found("February last year")[0].1,
            NormalizedDate::MonthRelativeYear { month: 2, offset: -1 }
        );
        assert_eq!(
            found("next June")[0].1,
            NormalizedDate::RelativeMonth { month: 6, offset: 1 }
        );
        assert_eq!(
            found("mid-August")[0],
            (
                "mid-August".into(),
                NormalizedDate::RelativeMonth { month: 8, offset: 0 }
            )
        );
        assert_eq!(found("yesterday")[0].1, NormalizedDate::RelativeDay { offset: -1 });
    }

    #[test]
    fn period_keeps_right_half_only() {
        let f = found("7-8 June");
        assert_eq!(
            f,
            [("8 June".to_string(), NormalizedDate::MonthDay { month: 6, day: 8 })]
        );
    }

    #[test]
    fn bare_month_and_wrong_case() {
        assert!(found("in May").is_empty());
        assert!(found("this may sound").is_empty());
        assert!(found("February three years ago").is_empty());
        assert!(found("Mayday, Marches").is_empty());
    }

    #[test]
    fn thousand_form_needs_a_day() {
        assert_eq!(
            found("the 2nd of May two thousand and two")[0].1,
            NormalizedDate::Full {
                year: 2002,
                month: 5,
                day: 2
            }
        );
        assert!(found("May two thousand and two").is_empty());
    }

    #[test]
    fn times_are_not_days() {
        assert!(found("May 5:30").is_empty());
    }
}
