use super::{days_in_month, NormalizedDate, Order};
use crate::text::CharIndex;

const SEPARATORS: [u8; 3] = *b"/-.";

/// Where the year sits in an all-numeric date.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Layout {
    /// `1997/04/01`: a four-digit first field forces year-month-day.
    YearFirst,
    /// `13/02/03`, `31.5.2003`: day and month in some order, then the year.
    YearLast,
}

/// An all-numeric date shape and which field orders fit its numbers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumericCandidate {
    pub offset: usize,
    pub length: usize,
    pub surface: String,
    pub fields: [u32; 3],
    pub year_digits: usize,
    pub separator: char,
    pub layout: Layout,
    /// Day-month reading is a real calendar date (year-last layout only).
    pub dmy_possible: bool,
    /// Month-day reading is a real calendar date (year-last layout only).
    pub mdy_possible: bool,
}

/// Two-digit years pivot at 50: 00-49 are 2000-2049, 50-99 are 1950-1999.
pub fn expand_two_digit_year(yy: u32) -> i32 {
    if yy < 50 {
        2000 + yy as i32
    } else {
        1900 + yy as i32
    }
}

fn valid(year: i32, month: u32, day: u32) -> bool {
    (1..=12).contains(&month) && day >= 1 && day <= days_in_month(Some(year), month)
}

impl NumericCandidate {
    fn year(&self) -> i32 {
        let raw = match self.layout {
            Layout::YearFirst => self.fields[0],
            Layout::YearLast => self.fields[2],
        };
        if self.year_digits == 2 {
            expand_two_digit_year(raw)
        } else {
            raw as i32
        }
    }

    /// Readings that produce a valid calendar date.
    pub fn readings(&self) -> Vec<Order> {
        let mut r = Vec::new();
        if self.dmy_possible {
            r.push(Order::Dmy);
        }
        if self.mdy_possible {
            r.push(Order::Mdy);
        }
        r
    }

    /// Exactly one of day-month / month-day fits.
    pub fn forced_order(&self) -> Option<Order> {
        match (self.layout, self.dmy_possible, self.mdy_possible) {
            (Layout::YearLast, true, false) => Some(Order::Dmy),
            (Layout::YearLast, false, true) => Some(Order::Mdy),
            _ => None,
        }
    }

    pub(super) fn normalize(
        &self,
        document_order: Order,
        reject_two_digit_years: bool,
    ) -> Result<NormalizedDate, String> {
        if self.year_digits == 2 && reject_two_digit_years {
            return Err("two-digit year rejected".into());
        }
        let year = self.year();
        let [a, b, _] = self.fields;
        let (month, day) = match self.layout {
            Layout::YearFirst => (self.fields[1], self.fields[2]),
            Layout::YearLast => {
                let order = match (self.dmy_possible, self.mdy_possible) {
                    (true, true) => document_order,
                    (true, false) => Order::Dmy,
                    (false, true) => Order::Mdy,
                    (false, false) => return Err("no valid day/month reading".into()),
                };
                match order {
                    Order::Dmy => (b, a),
                    Order::Mdy => (a, b),
                }
            }
        };
        if !valid(year, month, day) {
            return Err(format!("{year:04}-{month:02}-{day:02} is not a calendar date"));
        }
        Ok(NormalizedDate::Full { year, month, day })
    }
}

fn digit_run(bytes: &[u8], from: usize) -> usize {
    bytes[from..].iter().take_while(|b| b.is_ascii_digit()).count()
}

fn number(bytes: &[u8]) -> u32 {
    bytes.iter().fold(0, |n, b| n * 10 + u32::from(b - b'0'))
}

/// Find `d{1,2} S d{1,2} S (d{4}|d{2})` and `d{4} S d{1,2} S d{1,2}` with
/// the same separator S from `/ - .` twice. The match must not touch other
/// digits, and must not continue as a longer dotted/dashed number such as
/// an IP address.
pub fn find_numeric_dates(text: &str) -> Vec<NumericCandidate> {
    let bytes = text.as_bytes();
    let chars = CharIndex::new(text);
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        if !bytes[i].is_ascii_digit() {
            i += 1;
            continue;
        }
        let run1 = digit_run(bytes, i);
        let start = i;
        i += run1;
        let preceded_by_number =
            start >= 2 && SEPARATORS.contains(&bytes[start - 1]) && bytes[start - 2].is_ascii_digit();
        if preceded_by_number || !matches!(run1, 1 | 2 | 4) {
            continue;
        }
        let Some(cand) = try_shape(bytes, start, run1) else {
            continue;
        };
        let (end, fields, year_digits, sep) = cand;
        let layout = if run1 == 4 { Layout::YearFirst } else { Layout::YearLast };
        let (dmy_possible, mdy_possible) = match layout {
            Layout::YearFirst => (false, false),
            Layout::YearLast => {
                let year = if year_digits == 2 {
                    expand_two_digit_year(fields[2])
                } else {
                    fields[2] as i32
                };
                (valid(year, fields[1], fields[0]), valid(year, fields[0], fields[1]))
            }
        };
        let offset = chars.char_at_byte(start);
        let length = chars.char_at_byte(end) - offset;
        out.push(NumericCandidate {
            offset,
            length,
            surface: text[start..end].to_string(),
            fields,
            year_digits,
            separator: sep as char,
            layout,
            dmy_possible,
            mdy_possible,
        });
        i = end;
    }
    out
}

/// Returns (end byte, fields, year digit count, separator).
fn try_shape(bytes: &[u8], start: usize, run1: usize) -> Option<(usize, [u32; 3], usize, u8)> {
    let mut pos = start + run1;
    let sep = *bytes.get(pos).filter(|b| SEPARATORS.contains(b))?;
    pos += 1;
    let run2 = digit_run(bytes, pos);
    if !(1..=2).contains(&run2) {
        return None;
    }
    let f2 = number(&bytes[pos..pos + run2]);
    pos += run2;
    if bytes.get(pos) != Some(&sep) {
        return None;
    }
    pos += 1;
    let run3 = digit_run(bytes, pos);
    let ok = if run1 == 4 {
        (1..=2).contains(&run3)
    } else {
        run3 == 2 || run3 == 4
    };
    if !ok {
        return None;
    }
    let f3 = number(&bytes[pos..pos + run3]);
    let end = pos + run3;
    let continues = bytes.get(end) == Some(&sep) && bytes.get(end + 1).is_some_and(u8::is_ascii_digit);
    if continues {
        return None;
    }
    let f1 = number(&bytes[start..start + run1]);
    let year_digits = if run1 == 4 { 4 } else { run3 };
    Some((end, [f1, f2, f3], year_digits, sep))
}

/// Settle the field order of a document from its unambiguous numeric dates.
/// Evidence for only one order wins; no evidence or conflicting evidence
/// falls back to `default`.
pub fn infer_document_order(candidates: &[NumericCandidate], default: Order) -> Order {
    let forced = |o: Order| candidates.iter().any(|c| c.forced_order() == Some(o));
    match (forced(Order::Dmy), forced(Order::Mdy)) {
        (true, false) => Order::Dmy,
        (false, true) => Order::Mdy,
        _ => default,
    }
}
