//! Inline annotation: each match is wrapped as `[[kind|normal|surface]]`.
//!
//! Plain text escapes `\` and `[` with a backslash so that a literal `[[`
//! can never be mistaken for a marker. Inside a marker `\`, `|`, `[` and `]`
//! are escaped. [`strip_inline`] undoes both and restores the original text.

use thiserror::Error;

/// A span to mark, in char offsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InlineSpan {
    pub offset: usize,
    pub length: usize,
    pub kind: String,
    pub normal: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InlineError {
    #[error("span at {offset}+{length} overlaps or precedes the previous span")]
    Overlap { offset: usize, length: usize },
    #[error("span at {offset}+{length} runs past the end of the text ({len} chars)")]
    OutOfRange { offset: usize, length: usize, len: usize },
    #[error("malformed annotated text at char {0}")]
    Malformed(usize),
}

fn push_plain(out: &mut String, c: char) {
    if c == '\\' || c == '[' {
        out.push('\\');
    }
    out.push(c);
}

fn push_field(out: &mut String, s: &str) {
    for c in s.chars() {
        if matches!(c, '\\' | '|' | '[' | ']') {
            out.push('\\');
        }
        out.push(c);
    }
}

/// Wrap `spans` (sorted by offset, non-overlapping) in markers.
pub fn annotate_inline(text: &str, spans: &[InlineSpan]) -> Result<String, InlineError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = String::with_capacity(text.len() + spans.len() * 24);
    let mut pos = 0;
    for s in spans {
        if s.offset < pos {
            return Err(InlineError::Overlap {
                offset: s.offset,
                length: s.length,
            });
        }
        let end = s.offset + s.length;
        if end > chars.len() {
            return Err(InlineError::OutOfRange {
                offset: s.offset,
                length: s.length,
                len: chars.len(),
            });
        }
        chars[pos..s.offset].iter().for_each(|&c| push_plain(&mut out, c));
        let surface: String = chars[s.offset..end].iter().collect();
        out.push_str("[[");
        push_field(&mut out, &s.kind);
        out.push('|');
        push_field(&mut out, &s.normal);
        out.push('|');
        push_field(&mut out, &surface);
        out.push_str("]]");
        pos = end;
    }
    chars[pos..].iter().for_each(|&c| push_plain(&mut out, c));
    Ok(out)
}

/// Remove markers and escapes. Also returns the spans that were marked.
pub fn parse_inline(annotated: &str) -> Result<(String, Vec<InlineSpan>), InlineError> {
    let chars: Vec<char> = annotated.chars().collect();
    let mut text = String::with_capacity(annotated.len());
    let mut text_len = 0;
    let mut spans = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        match chars[i] {
            '\\' => {
                let c = *chars.get(i + 1).ok_or(InlineError::Malformed(i))?;
                text.push(c);
                text_len += 1;
                i += 2;
            }
            '[' if chars.get(i + 1) == Some(&'[') => {
                i += 2;
                let mut fields = [String::new(), String::new(), String::new()];
                let mut f = 0;
                loop {
                    match *chars.get(i).ok_or(InlineError::Malformed(i))? {
                        '\\' => {
                            fields[f].push(*chars.get(i + 1).ok_or(InlineError::Malformed(i))?);
                            i += 2;
                        }
                        '|' if f < 2 => {
                            f += 1;
                            i += 1;
                        }
                        ']' if f == 2 && chars.get(i + 1) == Some(&']') => {
                            i += 2;
                            break;
                        }
                        '|' | '[' | ']' => return Err(InlineError::Malformed(i)),
                        c => {
                            fields[f].push(c);
                            i += 1;
                        }
                    }
                }
                let [kind, normal, surface] = fields;
                let length = surface.chars().count();
                spans.push(InlineSpan {
                    offset: text_len,
                    length,
                    kind,
                    normal,
                });
                text.push_str(&surface);
                text_len += length;
            }
            '[' => return Err(InlineError::Malformed(i)),
            c => {
                text.push(c);
                text_len += 1;
                i += 1;
            }
        }
    }
    Ok((text, spans))
}

pub fn strip_inline(annotated: &str) -> Result<String, InlineError> {
    parse_inline(annotated).map(|(text, _)| text)
}
