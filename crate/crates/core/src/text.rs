//! Whitespace tokenization with character offsets.
//!
//! Offsets everywhere in this crate are Unicode scalar indices into the
//! decoded text, not byte offsets.

/// A whitespace-delimited word with leading and trailing punctuation removed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token<'a> {
    pub text: &'a str,
    /// Char index of the first char of `text`.
    pub start: usize,
    /// Char index one past the last char of `text`.
    pub end: usize,
    /// Punctuation was stripped from the front.
    pub lead_punct: bool,
    /// Punctuation was stripped from the back.
    pub trail_punct: bool,
}

impl Token<'_> {
    /// True when nothing but whitespace separates `self` from `next`.
    pub fn joins(&self, next: &Token<'_>) -> bool {
        !self.trail_punct && !next.lead_punct
    }

    /// First cased character is upper case. Uncased leading characters
    /// (digits, CJK) are skipped over.
    pub fn is_capitalized(&self) -> bool {
        self.text
            .chars()
            .find(|c| c.is_uppercase() || c.is_lowercase())
            .is_some_and(char::is_uppercase)
    }
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric()
}

/// Split on Unicode whitespace and trim non-alphanumeric characters from
/// both ends of each piece. Internal hyphens and apostrophes survive, so
/// "Nord-Pas de Calais" yields `Nord-Pas`, `de`, `Calais`. A trailing
/// possessive `'s` is cut off like punctuation. Pieces that are pure
/// punctuation are dropped.
pub fn tokenize(text: &str) -> Vec<Token<'_>> {
    let mut tokens = Vec::new();
    let mut chars = text.char_indices().enumerate().peekable();
    while let Some(&(_, (_, c))) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        // one whitespace-delimited piece: (char index, byte index, char)
        let mut piece = Vec::new();
        while let Some(&(ci, (bi, c))) = chars.peek() {
            if c.is_whitespace() {
                break;
            }
            piece.push((ci, bi, c));
            chars.next();
        }
        let Some(first) = piece.iter().position(|p| is_word_char(p.2)) else {
            continue;
        };
        let mut last = piece.iter().rposition(|p| is_word_char(p.2)).unwrap_or(first);
        // English possessive: "Britain's" is the token "Britain"
        if last >= first + 2
            && piece[last].2 == 's'
            && matches!(piece[last - 1].2, '\'' | '\u{2019}')
            && is_word_char(piece[last - 2].2)
        {
            last -= 2;
        }
        let (start, byte_start, _) = piece[first];
        let (end_ci, end_bi, end_c) = piece[last];
        tokens.push(Token {
            text: &text[byte_start..end_bi + end_c.len_utf8()],
            start,
            end: end_ci + 1,
            lead_punct: first > 0,
            trail_punct: last + 1 < piece.len(),
        });
    }
    tokens
}

/// Maps char indices to byte indices for slicing by char offset.
#[derive(Debug, Clone)]
pub struct CharIndex {
    bytes: Vec<usize>,
}

impl CharIndex {
    pub fn new(text: &str) -> Self {
        let mut bytes: Vec<usize> = text.char_indices().map(|(b, _)| b).collect();
        bytes.push(text.len());
        CharIndex { bytes }
    }

    pub fn char_len(&self) -> usize {
        self.bytes.len() - 1
    }

    pub fn byte(&self, char_idx: usize) -> usize {
        self.bytes[char_idx]
    }

    /// Char index of the char starting at `byte_idx`.
    pub fn char_at_byte(&self, byte_idx: usize) -> usize {
        self.bytes.partition_point(|&b| b < byte_idx)
    }

    pub fn slice<'t>(&self, text: &'t str, offset: usize, length: usize) -> &'t str {
        &text[self.bytes[offset]..self.bytes[offset + length]]
    }
}

/// Substring of `text` by char offset and char length, or `None` when the
/// range runs past the end.
pub fn char_slice(text: &str, offset: usize, length: usize) -> Option<&str> {
    let mut it = text.char_indices().map(|(b, _)| b).chain(std::iter::once(text.len()));
    let start = it.nth(offset)?;
    let end = if length == 0 { start } else { it.nth(length - 1)? };
    Some(&text[start..end])
}
