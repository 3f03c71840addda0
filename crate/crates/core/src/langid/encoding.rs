//! The fixed character-encoding registry and strict decoding to Unicode.
//!
//! Single-byte ISO-8859 tables other than Latin-1 are taken from
//! `encoding_rs`, one byte at a time, so unmapped positions (for example
//! 0xA5 in ISO-8859-3) stay unmapped instead of turning into U+FFFD.
//! Latin-1 is the identity map onto U+0000..=U+00FF; `encoding_rs` would
//! hand back windows-1252 for that label.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Encoding {
    UsAscii,
    Utf8,
    Iso8859_1,
    Iso8859_2,
    Iso8859_3,
    Iso8859_5,
    Iso8859_7,
}

impl Encoding {
    pub const ALL: [Encoding; 7] = [
        Encoding::UsAscii,
        Encoding::Utf8,
        Encoding::Iso8859_1,
        Encoding::Iso8859_2,
        Encoding::Iso8859_3,
        Encoding::Iso8859_5,
        Encoding::Iso8859_7,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Encoding::UsAscii => "US-ASCII",
            Encoding::Utf8 => "UTF-8",
            Encoding::Iso8859_1 => "ISO-8859-1",
            Encoding::Iso8859_2 => "ISO-8859-2",
            Encoding::Iso8859_3 => "ISO-8859-3",
            Encoding::Iso8859_5 => "ISO-8859-5",
            Encoding::Iso8859_7 => "ISO-8859-7",
        }
    }

    fn table(self) -> Option<&'static ByteTable> {
        static T2: OnceLock<ByteTable> = OnceLock::new();
        static T3: OnceLock<ByteTable> = OnceLock::new();
        static T5: OnceLock<ByteTable> = OnceLock::new();
        static T7: OnceLock<ByteTable> = OnceLock::new();
        let (cell, enc) = match self {
            Encoding::Iso8859_2 => (&T2, encoding_rs::ISO_8859_2),
            Encoding::Iso8859_3 => (&T3, encoding_rs::ISO_8859_3),
            Encoding::Iso8859_5 => (&T5, encoding_rs::ISO_8859_5),
            Encoding::Iso8859_7 => (&T7, encoding_rs::ISO_8859_7),
            _ => return None,
        };
        Some(cell.get_or_init(|| ByteTable::build(enc)))
    }
}

impl fmt::Display for Encoding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown encoding {0:?}")]
pub struct UnknownEncoding(pub String);

impl FromStr for Encoding {
    type Err = UnknownEncoding;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.trim().to_ascii_uppercase().replace('_', "-");
        let enc = match norm.as_str() {
            "US-ASCII" | "ASCII" => Encoding::UsAscii,
            "UTF-8" | "UTF8" => Encoding::Utf8,
            "ISO-8859-1" | "LATIN1" | "LATIN-1" => Encoding::Iso8859_1,
            "ISO-8859-2" | "LATIN2" | "LATIN-2" => Encoding::Iso8859_2,
            "ISO-8859-3" => Encoding::Iso8859_3,
            "ISO-8859-5" => Encoding::Iso8859_5,
            "ISO-8859-7" => Encoding::Iso8859_7,
            _ => return Err(UnknownEncoding(s.to_string())),
        };
        Ok(enc)
    }
}

struct ByteTable {
    decode: [Option<char>; 256],
    encode: HashMap<char, u8>,
}

impl ByteTable {
    fn build(enc: &'static encoding_rs::Encoding) -> Self {
        let mut decode = [None; 256];
        let mut encode = HashMap::new();
        for b in 0..=255u8 {
            if let Some(s) = enc.decode_without_bom_handling_and_without_replacement(&[b]) {
                let mut chars = s.chars();
                if let (Some(c), None) = (chars.next(), chars.next()) {
                    decode[b as usize] = Some(c);
                    encode.insert(c, b);
                }
            }
        }
        ByteTable { decode, encode }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("byte 0x{byte:02X} at offset {offset} is not valid {encoding}")]
pub struct DecodeError {
    pub encoding: Encoding,
    pub offset: usize,
    pub byte: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("character {ch:?} at char index {index} cannot be encoded as {encoding}")]
pub struct EncodeError {
    pub encoding: Encoding,
    pub index: usize,
    pub ch: char,
}

/// Decode `bytes` strictly; the first byte that the encoding does not
/// define is reported with its offset.
pub fn decode_to_utf8(bytes: &[u8], encoding: Encoding) -> Result<String, DecodeError> {
    let fail = |offset: usize| DecodeError {
        encoding,
        offset,
        byte: bytes[offset],
    };
    match encoding {
        Encoding::Utf8 => std::str::from_utf8(bytes)
            .map(str::to_owned)
            .map_err(|e| fail(e.valid_up_to())),
        Encoding::UsAscii => match bytes.iter().position(|&b| b >= 0x80) {
            Some(i) => Err(fail(i)),
            None => Ok(bytes.iter().map(|&b| b as char).collect()),
        },
        Encoding::Iso8859_1 => Ok(bytes.iter().map(|&b| b as char).collect()),
        _ => {
            let table = encoding.table().expect("single-byte table");
            let mut out = String::with_capacity(bytes.len());
            for (i, &b) in bytes.iter().enumerate() {
                match table.decode[b as usize] {
                    Some(c) => out.push(c),
                    None => return Err(fail(i)),
                }
            }
            Ok(out)
        }
    }
}

/// Inverse of [`decode_to_utf8`].
pub fn encode_from_utf8(text: &str, encoding: Encoding) -> Result<Vec<u8>, EncodeError> {
    let fail = |index: usize, ch: char| EncodeError { encoding, index, ch };
    match encoding {
        Encoding::Utf8 => Ok(text.as_bytes().to_vec()),
        Encoding::UsAscii | Encoding::Iso8859_1 => {
            let limit = if encoding == Encoding::UsAscii { 0x80 } else { 0x100 };
            text.chars()
                .enumerate()
                .map(|(i, c)| {
                    if (c as u32) < limit {
                        Ok(c as u8)
                    } else {
                        Err(fail(i, c))
                    }
                })
                .collect()
        }
        _ => {
            let table = encoding.table().expect("single-byte table");
            text.chars()
                .enumerate()
                .map(|(i, c)| table.encode.get(&c).copied().ok_or_else(|| fail(i, c)))
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ascii_65_is_capital_a() {
        assert_eq!(decode_to_utf8(&[65], Encoding::UsAscii).unwrap(), "A");
    }

    #[test]
    fn utf8_two_byte_u_umlaut() {
        assert_eq!(decode_to_utf8(&[195, 188], Encoding::Utf8).unwrap(), "ü");
    }

    #[test]
    fn pure_ascii_is_valid_utf8() {
        let bytes: Vec<u8> = (0u8..0x80).collect();
        assert_eq!(
            decode_to_utf8(&bytes, Encoding::Utf8).unwrap(),
            decode_to_utf8(&bytes, Encoding::UsAscii).unwrap()
        );
    }

    #[test]
    fn errors_name_the_offset() {
        let err = decode_to_utf8(b"ab\xffcd", Encoding::UsAscii).unwrap_err();
        assert_eq!(err.offset, 2);
        let err = decode_to_utf8(b"abc\xc3", Encoding::Utf8).unwrap_err();
        assert_eq!(err.offset, 3);
        // 0xA5 is unassigned in ISO-8859-3
        let err = decode_to_utf8(b"x\xa5", Encoding::Iso8859_3).unwrap_err();
        assert_eq!(err.offset, 1);
        assert_eq!(err.byte, 0xA5);
    }

    #[test]
    fn latin2_and_cyrillic_and_greek_tables() {
        // ő in Latin-2, Б in ISO-8859-5, α in ISO-8859-7
        assert_eq!(decode_to_utf8(&[0xF5], Encoding::Iso8859_2).unwrap(), "ő");
        assert_eq!(decode_to_utf8(&[0xB1], Encoding::Iso8859_5).unwrap(), "Б");
        assert_eq!(decode_to_utf8(&[0xE1], Encoding::Iso8859_7).unwrap(), "α");
        // Latin-1 0x80 is a C1 control, not the euro sign
        assert_eq!(decode_to_utf8(&[0x80], Encoding::Iso8859_1).unwrap(), "\u{80}");
    }

    #[test]
    fn names_parse_back() {
        for enc in Encoding::ALL {
            assert_eq!(enc.name().parse::<Encoding>().unwrap(), enc);
        }
        assert!("KOI8-R".parse::<Encoding>().is_err());
    }

    #[test]
    fn hungarian_o_double_acute_not_in_latin1() {
        assert!(encode_from_utf8("bővítés", Encoding::Iso8859_1).is_err());
        let bytes = encode_from_utf8("bővítés", Encoding::Iso8859_2).unwrap();
        assert_eq!(decode_to_utf8(&bytes, Encoding::Iso8859_2).unwrap(), "bővítés");
    }
}
