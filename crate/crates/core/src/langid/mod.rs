//! Language and character-encoding identification from raw bytes.
//!
//! Each (language, encoding) pair is modelled by the byte bigram and trigram
//! counts of a training corpus. A text is scored under every profile as an
//! order-2 Markov chain over bytes, so the language and the charset are
//! recognised in one pass: the same Hungarian sentence in ISO-8859-2 and in
//! UTF-8 produces different byte trigrams.

mod encoding;
mod profile;

use std::fs;
use std::io::BufReader;
use std::path::Path;

pub use encoding::{decode_to_utf8, encode_from_utf8, DecodeError, EncodeError, Encoding, UnknownEncoding};
pub use profile::{
    identify, score_text, train_profile, LangEncLabel, LangEncProfile, LangIdError, ScoredLabel, MIN_BYTES,
};

/// Extension used for profile files inside a profile directory.
pub const PROFILE_EXT: &str = "profile";

/// Load every `*.profile` file in `dir`, sorted by label.
pub fn load_profile_dir(dir: &Path) -> Result<Vec<LangEncProfile>, LangIdError> {
    let mut profiles = Vec::new();
    for entry in fs::read_dir(dir)? {
        let path = entry?.path();
        if path.extension().is_some_and(|e| e == PROFILE_EXT) {
            let file = fs::File::open(&path)?;
            profiles.push(LangEncProfile::read_from(BufReader::new(file))?);
        }
    }
    profiles.sort_by(|a, b| a.label().cmp(b.label()));
    Ok(profiles)
}
