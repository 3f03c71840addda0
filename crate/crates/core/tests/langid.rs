use std::collections::HashMap;

use multiex::langid::{
    decode_to_utf8, encode_from_utf8, identify, score_text, train_profile, Encoding, LangEncLabel, LangEncProfile,
};
use proptest::prelude::*;

fn label(lang: &str, enc: Encoding) -> LangEncLabel {
    LangEncLabel::new(lang, enc).unwrap()
}

/// Brute-force n-gram counts: every start position, by slicing.
fn brute_counts(bytes: &[u8], n: usize) -> HashMap<Vec<u8>, u64> {
    let mut out = HashMap::new();
    if bytes.len() >= n {
        for i in 0..=bytes.len() - n {
            *out.entry(bytes[i..i + n].to_vec()).or_insert(0) += 1;
        }
    }
    out
}

#[test]
fn abab_counts() {
    let corpus = "ab".repeat(100);
    let p = train_profile(corpus.as_bytes(), label("xx", Encoding::UsAscii)).unwrap();
    assert_eq!(p.bigram(b'a', b'b'), 100);
    assert_eq!(p.bigram(b'b', b'a'), 99);
    assert_eq!(p.trigram(b'a', b'b', b'a'), 99);
    assert_eq!(p.trigram(b'b', b'a', b'b'), 99);
    assert_eq!(p.total_bytes(), 200);
}

#[test]
fn empty_profile_scores_uniform() {
    let p = LangEncProfile::empty(label("xx", Encoding::Utf8));
    let s = score_text(&p, b"hello world").unwrap();
    assert!((s - (1.0f64 / 256.0).ln()).abs() < 1e-12);
}

#[test]
fn shipped_profiles_label_their_own_corpora() {
    let root = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data");
    let profiles = multiex::langid::load_profile_dir(std::path::Path::new(&format!("{root}/profiles"))).unwrap();
    assert!(profiles.len() >= 5);
    for p in &profiles {
        let name = format!("{}.{}.txt", p.label().language(), p.label().encoding());
        let corpus = std::fs::read(format!("{root}/corpora/{name}")).unwrap();
        let best = &identify(&profiles, &corpus[..2000]).unwrap()[0];
        assert_eq!(&best.label, p.label(), "{name}");
    }
}

proptest! {
    #[test]
    fn counts_match_brute_force(corpus in proptest::collection::vec(0u8..6, 3..300)) {
        let p = train_profile(&corpus, label("xx", Encoding::Iso8859_1)).unwrap();
        let bi = brute_counts(&corpus, 2);
        let tri = brute_counts(&corpus, 3);
        prop_assert_eq!(p.bigram_counts().count(), bi.len());
        for (k, v) in p.bigram_counts() {
            prop_assert_eq!(bi.get(&k[..]).copied(), Some(v));
        }
        prop_assert_eq!(p.trigram_counts().count(), tri.len());
        for (k, v) in p.trigram_counts() {
            prop_assert_eq!(tri.get(&k[..]).copied(), Some(v));
        }
    }

    #[test]
    fn scores_are_finite_and_non_positive(
        corpus in proptest::collection::vec(any::<u8>(), 3..400),
        text in proptest::collection::vec(any::<u8>(), 3..400),
    ) {
        let p = train_profile(&corpus, label("xx", Encoding::Iso8859_1)).unwrap();
        let s = score_text(&p, &text).unwrap();
        prop_assert!(s.is_finite() && s <= 0.0);
    }

    /// A profile trained on a text prefers that text over a profile trained
    /// on bytes from a disjoint alphabet.
    #[test]
    fn self_affinity(corpus in "[a-m ]{50,300}", other in "[n-z.]{50,300}") {
        let own = train_profile(corpus.as_bytes(), label("aa", Encoding::UsAscii)).unwrap();
        let foreign = train_profile(other.as_bytes(), label("bb", Encoding::UsAscii)).unwrap();
        let ranked = identify(&[foreign, own], corpus.as_bytes()).unwrap();
        prop_assert_eq!(ranked[0].label.language(), "aa");
    }

    #[test]
    fn profile_text_form_round_trips(corpus in proptest::collection::vec(any::<u8>(), 3..200)) {
        let p = train_profile(&corpus, label("xx", Encoding::Iso8859_2)).unwrap();
        let mut buf = Vec::new();
        p.write_to(&mut buf).unwrap();
        let back = LangEncProfile::read_from(&buf[..]).unwrap();
        prop_assert_eq!(back, p);
    }

    /// Decoding then re-encoding any byte string that decodes is the identity.
    #[test]
    fn byte_round_trip_all_encodings(bytes in proptest::collection::vec(any::<u8>(), 0..200)) {
        for enc in Encoding::ALL {
            if let Ok(text) = decode_to_utf8(&bytes, enc) {
                prop_assert_eq!(encode_from_utf8(&text, enc).unwrap(), bytes.clone(), "{}", enc);
            }
        }
    }

    /// Encoding then decoding any string built from an encoding's repertoire
    /// is the identity.
    #[test]
    fn text_round_trip_all_encodings(picks in proptest::collection::vec(any::<u8>(), 0..100)) {
        for enc in Encoding::ALL {
            let repertoire: Vec<char> = (0u8..=255)
                .filter_map(|b| decode_to_utf8(&[b], enc).ok())
                .flat_map(|s| s.chars().collect::<Vec<_>>())
                .collect();
            let text: String = picks.iter().map(|&i| repertoire[i as usize % repertoire.len()]).collect();
            let bytes = encode_from_utf8(&text, enc).unwrap();
            prop_assert_eq!(decode_to_utf8(&bytes, enc).unwrap(), text, "{}", enc);
        }
    }
}

#[test]
fn single_byte_tables_spot_checks() {
    // values from the published ISO 8859 code charts
    let cases: &[(Encoding, u8, char)] = &[
        (Encoding::Iso8859_1, 0xE9, 'é'),
        (Encoding::Iso8859_2, 0xA3, 'Ł'),
        (Encoding::Iso8859_2, 0xF5, 'ő'),
        (Encoding::Iso8859_2, 0xFB, 'ű'),
        (Encoding::Iso8859_3, 0xA6, 'Ĥ'),
        (Encoding::Iso8859_5, 0xB0, 'А'),
        (Encoding::Iso8859_5, 0xEF, 'я'),
        (Encoding::Iso8859_7, 0xC1, 'Α'),
        (Encoding::Iso8859_7, 0xF9, 'ω'),
    ];
    for &(enc, b, c) in cases {
        assert_eq!(decode_to_utf8(&[b], enc).unwrap(), c.to_string(), "{enc} {b:#x}");
    }
    // ISO-8859-3 leaves 0xA5 unassigned; US-ASCII stops at 0x7F
    assert!(decode_to_utf8(&[0xA5], Encoding::Iso8859_3).is_err());
    assert!(decode_to_utf8(&[0x80], Encoding::UsAscii).is_err());
    assert!(encode_from_utf8("ő", Encoding::Iso8859_1).is_err());
}
