//! Offsets and lengths of every match kind point back at the matched
//! surface, on random documents mixing multi-byte text with dates, place
//! names and country triggers.

use std::path::Path;
use std::sync::OnceLock;

use multiex::dates::{extract_dates, DateLexicon, DateOptions};
use multiex::gazetteer::{
    load_gazetteer, load_stop_words, load_triggers, GazetteerIndex, GeoStopList, LoadOptions, TriggerTable,
};
use multiex::geotag::tag_and_resolve;
use proptest::prelude::*;

struct Resources {
    en: DateLexicon,
    ro: DateLexicon,
    index: GazetteerIndex,
    stops: GeoStopList,
    triggers: TriggerTable,
}

fn resources() -> &'static Resources {
    static R: OnceLock<Resources> = OnceLock::new();
    R.get_or_init(|| {
        let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data");
        Resources {
            en: DateLexicon::load(&data.join("lexicons/en.lex")).unwrap(),
            ro: DateLexicon::load(&data.join("lexicons/ro.lex")).unwrap(),
            index: load_gazetteer(&data.join("gazetteer/world.tsv"), &LoadOptions::default()).unwrap(),
            stops: load_stop_words(&data.join("gazetteer/stopwords.en.txt"), "en").unwrap(),
            triggers: load_triggers(&data.join("gazetteer/triggers.tsv")).unwrap(),
        }
    })
}

/// Independent char-offset slicing.
fn slice(text: &str, offset: usize, length: usize) -> String {
    text.chars().skip(offset).take(length).collect()
}

fn piece() -> impl Strategy<Value = String> {
    prop_oneof![
        prop::sample::select(vec![
            "31.5.2003",
            "13/02/03",
            "1997/04/01",
            "3 May 2001",
            "the 2nd of May",
            "Jan. 2003",
            "yesterday",
            "last September",
            "February last year",
            "11 noiembrie 1918",
            "ieri",
            "doi mai",
            "Stara Zagora",
            "Paris",
            "București",
            "Compiègne",
            "Franța",
            "Germaniei",
            "Iraqi",
            "forint",
            "New York",
            "Split",
            "Roma",
            "Marea Britanie",
            "(Köln),",
            "Ελλάδα",
            "Москва",
            "—",
            "«",
            "»",
            "\u{1F600}",
        ])
        .prop_map(String::from),
        "[a-zăîșțéöő ,.;:()'\\-]{0,12}",
        "[A-ZÁÉŐ][a-zäöüß]{1,8}",
    ]
}

fn document() -> impl Strategy<Value = String> {
    prop::collection::vec(
        (piece(), prop::sample::select(vec![" ", "  ", "\n", ", ", " - ", "\t"])),
        0..30,
    )
    .prop_map(|v| v.into_iter().map(|(p, s)| p + s).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn every_match_slices_back_to_its_surface(text in document()) {
        let r = resources();
        for lex in [&r.en, &r.ro] {
            let ex = extract_dates(&text, lex, &DateOptions::default());
            for m in &ex.matches {
                prop_assert_eq!(slice(&text, m.offset, m.length), m.surface.clone());
            }
            for m in &ex.rejected {
                prop_assert_eq!(slice(&text, m.offset, m.length), m.surface.clone());
            }
        }
        for m in tag_and_resolve(&text, &r.index, &r.stops, &r.triggers) {
            prop_assert_eq!(slice(&text, m.offset, m.length), m.surface.clone());
            prop_assert!(m.resolved.is_some());
        }
    }
}
