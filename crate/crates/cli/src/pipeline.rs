//! Per-document processing shared by the subcommands:
//! identify → decode → extract → aggregate.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use multiex::dates::{extract_dates, DateExtraction, DateLexicon, DateOptions};
use multiex::gazetteer::{GazetteerIndex, GeoStopList, TriggerTable};
use multiex::geotag::{aggregate_by_country, tag_and_resolve, CountryTally, GeoMatch};
use multiex::langid::{decode_to_utf8, identify, Encoding, LangEncProfile, MIN_BYTES};

use crate::inline::InlineSpan;

/// Where a document's language and encoding come from.
#[derive(Debug, Default)]
pub struct Labeler {
    pub language: Option<String>,
    pub encoding: Option<Encoding>,
    pub profiles: Option<Vec<LangEncProfile>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DocLabel {
    pub language: Option<String>,
    pub encoding: Encoding,
    /// Set when the label was detected rather than given.
    pub score: Option<f64>,
}

impl Labeler {
    /// Explicit flags win; missing parts are filled by identification when
    /// profiles are loaded, and the encoding falls back to UTF-8.
    pub fn label(&self, bytes: &[u8]) -> DocLabel {
        let given = DocLabel {
            language: self.language.clone(),
            encoding: self.encoding.unwrap_or(Encoding::Utf8),
            score: None,
        };
        if self.language.is_some() && self.encoding.is_some() {
            return given;
        }
        let Some(profiles) = &self.profiles else {
            return given;
        };
        if bytes.len() < MIN_BYTES {
            return given;
        }
        match identify(profiles, bytes).ok().and_then(|r| r.into_iter().next()) {
            Some(best) => DocLabel {
                language: self.language.clone().or(Some(best.label.language().to_string())),
                encoding: self.encoding.unwrap_or(best.label.encoding()),
                score: Some(best.score),
            },
            None => given,
        }
    }
}

/// Date lexicons, either one for every document or one per language.
#[derive(Debug)]
pub enum Lexicons {
    Single(Box<DateLexicon>),
    ByLanguage(HashMap<String, DateLexicon>),
}

impl Lexicons {
    /// Every `*.lex` file in `dir`, keyed by its declared language.
    pub fn load_dir(dir: &Path) -> Result<Self> {
        let mut map = HashMap::new();
        let entries = fs::read_dir(dir).with_context(|| format!("reading lexicon directory {}", dir.display()))?;
        let mut paths: Vec<PathBuf> = entries
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "lex"))
            .collect();
        paths.sort();
        for p in paths {
            let lex = DateLexicon::load(&p).with_context(|| format!("loading lexicon {}", p.display()))?;
            map.insert(lex.language.clone(), lex);
        }
        if map.is_empty() {
            bail!("no .lex files in {}", dir.display());
        }
        Ok(Lexicons::ByLanguage(map))
    }

    pub fn for_language(&self, language: Option<&str>) -> Result<&DateLexicon> {
        match self {
            Lexicons::Single(lex) => Ok(lex),
            Lexicons::ByLanguage(map) => {
                let lang = language.ok_or_else(|| anyhow!("language unknown; pass --lang or --profiles"))?;
                map.get(lang)
                    .ok_or_else(|| anyhow!("no date lexicon for language {lang:?}"))
            }
        }
    }
}

pub struct PlaceResources {
    pub gazetteer: GazetteerIndex,
    pub stop_words: GeoStopList,
    pub triggers: TriggerTable,
}

#[derive(Debug, Clone)]
pub struct AnnotatedDocument {
    pub path: String,
    pub label: DocLabel,
    pub text: String,
    pub dates: Option<DateExtraction>,
    pub places: Vec<GeoMatch>,
    pub tallies: Vec<CountryTally>,
}

pub fn read_and_decode(path: &Path, labeler: &Labeler) -> Result<(DocLabel, String)> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let label = labeler.label(&bytes);
    let text = decode_to_utf8(&bytes, label.encoding).with_context(|| format!("decoding {}", path.display()))?;
    Ok((label, text))
}

pub fn annotate_dates(
    path: &Path,
    labeler: &Labeler,
    lexicons: &Lexicons,
    opts: &DateOptions,
) -> Result<AnnotatedDocument> {
    let (label, text) = read_and_decode(path, labeler)?;
    let lexicon = lexicons
        .for_language(label.language.as_deref())
        .with_context(|| path.display().to_string())?;
    let dates = extract_dates(&text, lexicon, opts);
    Ok(AnnotatedDocument {
        path: path.display().to_string(),
        label,
        text,
        dates: Some(dates),
        places: Vec::new(),
        tallies: Vec::new(),
    })
}

pub fn annotate_places(path: &Path, labeler: &Labeler, res: &PlaceResources) -> Result<AnnotatedDocument> {
    let (label, text) = read_and_decode(path, labeler)?;
    let places = tag_and_resolve(&text, &res.gazetteer, &res.stop_words, &res.triggers);
    let tallies = aggregate_by_country(&places, &res.gazetteer);
    Ok(AnnotatedDocument {
        path: path.display().to_string(),
        label,
        text,
        dates: None,
        places,
        tallies,
    })
}

/// Marker spans for the inline format, in offset order.
pub fn inline_spans(doc: &AnnotatedDocument, gazetteer: Option<&GazetteerIndex>) -> Vec<InlineSpan> {
    let mut spans: Vec<InlineSpan> = Vec::new();
    if let Some(d) = &doc.dates {
        spans.extend(d.matches.iter().map(|m| InlineSpan {
            offset: m.offset,
            length: m.length,
            kind: m.normal.kind().as_str().to_string(),
            normal: m.normal.to_string(),
        }));
    }
    if let Some(index) = gazetteer {
        spans.extend(doc.places.iter().map(|m| {
            use multiex::geotag::Resolved;
            let (kind, normal) = match m.resolved {
                Some(Resolved::Place { id }) => (
                    "PLACE",
                    index
                        .get(id)
                        .map_or_else(|| id.to_string(), |p| format!("{}/{}", p.country, p.id)),
                ),
                Some(Resolved::Country { country }) => ("COUNTRY", country.to_string()),
                None => ("PLACE", "?".to_string()),
            };
            InlineSpan {
                offset: m.offset,
                length: m.length,
                kind: kind.to_string(),
                normal,
            }
        }));
    }
    spans.sort_by_key(|s| s.offset);
    spans
}
