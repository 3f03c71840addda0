//! Place-name tagging, homograph disambiguation and per-country tallies.

use std::cmp::Reverse;
use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::gazetteer::{CountryCode, GazetteerIndex, GeoStopList, PlaceId, SizeClass, TriggerKind, TriggerTable};
use crate::text::{tokenize, CharIndex};

/// What a surface in the text refers to before disambiguation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum GeoTarget {
    /// Every gazetteer record carrying the surface; never empty.
    Places { ids: Vec<PlaceId> },
    /// A country trigger (ISO code, currency, demonym, country name).
    Country { country: CountryCode, kind: TriggerKind },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Resolved {
    Place { id: PlaceId },
    Country { country: CountryCode },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeoMatch {
    /// Char offset into the decoded text.
    pub offset: usize,
    /// Length in chars.
    pub length: usize,
    pub surface: String,
    pub target: GeoTarget,
    pub resolved: Option<Resolved>,
}

impl GeoMatch {
    pub fn is_ambiguous(&self) -> bool {
        matches!(&self.target, GeoTarget::Places { ids } if ids.len() > 1)
    }

    /// Country of the resolved target.
    pub fn country(&self, index: &GazetteerIndex) -> Option<CountryCode> {
        match self.resolved? {
            Resolved::Country { country } => Some(country),
            Resolved::Place { id } => index.get(id).map(|p| p.country),
        }
    }
}

/// Scan `text` for gazetteer names and country triggers.
///
/// Place names are only tried at capitalized tokens; triggers are tried at
/// every token because currency names are usually lower case. At each
/// position the longer of the two candidates wins, a trigger winning a tie.
/// Surfaces on the stop list are dropped. Matches come out left to right
/// and never overlap. Country triggers are resolved on the spot; place
/// matches are left for [`disambiguate`].
pub fn tag_places(text: &str, index: &GazetteerIndex, stops: &GeoStopList, triggers: &TriggerTable) -> Vec<GeoMatch> {
    let tokens = tokenize(text);
    let chars = CharIndex::new(text);
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < tokens.len() {
        let place = if tokens[pos].is_capitalized() {
            index.match_at(&tokens, pos)
        } else {
            None
        };
        let trigger = triggers.match_at(&tokens, pos);
        let hit = match (place, trigger) {
            (Some(p), Some((span, _))) if p.span > span => Some((p.span, GeoTarget::Places { ids: p.ids })),
            (_, Some((span, t))) => Some((
                span,
                GeoTarget::Country {
                    country: t.country,
                    kind: t.kind,
                },
            )),
            (Some(p), None) => Some((p.span, GeoTarget::Places { ids: p.ids })),
            (None, None) => None,
        };
        let Some((span, target)) = hit else {
            pos += 1;
            continue;
        };
        let offset = tokens[pos].start;
        let length = tokens[pos + span - 1].end - offset;
        let surface = chars.slice(text, offset, length);
        if stops.contains(surface) {
            pos += 1;
            continue;
        }
        let resolved = match target {
            GeoTarget::Country { country, .. } => Some(Resolved::Country { country }),
            GeoTarget::Places { ref ids } if ids.len() == 1 => Some(Resolved::Place { id: ids[0] }),
            GeoTarget::Places { .. } => None,
        };
        out.push(GeoMatch {
            offset,
            length,
            surface: surface.to_string(),
            target,
            resolved,
        });
        pos += span;
    }
    out
}

/// References per country from matches that need no disambiguation: place
/// matches with a single candidate, and country triggers.
pub fn unambiguous_tallies(matches: &[GeoMatch], index: &GazetteerIndex) -> HashMap<CountryCode, usize> {
    let mut tallies = HashMap::new();
    for m in matches {
        let country = match &m.target {
            GeoTarget::Country { country, .. } => Some(*country),
            GeoTarget::Places { ids } if ids.len() == 1 => index.get(ids[0]).map(|p| p.country),
            GeoTarget::Places { .. } => None,
        };
        if let Some(c) = country {
            *tallies.entry(c).or_insert(0) += 1;
        }
    }
    tallies
}

/// One homograph candidate as seen by the resolution rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Candidate {
    pub id: PlaceId,
    pub country: CountryCode,
    pub size_class: SizeClass,
}

/// Pick among homographs. The most important place (lowest size class) is
/// the default; a candidate whose country has strictly more unambiguous
/// references in the document overrides it. Ordering by (references desc,
/// size class asc, country asc, id asc) gives exactly that rule.
pub fn choose_candidate(candidates: &[Candidate], tallies: &HashMap<CountryCode, usize>) -> Option<PlaceId> {
    candidates
        .iter()
        .min_by_key(|c| {
            (
                Reverse(tallies.get(&c.country).copied().unwrap_or(0)),
                c.size_class,
                c.country,
                c.id,
            )
        })
        .map(|c| c.id)
}

/// Resolve every place match. Already-resolved matches pass through.
pub fn disambiguate(
    matches: Vec<GeoMatch>,
    index: &GazetteerIndex,
    tallies: &HashMap<CountryCode, usize>,
) -> Vec<GeoMatch> {
    matches
        .into_iter()
        .map(|mut m| {
            if let GeoTarget::Places { ids } = &m.target {
                let cands: Vec<Candidate> = ids
                    .iter()
                    .filter_map(|id| index.get(*id))
                    .map(|p| Candidate {
                        id: p.id,
                        country: p.country,
                        size_class: p.size_class,
                    })
                    .collect();
                m.resolved = choose_candidate(&cands, tallies).map(|id| Resolved::Place { id });
            }
            m
        })
        .collect()
}

/// Tag and resolve in one go.
pub fn tag_and_resolve(
    text: &str,
    index: &GazetteerIndex,
    stops: &GeoStopList,
    triggers: &TriggerTable,
) -> Vec<GeoMatch> {
    let matches = tag_places(text, index, stops, triggers);
    let tallies = unambiguous_tallies(&matches, index);
    disambiguate(matches, index, &tallies)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CountryTally {
    pub country: CountryCode,
    pub hits: usize,
    pub percentage: f64,
}

/// Build tallies from raw hit counts; most hits first, then by country.
pub fn tallies_from_counts(counts: &BTreeMap<CountryCode, usize>) -> Vec<CountryTally> {
    let total: usize = counts.values().sum();
    let mut out: Vec<CountryTally> = counts
        .iter()
        .filter(|(_, &n)| n > 0)
        .map(|(&country, &hits)| CountryTally {
            country,
            hits,
            percentage: hits as f64 / total as f64 * 100.0,
        })
        .collect();
    out.sort_by(|a, b| b.hits.cmp(&a.hits).then(a.country.cmp(&b.country)));
    out
}

/// Hits and share of hits per country over resolved matches; place matches
/// and trigger matches count one each.
pub fn aggregate_by_country(matches: &[GeoMatch], index: &GazetteerIndex) -> Vec<CountryTally> {
    let mut counts = BTreeMap::new();
    for c in matches.iter().filter_map(|m| m.country(index)) {
        *counts.entry(c).or_insert(0) += 1;
    }
    tallies_from_counts(&counts)
}
