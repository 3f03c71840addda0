//! Standoff output: JSON Lines, one self-describing record per line.
//!
//! ```text
//! {"record":"document","path":"a.txt","language":"en","encoding":"UTF-8","score":-3.1}
//! {"record":"date","path":"a.txt","offset":8,"length":9,"surface":"31.5.2003","kind":"FULL","normal":"2003-05-31","value":{...}}
//! {"record":"place","path":"a.txt","offset":0,"length":5,"surface":"Paris","country":"FR","place_id":2988507,...}
//! {"record":"tally","path":"a.txt","country":"FR","hits":1,"percentage":100.0}
//! ```
//!
//! Offsets and lengths count Unicode scalar values in the decoded text. A
//! tally with no `path` covers every document of the run.

use multiex::dates::{DateKind, DateMatch, NormalizedDate, Order};
use multiex::gazetteer::{CountryCode, GazetteerIndex, PlaceId, TriggerKind};
use multiex::geotag::{CountryTally, GeoMatch, GeoTarget, Resolved};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "record", rename_all = "snake_case")]
pub enum Record {
    Document {
        path: String,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        language: Option<String>,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        encoding: Option<String>,
        /// Language identification score, when the label was detected.
        #[serde(skip_serializing_if = "Option::is_none", default)]
        score: Option<f64>,
        /// Field order used for ambiguous numeric dates.
        #[serde(skip_serializing_if = "Option::is_none", default)]
        date_order: Option<Order>,
    },
    Date {
        path: String,
        offset: usize,
        length: usize,
        surface: String,
        kind: DateKind,
        normal: String,
        value: NormalizedDate,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        resolved: Option<String>,
    },
    Place {
        path: String,
        offset: usize,
        length: usize,
        surface: String,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        country: Option<CountryCode>,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        place_id: Option<PlaceId>,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        name: Option<String>,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        latitude: Option<f64>,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        longitude: Option<f64>,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        size_class: Option<u8>,
        /// Set for country triggers (code, currency, demonym, country name).
        #[serde(skip_serializing_if = "Option::is_none", default)]
        trigger: Option<TriggerKind>,
        /// Every gazetteer record sharing the surface; empty for triggers.
        #[serde(skip_serializing_if = "Vec::is_empty", default)]
        candidates: Vec<PlaceId>,
    },
    Tally {
        #[serde(skip_serializing_if = "Option::is_none", default)]
        path: Option<String>,
        country: CountryCode,
        hits: usize,
        percentage: f64,
    },
}

impl Record {
    pub fn date(path: &str, m: &DateMatch) -> Self {
        Record::Date {
            path: path.to_string(),
            offset: m.offset,
            length: m.length,
            surface: m.surface.clone(),
            kind: m.normal.kind(),
            normal: m.normal.to_string(),
            value: m.normal,
            resolved: m.resolved.map(|r| r.to_string()),
        }
    }

    pub fn place(path: &str, m: &GeoMatch, index: &GazetteerIndex) -> Self {
        let record = match m.resolved {
            Some(Resolved::Place { id }) => index.get(id),
            _ => None,
        };
        let (trigger, candidates) = match &m.target {
            GeoTarget::Country { kind, .. } => (Some(*kind), Vec::new()),
            GeoTarget::Places { ids } => (None, ids.clone()),
        };
        Record::Place {
            path: path.to_string(),
            offset: m.offset,
            length: m.length,
            surface: m.surface.clone(),
            country: m.country(index),
            place_id: record.map(|p| p.id),
            name: record.map(|p| p.canonical_name.clone()),
            latitude: record.map(|p| p.latitude),
            longitude: record.map(|p| p.longitude),
            size_class: record.map(|p| u8::from(p.size_class)),
            trigger,
            candidates,
        }
    }

    pub fn tally(path: Option<&str>, t: &CountryTally) -> Self {
        Record::Tally {
            path: path.map(String::from),
            country: t.country,
            hits: t.hits,
            percentage: t.percentage,
        }
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("records always serialize")
    }
}
