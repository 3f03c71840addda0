//! SVG world maps: countries shaded by how often they are mentioned, places
//! dotted with a radius that grows with their share of place mentions.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::fs;
use std::io::BufRead;
use std::path::Path;

use thiserror::Error;

use crate::gazetteer::{CountryCode, GazetteerIndex, PlaceId};
use crate::geotag::{CountryTally, GeoMatch, Resolved};

#[derive(Debug, Error)]
pub enum MapError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("outline line {line}: {msg}")]
    Row { line: usize, msg: String },
    #[error("coordinate out of range: lat {lat}, lon {lon}")]
    Coordinate { lat: f64, lon: f64 },
    #[error("bad map style: {0}")]
    Style(String),
}

/// Country polygons as (longitude, latitude) rings.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct WorldOutline {
    countries: BTreeMap<CountryCode, Vec<Vec<(f64, f64)>>>,
}

fn in_range(lat: f64, lon: f64) -> bool {
    (-90.0..=90.0).contains(&lat) && (-180.0..=180.0).contains(&lon)
}

impl WorldOutline {
    /// Parse `country<TAB>polygon_index<TAB>lon,lat lon,lat ...` lines.
    /// Blank lines and `#` comments are skipped.
    pub fn from_reader(reader: impl BufRead) -> Result<Self, MapError> {
        let mut rings: BTreeMap<CountryCode, BTreeMap<usize, Vec<(f64, f64)>>> = BTreeMap::new();
        for (i, line) in reader.lines().enumerate() {
            let line_no = i + 1;
            let line = line.map_err(|source| MapError::Io {
                path: "<outline>".into(),
                source,
            })?;
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let row = |msg: String| MapError::Row { line: line_no, msg };
            let mut cols = line.split('\t');
            let (Some(cc), Some(idx), Some(coords), None) = (cols.next(), cols.next(), cols.next(), cols.next()) else {
                return Err(row("expected 3 tab-separated columns".into()));
            };
            let country: CountryCode = cc.parse().map_err(row)?;
            let idx: usize = idx.parse().map_err(|_| row(format!("bad polygon index {idx:?}")))?;
            let mut ring = Vec::new();
            for pair in coords.split_whitespace() {
                let parsed = pair
                    .split_once(',')
                    .and_then(|(lon, lat)| Some((lon.parse::<f64>().ok()?, lat.parse::<f64>().ok()?)));
                let Some((lon, lat)) = parsed else {
                    return Err(row(format!("bad vertex {pair:?}")));
                };
                if !in_range(lat, lon) {
                    return Err(row(format!("vertex {pair} out of range")));
                }
                ring.push((lon, lat));
            }
            if ring.len() < 3 {
                return Err(row("a polygon needs at least 3 vertices".into()));
            }
            if rings.entry(country).or_default().insert(idx, ring).is_some() {
                return Err(row(format!("duplicate polygon {country} {idx}")));
            }
        }
        let countries = rings
            .into_iter()
            .map(|(cc, polys)| (cc, polys.into_values().collect()))
            .collect();
        Ok(WorldOutline { countries })
    }

    pub fn load(path: &Path) -> Result<Self, MapError> {
        let io = |source| MapError::Io {
            path: path.display().to_string(),
            source,
        };
        let file = fs::File::open(path).map_err(io)?;
        Self::from_reader(std::io::BufReader::new(file))
    }

    pub fn len(&self) -> usize {
        self.countries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.countries.is_empty()
    }

    pub fn contains(&self, country: CountryCode) -> bool {
        self.countries.contains_key(&country)
    }

    pub fn countries(&self) -> impl Iterator<Item = CountryCode> + '_ {
        self.countries.keys().copied()
    }

    pub fn polygons(&self, country: CountryCode) -> &[Vec<(f64, f64)>] {
        self.countries.get(&country).map_or(&[], Vec::as_slice)
    }
}

/// Upper end of the percentage scale that the color ramp is spread over.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum BucketRange {
    /// The largest percentage among the tallies; the top country always
    /// gets the darkest color.
    #[default]
    ObservedMax,
    /// A fixed 0-100 scale, comparable across maps.
    Full,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MapStyle {
    pub width: f64,
    pub height: f64,
    /// Fill colors from least to most mentioned.
    pub ramp: Vec<String>,
    /// Fill for countries with no mentions.
    pub neutral: String,
    pub dot_color: String,
    pub r_min: f64,
    pub r_max: f64,
    pub bucket_range: BucketRange,
}

impl Default for MapStyle {
    fn default() -> Self {
        MapStyle {
            width: 1000.0,
            height: 500.0,
            ramp: ["#fee5d9", "#fcae91", "#fb6a4a", "#de2d26", "#a50f15"]
                .map(String::from)
                .to_vec(),
            neutral: "#e8e8e8".into(),
            dot_color: "#08519c".into(),
            r_min: 2.0,
            r_max: 10.0,
            bucket_range: BucketRange::ObservedMax,
        }
    }
}

impl MapStyle {
    pub fn validate(&self) -> Result<(), MapError> {
        if !(self.width > 0.0 && self.height > 0.0) {
            return Err(MapError::Style("width and height must be positive".into()));
        }
        if self.ramp.is_empty() {
            return Err(MapError::Style("color ramp is empty".into()));
        }
        if !(0.0 <= self.r_min && self.r_min <= self.r_max) {
            return Err(MapError::Style("need 0 <= r_min <= r_max".into()));
        }
        Ok(())
    }
}

/// Equirectangular projection onto the style's canvas.
pub fn project(lat: f64, lon: f64, style: &MapStyle) -> Result<(f64, f64), MapError> {
    if !in_range(lat, lon) {
        return Err(MapError::Coordinate { lat, lon });
    }
    Ok(((lon + 180.0) / 360.0 * style.width, (90.0 - lat) / 180.0 * style.height))
}

/// Ramp index of `percentage` when `(0, upper]` is cut into `ramp_size`
/// equal buckets, each open below and closed above.
pub fn bucket_index(percentage: f64, upper: f64, ramp_size: usize) -> usize {
    let k = (percentage * ramp_size as f64 / upper).ceil();
    (k.max(1.0) as usize - 1).min(ramp_size - 1)
}

fn upper_bound(tallies: &[CountryTally], range: BucketRange) -> f64 {
    match range {
        BucketRange::Full => 100.0,
        BucketRange::ObservedMax => tallies
            .iter()
            .filter(|t| t.hits > 0)
            .map(|t| t.percentage)
            .fold(0.0, f64::max),
    }
}

/// Ramp index per mentioned country. Countries without hits get no entry.
pub fn bucket_frequencies(
    tallies: &[CountryTally],
    ramp_size: usize,
    range: BucketRange,
) -> BTreeMap<CountryCode, usize> {
    assert!(ramp_size >= 1, "empty color ramp");
    let upper = upper_bound(tallies, range);
    tallies
        .iter()
        .filter(|t| t.hits > 0 && upper > 0.0)
        .map(|t| (t.country, bucket_index(t.percentage, upper, ramp_size)))
        .collect()
}

/// One resolved place mention, with what the map needs to draw it.
#[derive(Debug, Clone, PartialEq)]
pub struct PlaceMention {
    pub id: PlaceId,
    pub name: String,
    pub country: CountryCode,
    pub latitude: f64,
    pub longitude: f64,
}

/// Place mentions among resolved matches; country triggers are skipped.
pub fn place_mentions(matches: &[GeoMatch], index: &GazetteerIndex) -> Vec<PlaceMention> {
    matches
        .iter()
        .filter_map(|m| match m.resolved? {
            Resolved::Place { id } => index.get(id),
            Resolved::Country { .. } => None,
        })
        .map(|p| PlaceMention {
            id: p.id,
            name: p.canonical_name.clone(),
            country: p.country,
            latitude: p.latitude,
            longitude: p.longitude,
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct RenderedMap {
    pub svg: String,
    /// Countries that were mentioned but have no outline to fill.
    pub diagnostics: Vec<String>,
}

fn escape_xml(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            _ => out.push(c),
        }
    }
    out
}

fn legend_range(k: usize, upper: f64, n: usize) -> String {
    let lo = upper * k as f64 / n as f64;
    let hi = upper * (k + 1) as f64 / n as f64;
    format!("{lo:.1}-{hi:.1}%")
}

pub fn render_svg(
    tallies: &[CountryTally],
    places: &[PlaceMention],
    outline: &WorldOutline,
    style: &MapStyle,
) -> Result<RenderedMap, MapError> {
    style.validate()?;
    let n = style.ramp.len();
    let buckets = bucket_frequencies(tallies, n, style.bucket_range);
    let hits: BTreeMap<CountryCode, usize> = tallies.iter().map(|t| (t.country, t.hits)).collect();

    let mut missing = BTreeSet::new();
    missing.extend(buckets.keys().copied().filter(|c| !outline.contains(*c)));
    missing.extend(places.iter().map(|p| p.country).filter(|c| !outline.contains(*c)));
    let diagnostics = missing
        .into_iter()
        .map(|c| format!("no outline for country {c}; fill skipped"))
        .collect();

    let (w, h) = (style.width, style.height);
    let mut svg = String::new();
    // writing to a String cannot fail
    let _ = writeln!(svg, r##"<?xml version="1.0" encoding="UTF-8"?>"##);
    let _ = writeln!(
        svg,
        r##"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"##
    );
    let _ = writeln!(svg, r##"<rect x="0" y="0" width="{w}" height="{h}" fill="#ffffff"/>"##);

    let _ = writeln!(svg, r##"<g id="countries" stroke="#808080" stroke-width="0.5">"##);
    for country in outline.countries() {
        let fill = buckets
            .get(&country)
            .map_or(style.neutral.as_str(), |&b| style.ramp[b].as_str());
        let mut d = String::new();
        for ring in outline.polygons(country) {
            for (i, &(lon, lat)) in ring.iter().enumerate() {
                let (x, y) = project(lat, lon, style)?;
                let _ = write!(d, "{}{x:.2},{y:.2}", if i == 0 { "M" } else { " L" });
            }
            d.push_str(" Z ");
        }
        let _ = write!(svg, r##"<g class="country" id="country-{country}" fill="{fill}""##);
        if let (Some(b), Some(n)) = (buckets.get(&country), hits.get(&country)) {
            let _ = write!(svg, r##" data-bucket="{b}" data-hits="{n}""##);
        }
        let _ = writeln!(svg, r##"><path d="{}"/></g>"##, d.trim_end());
    }
    let _ = writeln!(svg, "</g>");

    let mut counts: BTreeMap<PlaceId, (usize, &PlaceMention)> = BTreeMap::new();
    for p in places {
        counts.entry(p.id).or_insert((0, p)).0 += 1;
    }
    let total = places.len() as f64;
    let _ = writeln!(
        svg,
        r##"<g id="places" fill="{}" fill-opacity="0.8" stroke="#ffffff" stroke-width="0.5">"##,
        escape_xml(&style.dot_color)
    );
    for (id, (count, p)) in &counts {
        let (x, y) = project(p.latitude, p.longitude, style)?;
        let share = *count as f64 / total;
        let r = style.r_min + (style.r_max - style.r_min) * share;
        let _ = writeln!(
            svg,
            r##"<circle id="place-{id}" cx="{x:.2}" cy="{y:.2}" r="{r:.2}"><title>{} ({count})</title></circle>"##,
            escape_xml(&p.name)
        );
    }
    let _ = writeln!(svg, "</g>");

    let upper = upper_bound(tallies, style.bucket_range);
    let _ = writeln!(svg, r##"<g id="legend" font-family="sans-serif" font-size="10">"##);
    let x0 = 10.0;
    let y0 = h - 14.0 * (n as f64 + 1.0) - 10.0;
    let rows = std::iter::once((style.neutral.as_str(), "no mentions".to_string()))
        .chain((0..n).map(|k| (style.ramp[k].as_str(), legend_range(k, upper, n))));
    for (i, (color, label)) in rows.enumerate() {
        let y = y0 + 14.0 * i as f64;
        let _ = writeln!(
            svg,
            r##"<rect x="{x0}" y="{y}" width="10" height="10" fill="{}"/><text x="{}" y="{}">{}</text>"##,
            escape_xml(color),
            x0 + 14.0,
            y + 9.0,
            escape_xml(&label)
        );
    }
    let _ = writeln!(svg, "</g>");
    let _ = writeln!(svg, "</svg>");

    Ok(RenderedMap { svg, diagnostics })
}
