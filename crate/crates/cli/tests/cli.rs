use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use multiex_cli::inline::parse_inline;
use serde_json::Value;
use tempfile::TempDir;

const DATA: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data");

fn data(rel: &str) -> String {
    format!("{DATA}/{rel}")
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn multiex(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_multiex")).args(args).output().unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn records(stdout: &str) -> Vec<Value> {
    stdout.lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn of_kind<'a>(recs: &'a [Value], kind: &str) -> Vec<&'a Value> {
    recs.iter().filter(|r| r["record"] == kind).collect()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn places_args(extra: &[&str]) -> Vec<String> {
    let mut v: Vec<String> = vec![
        "places".into(),
        "--gazetteer".into(),
        data("gazetteer/world.tsv"),
        "--triggers".into(),
        data("gazetteer/triggers.tsv"),
    ];
    v.extend(extra.iter().map(|s| s.to_string()));
    v
}

fn run_places(extra: &[&str]) -> Run {
    let args = places_args(extra);
    multiex(&args.iter().map(String::as_str).collect::<Vec<_>>())
}

#[test]
fn missing_profile_directory_is_config_error() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "a.txt", "hello there");
    let r = multiex(&["identify", "--profiles", "/nonexistent/profiles", s(&f)]);
    assert_eq!(r.code, 2, "{}", r.stderr);
}

#[test]
fn identify_hungarian_among_english_and_hungarian() {
    let dir = TempDir::new().unwrap();
    for p in ["en.ISO-8859-1.profile", "hu.ISO-8859-2.profile"] {
        fs::copy(data(&format!("profiles/{p}")), dir.path().join(p)).unwrap();
    }
    let r = multiex(&[
        "identify",
        "--profiles",
        s(dir.path()),
        &data("fixtures/hu-news.ISO-8859-2.txt"),
    ]);
    assert_eq!(r.code, 0);
    let cols: Vec<&str> = r.stdout.trim_end().split('\t').collect();
    assert_eq!(cols[1..3], ["hu", "ISO-8859-2"]);
    assert!(cols[3].parse::<f64>().unwrap() < 0.0);
}

#[test]
fn unreadable_file_is_partial_failure() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "a.txt", "The cat sat on the mat and looked out of the window.");
    let r = multiex(&["identify", "--profiles", &data("profiles"), "/nonexistent.txt", s(&f)]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("a.txt\ten\t"), "{}", r.stdout);
    assert!(r.stderr.contains("nonexistent"));
}

#[test]
fn bad_reference_is_config_error() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "a.txt", "yesterday");
    let r = multiex(&[
        "dates",
        "--lexicon",
        &data("lexicons/en.lex"),
        "--reference",
        "01/03/2003",
        s(&f),
    ]);
    assert_eq!(r.code, 2);
}

#[test]
fn yesterday_resolves_against_reference() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "a.txt", "It happened yesterday.");
    let r = multiex(&[
        "dates",
        "--lexicon",
        &data("lexicons/en.lex"),
        "--reference",
        "2003-03-01",
        s(&f),
    ]);
    assert_eq!(r.code, 0);
    let recs = records(&r.stdout);
    let dates = of_kind(&recs, "date");
    assert_eq!(dates.len(), 1);
    assert_eq!(dates[0]["surface"], "yesterday");
    assert_eq!(dates[0]["resolved"], "2003-02-28");
}

#[test]
fn empty_file_has_no_annotations() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "empty.txt", "");
    let r = multiex(&["dates", "--lexicon", &data("lexicons/en.lex"), s(&f)]);
    assert_eq!(r.code, 0);
    let recs = records(&r.stdout);
    assert_eq!(recs.len(), 1);
    assert_eq!(recs[0]["record"], "document");
}

#[test]
fn romanian_armistice_places() {
    let r = run_places(&[&data("fixtures/ro-armistice.txt")]);
    assert_eq!(r.code, 0);
    let recs = records(&r.stdout);
    let got: BTreeSet<(String, String)> = of_kind(&recs, "place")
        .iter()
        .map(|p| {
            (
                p["surface"].as_str().unwrap().to_string(),
                p["country"].as_str().unwrap().to_string(),
            )
        })
        .collect();
    for (surface, country) in [("Franta", "FR"), ("Germania", "DE"), ("Compiègne", "FR")] {
        assert!(got.contains(&(surface.into(), country.into())), "{surface}: {got:?}");
    }
}

#[test]
fn lowercase_text_has_no_places() {
    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "a.txt",
        "paris and london and split and roma are lower case here.",
    );
    let r = run_places(&[s(&f)]);
    assert_eq!(r.code, 0);
    assert!(of_kind(&records(&r.stdout), "place").is_empty());
}

#[test]
fn tallies_sum_to_hundred() {
    let r = run_places(&[&data("fixtures/ro-armistice.txt")]);
    let recs = records(&r.stdout);
    let tallies = of_kind(&recs, "tally");
    let sum: f64 = tallies.iter().map(|t| t["percentage"].as_f64().unwrap()).sum();
    assert!((sum - 100.0).abs() < 1e-9, "{sum}");
}

#[test]
fn gazetteer_load_failure_is_config_error() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "a.txt", "Paris");
    let r = multiex(&["places", "--gazetteer", "/nonexistent.tsv", s(&f)]);
    assert_eq!(r.code, 2);
}

fn svg_hits(svg: &str) -> BTreeSet<(String, usize)> {
    svg.lines()
        .filter_map(|l| {
            let country = l.split("id=\"country-").nth(1)?.get(..2)?.to_string();
            let hits = l.split("data-hits=\"").nth(1)?.split('"').next()?.parse().ok()?;
            Some((country, hits))
        })
        .collect()
}

#[test]
fn map_sums_tallies_across_files() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.txt", "Paris, Lyon and Berlin.");
    let b = write(&dir, "b.txt", "Paris again, then Hungary.");
    let ann_a = dir.path().join("a.jsonl");
    let ann_b = dir.path().join("b.jsonl");
    assert_eq!(run_places(&[s(&a), "--out", s(&ann_a)]).code, 0);
    assert_eq!(run_places(&[s(&b), "--out", s(&ann_b)]).code, 0);
    let r = multiex(&["map", "--outline", &data("outline/world.tsv"), s(&ann_a), s(&ann_b)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let hits = svg_hits(&r.stdout);
    let want: BTreeSet<(String, usize)> = [("FR", 3), ("DE", 1), ("HU", 1)]
        .iter()
        .map(|(c, n)| (c.to_string(), *n))
        .collect();
    assert_eq!(hits, want);
    // Paris mentioned twice, Lyon and Berlin once: one circle each
    assert_eq!(r.stdout.matches("<circle").count(), 3);
}

#[test]
fn map_of_single_file_matches_direct_rendering() {
    use multiex::gazetteer::{load_gazetteer, load_triggers, GeoStopList, LoadOptions};
    use multiex::geotag::{aggregate_by_country, tag_and_resolve};
    use multiex::mapviz::{place_mentions, render_svg, MapStyle, WorldOutline};

    let dir = TempDir::new().unwrap();
    let ann = dir.path().join("a.jsonl");
    assert_eq!(
        run_places(&[&data("fixtures/ro-armistice.txt"), "--out", s(&ann)]).code,
        0
    );
    let r = multiex(&["map", "--outline", &data("outline/world.tsv"), s(&ann)]);
    assert_eq!(r.code, 0);

    let text = fs::read_to_string(data("fixtures/ro-armistice.txt")).unwrap();
    let index = load_gazetteer(data("gazetteer/world.tsv").as_ref(), &LoadOptions::default()).unwrap();
    let triggers = load_triggers(data("gazetteer/triggers.tsv").as_ref()).unwrap();
    let matches = tag_and_resolve(&text, &index, &GeoStopList::default(), &triggers);
    let outline = WorldOutline::load(data("outline/world.tsv").as_ref()).unwrap();
    let direct = render_svg(
        &aggregate_by_country(&matches, &index),
        &place_mentions(&matches, &index),
        &outline,
        &MapStyle::default(),
    )
    .unwrap();
    assert_eq!(r.stdout, direct.svg);
}

#[test]
fn map_of_empty_annotations_is_neutral() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "a.txt", "nothing to see here");
    let ann = dir.path().join("a.jsonl");
    assert_eq!(run_places(&[s(&f), "--out", s(&ann)]).code, 0);
    let r = multiex(&["map", "--outline", &data("outline/world.tsv"), s(&ann)]);
    assert_eq!(r.code, 0);
    assert!(svg_hits(&r.stdout).is_empty());
    assert!(!r.stdout.contains("<circle"));
}

#[test]
fn map_without_records_is_config_error() {
    let dir = TempDir::new().unwrap();
    let ann = write(&dir, "a.jsonl", "");
    let r = multiex(&["map", "--outline", &data("outline/world.tsv"), s(&ann)]);
    assert_eq!(r.code, 2);
}

fn news_files() -> (TempDir, Vec<PathBuf>) {
    let dir = TempDir::new().unwrap();
    let mut paths = Vec::new();
    for e in fs::read_dir(data("fixtures/en-news")).unwrap() {
        let p = e.unwrap().path();
        if p.extension().is_some_and(|x| x == "txt") {
            let (text, _) = parse_inline(&fs::read_to_string(&p).unwrap()).unwrap();
            let out = dir.path().join(p.file_name().unwrap());
            fs::write(&out, text).unwrap();
            paths.push(out);
        }
    }
    paths.sort();
    (dir, paths)
}

#[test]
fn standoff_and_inline_agree() {
    let (_dir, paths) = news_files();
    for path in &paths {
        let lex = data("lexicons/en.lex");
        let standoff = multiex(&["dates", "--lexicon", &lex, s(path)]);
        let inline = multiex(&["dates", "--lexicon", &lex, "--format", "inline", s(path)]);
        let from_standoff: Vec<(u64, u64)> = of_kind(&records(&standoff.stdout), "date")
            .iter()
            .map(|d| (d["offset"].as_u64().unwrap(), d["length"].as_u64().unwrap()))
            .collect();
        let (text, spans) = parse_inline(&inline.stdout).unwrap();
        assert_eq!(text, fs::read_to_string(path).unwrap());
        let from_inline: Vec<(u64, u64)> = spans.iter().map(|s| (s.offset as u64, s.length as u64)).collect();
        assert_eq!(from_standoff, from_inline);

        let standoff = run_places(&[s(path)]);
        let inline = run_places(&[s(path), "--format", "inline"]);
        let from_standoff: Vec<(u64, u64)> = of_kind(&records(&standoff.stdout), "place")
            .iter()
            .map(|d| (d["offset"].as_u64().unwrap(), d["length"].as_u64().unwrap()))
            .collect();
        let (_, spans) = parse_inline(&inline.stdout).unwrap();
        let from_inline: Vec<(u64, u64)> = spans.iter().map(|s| (s.offset as u64, s.length as u64)).collect();
        assert_eq!(from_standoff, from_inline);
    }
}

#[test]
fn output_is_deterministic_and_ordered_by_input() {
    let (_dir, paths) = news_files();
    let names: Vec<&str> = paths.iter().map(|p| s(p)).collect();
    let mut one = vec!["--lang", "en", "--stopwords"];
    let stop = data("gazetteer/stopwords.en.txt");
    one.push(&stop);
    one.extend(&names);
    let mut four = one.clone();
    four.extend(["--jobs", "4"]);
    let a = run_places(&one);
    let b = run_places(&one);
    let c = run_places(&four);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    let docs: Vec<String> = of_kind(&records(&a.stdout), "document")
        .iter()
        .map(|d| d["path"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(docs, names);
}

#[test]
fn language_is_identified_when_not_given() {
    let r = multiex(&[
        "dates",
        "--profiles",
        &data("profiles"),
        "--lexicon-dir",
        &data("lexicons"),
        &data("fixtures/ro-armistice.txt"),
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let recs = records(&r.stdout);
    assert_eq!(recs[0]["language"], "ro");
    assert!(of_kind(&recs, "date").iter().any(|d| d["normal"] == "1918-11-11"));
}
