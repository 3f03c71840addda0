//! Argument parsing and the subcommands.

use std::collections::BTreeMap;
use std::fs::{self, File};
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use chrono::NaiveDate;
use clap::{Args, Parser, Subcommand, ValueEnum};
use multiex::dates::{DateLexicon, DateOptions, Order};
use multiex::gazetteer::{
    load_gazetteer, load_stop_words, load_triggers, propose_stop_words, CountryCode, GeoStopList, LoadOptions,
    SizeFilter, TriggerTable,
};
use multiex::geotag::tallies_from_counts;
use multiex::langid::{
    decode_to_utf8, identify, load_profile_dir, train_profile, Encoding, LangEncLabel, LangEncProfile,
};
use multiex::mapviz::{render_svg, BucketRange, MapStyle, PlaceMention, WorldOutline};
use rayon::prelude::*;

use crate::inline::annotate_inline;
use crate::pipeline::{
    annotate_dates, annotate_places, inline_spans, AnnotatedDocument, Labeler, Lexicons, PlaceResources,
};
use crate::standoff::Record;

#[derive(Debug, Parser)]
#[command(name = "multiex", version, about = "Multilingual date and place-name extraction")]
pub struct Cli {
    /// Print rejected date candidates and other notes to stderr.
    #[arg(short, long, global = true)]
    pub verbose: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Identify language and character encoding of each file.
    Identify(IdentifyArgs),
    /// Extract and normalize date expressions.
    Dates(DatesArgs),
    /// Tag place names and country references, with per-country tallies.
    Places(PlacesArgs),
    /// Render place annotations as an SVG world map.
    Map(MapArgs),
    /// Train a language/encoding profile from a corpus.
    TrainProfile(TrainArgs),
    /// List gazetteer names that are also frequent words of a language.
    ProposeStopwords(ProposeArgs),
}

#[derive(Debug, Args)]
pub struct IdentifyArgs {
    #[arg(required = true)]
    pub paths: Vec<PathBuf>,
    /// Directory of *.profile files.
    #[arg(long)]
    pub profiles: PathBuf,
    /// Print the N best labels per file.
    #[arg(long, default_value_t = 1)]
    pub top: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct LabelArgs {
    /// Language of every input; identified from --profiles when omitted.
    #[arg(long)]
    pub lang: Option<String>,
    /// Character encoding of every input; identified or UTF-8 when omitted.
    #[arg(long)]
    pub encoding: Option<Encoding>,
    /// Directory of *.profile files used to identify language and encoding.
    #[arg(long)]
    pub profiles: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Standoff,
    Inline,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Standoff)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Process up to N files in parallel; output order follows the input.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OrderArg {
    Dmy,
    Mdy,
}

#[derive(Debug, Args)]
pub struct DatesArgs {
    pub paths: Vec<PathBuf>,
    #[command(flatten)]
    pub label: LabelArgs,
    /// Date lexicon used for every file.
    #[arg(long, conflicts_with = "lexicon_dir")]
    pub lexicon: Option<PathBuf>,
    /// Directory of *.lex files, chosen by each file's language.
    #[arg(long)]
    pub lexicon_dir: Option<PathBuf>,
    /// Date of writing, YYYY-MM-DD, for resolving relative dates.
    #[arg(long, value_parser = parse_reference)]
    pub reference: Option<NaiveDate>,
    /// Field order for ambiguous numeric dates when a document gives no hint.
    #[arg(long, value_enum)]
    pub default_order: Option<OrderArg>,
    /// Discard numeric dates with a two-digit year.
    #[arg(long)]
    pub reject_two_digit_years: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct PlacesArgs {
    pub paths: Vec<PathBuf>,
    #[command(flatten)]
    pub label: LabelArgs,
    #[arg(long)]
    pub gazetteer: PathBuf,
    /// Geo stop words: place-name homographs to ignore.
    #[arg(long)]
    pub stopwords: Option<PathBuf>,
    /// Country triggers: ISO codes, currencies, demonyms, country names.
    #[arg(long)]
    pub triggers: Option<PathBuf>,
    /// Drop places above size class N outside a region, e.g. `2:europe`
    /// or `2:FR,DE`.
    #[arg(long)]
    pub max_size_class_outside: Option<SizeFilter>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RangeArg {
    /// Spread the color ramp over 0 to the largest share.
    Observed,
    /// Spread the color ramp over 0 to 100%.
    Full,
}

#[derive(Debug, Args)]
pub struct MapArgs {
    /// Standoff files written by `places`.
    #[arg(required = true)]
    pub annotations: Vec<PathBuf>,
    #[arg(long)]
    pub outline: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = 1000.0)]
    pub width: f64,
    #[arg(long, default_value_t = 500.0)]
    pub height: f64,
    #[arg(long, default_value_t = 2.0)]
    pub r_min: f64,
    #[arg(long, default_value_t = 10.0)]
    pub r_max: f64,
    #[arg(long, value_enum, default_value_t = RangeArg::Observed)]
    pub bucket_range: RangeArg,
}

#[derive(Debug, Args)]
pub struct TrainArgs {
    #[arg(required = true)]
    pub corpus: Vec<PathBuf>,
    #[arg(long)]
    pub lang: String,
    #[arg(long)]
    pub encoding: Encoding,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct ProposeArgs {
    #[arg(long)]
    pub gazetteer: PathBuf,
    /// Word list, most frequent first, one word per line.
    #[arg(long)]
    pub frequency_list: PathBuf,
    /// How many of the most frequent words to check.
    #[arg(long, default_value_t = 10_000)]
    pub top: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_reference(s: &str) -> Result<NaiveDate, String> {
    NaiveDate::parse_from_str(s, "%Y-%m-%d").map_err(|e| format!("expected YYYY-MM-DD: {e}"))
}

/// A failure in flags or shared resources; reported with exit code 2.
#[derive(Debug)]
struct ConfigError(anyhow::Error);

impl<E: Into<anyhow::Error>> From<E> for ConfigError {
    fn from(e: E) -> Self {
        ConfigError(e.into())
    }
}

type ConfigResult<T> = std::result::Result<T, ConfigError>;

/// Outcome of a run: whether every input succeeded.
enum Outcome {
    Ok,
    Partial,
}

pub fn run(cli: Cli) -> ExitCode {
    let verbose = cli.verbose;
    let result = match cli.command {
        Command::Identify(a) => cmd_identify(a),
        Command::Dates(a) => cmd_dates(a, verbose),
        Command::Places(a) => cmd_places(a),
        Command::Map(a) => cmd_map(a),
        Command::TrainProfile(a) => cmd_train(a),
        Command::ProposeStopwords(a) => cmd_propose(a),
    };
    match result {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Partial) => ExitCode::from(1),
        Err(ConfigError(e)) => {
            eprintln!("multiex: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn open_out(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

/// Run `f` over `paths` on up to `jobs` threads, keeping input order.
fn process_all<T, F>(paths: &[PathBuf], jobs: usize, f: F) -> ConfigResult<Vec<Result<T>>>
where
    T: Send,
    F: Fn(&Path) -> Result<T> + Sync,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .context("starting worker threads")?;
    Ok(pool.install(|| paths.par_iter().map(|p| f(p)).collect()))
}

fn load_profiles(dir: &Path) -> ConfigResult<Vec<LangEncProfile>> {
    if !dir.is_dir() {
        return Err(anyhow::anyhow!("profile directory {} not found", dir.display()).into());
    }
    let profiles = load_profile_dir(dir).with_context(|| format!("loading profiles from {}", dir.display()))?;
    if profiles.is_empty() {
        return Err(anyhow::anyhow!("no .profile files in {}", dir.display()).into());
    }
    Ok(profiles)
}

fn labeler(args: &LabelArgs) -> ConfigResult<Labeler> {
    if let Some(lang) = &args.lang {
        LangEncLabel::new(lang, Encoding::Utf8)?;
    }
    Ok(Labeler {
        language: args.lang.clone(),
        encoding: args.encoding,
        profiles: args.profiles.as_deref().map(load_profiles).transpose()?,
    })
}

fn cmd_identify(a: IdentifyArgs) -> ConfigResult<Outcome> {
    let profiles = load_profiles(&a.profiles)?;
    let mut out = open_out(a.out.as_deref())?;
    let mut outcome = Outcome::Ok;
    for path in &a.paths {
        let ranked = fs::read(path)
            .with_context(|| format!("reading {}", path.display()))
            .and_then(|bytes| identify(&profiles, &bytes).with_context(|| path.display().to_string()));
        match ranked {
            Ok(ranked) => {
                for r in ranked.iter().take(a.top.max(1)) {
                    writeln!(
                        out,
                        "{}\t{}\t{}\t{:.4}",
                        path.display(),
                        r.label.language(),
                        r.label.encoding(),
                        r.score
                    )?;
                }
            }
            Err(e) => {
                eprintln!("multiex: {e:#}");
                outcome = Outcome::Partial;
            }
        }
    }
    out.flush()?;
    Ok(outcome)
}

fn document_record(doc: &AnnotatedDocument) -> Record {
    Record::Document {
        path: doc.path.clone(),
        language: doc.label.language.clone(),
        encoding: Some(doc.label.encoding.to_string()),
        score: doc.label.score,
        date_order: doc.dates.as_ref().map(|d| d.order),
    }
}

/// Write one document in the inline format. Several documents are
/// separated by `==> path <==` header lines.
fn write_inline(
    out: &mut dyn Write,
    doc: &AnnotatedDocument,
    gazetteer: Option<&multiex::gazetteer::GazetteerIndex>,
    with_header: bool,
) -> Result<()> {
    let spans = inline_spans(doc, gazetteer);
    let text = annotate_inline(&doc.text, &spans)?;
    if with_header {
        writeln!(out, "==> {} <==", doc.path)?;
    }
    out.write_all(text.as_bytes())?;
    if with_header && !text.ends_with('\n') {
        writeln!(out)?;
    }
    Ok(())
}

fn cmd_dates(a: DatesArgs, verbose: bool) -> ConfigResult<Outcome> {
    let labeler = labeler(&a.label)?;
    let lexicons = match (&a.lexicon, &a.lexicon_dir) {
        (Some(file), _) => Lexicons::Single(Box::new(
            DateLexicon::load(file).with_context(|| format!("loading lexicon {}", file.display()))?,
        )),
        (None, Some(dir)) => Lexicons::load_dir(dir)?,
        (None, None) => return Err(anyhow::anyhow!("pass --lexicon FILE or --lexicon-dir DIR").into()),
    };
    let opts = DateOptions {
        default_order: a.default_order.map(|o| match o {
            OrderArg::Dmy => Order::Dmy,
            OrderArg::Mdy => Order::Mdy,
        }),
        reject_two_digit_years: a.reject_two_digit_years,
        reference: a.reference,
    };
    let docs = process_all(&a.paths, a.output.jobs, |p| {
        annotate_dates(p, &labeler, &lexicons, &opts)
    })?;
    let mut out = open_out(a.output.out.as_deref())?;
    let mut outcome = Outcome::Ok;
    let many = a.paths.len() > 1;
    for doc in docs {
        let doc = match doc {
            Ok(d) => d,
            Err(e) => {
                eprintln!("multiex: {e:#}");
                outcome = Outcome::Partial;
                continue;
            }
        };
        let dates = doc.dates.as_ref().expect("date pass ran");
        if verbose {
            for r in &dates.rejected {
                eprintln!("{}: rejected {r}", doc.path);
            }
        }
        match a.output.format {
            Format::Standoff => {
                writeln!(out, "{}", document_record(&doc).to_json_line())?;
                for m in &dates.matches {
                    writeln!(out, "{}", Record::date(&doc.path, m).to_json_line())?;
                }
            }
            Format::Inline => write_inline(&mut out, &doc, None, many)?,
        }
    }
    out.flush()?;
    Ok(outcome)
}

fn cmd_places(a: PlacesArgs) -> ConfigResult<Outcome> {
    let labeler = labeler(&a.label)?;
    let opts = LoadOptions {
        size_filter: a.max_size_class_outside.clone(),
    };
    let gazetteer = load_gazetteer(&a.gazetteer, &opts)?;
    let language = a.label.lang.clone().unwrap_or_default();
    let stop_words = match &a.stopwords {
        Some(p) => load_stop_words(p, &language)?,
        None => GeoStopList::default(),
    };
    let triggers = match &a.triggers {
        Some(p) => load_triggers(p)?,
        None => TriggerTable::default(),
    };
    let res = PlaceResources {
        gazetteer,
        stop_words,
        triggers,
    };
    let docs = process_all(&a.paths, a.output.jobs, |p| annotate_places(p, &labeler, &res))?;
    let mut out = open_out(a.output.out.as_deref())?;
    let mut outcome = Outcome::Ok;
    let many = a.paths.len() > 1;
    let mut totals: BTreeMap<CountryCode, usize> = BTreeMap::new();
    for doc in docs {
        let doc = match doc {
            Ok(d) => d,
            Err(e) => {
                eprintln!("multiex: {e:#}");
                outcome = Outcome::Partial;
                continue;
            }
        };
        for t in &doc.tallies {
            *totals.entry(t.country).or_default() += t.hits;
        }
        match a.output.format {
            Format::Standoff => {
                writeln!(out, "{}", document_record(&doc).to_json_line())?;
                for m in &doc.places {
                    writeln!(out, "{}", Record::place(&doc.path, m, &res.gazetteer).to_json_line())?;
                }
                for t in &doc.tallies {
                    writeln!(out, "{}", Record::tally(Some(&doc.path), t).to_json_line())?;
                }
            }
            Format::Inline => write_inline(&mut out, &doc, Some(&res.gazetteer), many)?,
        }
    }
    if many && a.output.format == Format::Standoff {
        for t in tallies_from_counts(&totals) {
            writeln!(out, "{}", Record::tally(None, &t).to_json_line())?;
        }
    }
    out.flush()?;
    Ok(outcome)
}

/// Tallies and place mentions gathered from standoff files.
#[derive(Debug, Default)]
pub struct MapInput {
    pub counts: BTreeMap<CountryCode, usize>,
    pub places: Vec<PlaceMention>,
    pub records: usize,
}

/// Read `places` standoff output. Per-document tallies are summed; a file's
/// collection tallies are used only when it has no per-document ones.
pub fn read_map_input(paths: &[PathBuf]) -> Result<MapInput> {
    let mut input = MapInput::default();
    for path in paths {
        let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
        let mut per_doc = BTreeMap::new();
        let mut collection = BTreeMap::new();
        for (i, line) in BufReader::new(file).lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let rec: Record =
                serde_json::from_str(&line).with_context(|| format!("{}:{}: bad record", path.display(), i + 1))?;
            input.records += 1;
            match rec {
                Record::Tally {
                    path: Some(_),
                    country,
                    hits,
                    ..
                } => *per_doc.entry(country).or_insert(0) += hits,
                Record::Tally {
                    path: None,
                    country,
                    hits,
                    ..
                } => *collection.entry(country).or_insert(0) += hits,
                Record::Place {
                    place_id: Some(id),
                    name,
                    country: Some(country),
                    latitude: Some(latitude),
                    longitude: Some(longitude),
                    ..
                } => input.places.push(PlaceMention {
                    id,
                    name: name.unwrap_or_default(),
                    country,
                    latitude,
                    longitude,
                }),
                _ => {}
            }
        }
        let use_counts = if per_doc.is_empty() { collection } else { per_doc };
        for (c, n) in use_counts {
            *input.counts.entry(c).or_insert(0) += n;
        }
    }
    Ok(input)
}

fn cmd_map(a: MapArgs) -> ConfigResult<Outcome> {
    let outline = WorldOutline::load(&a.outline)?;
    let input = read_map_input(&a.annotations)?;
    if input.records == 0 {
        return Err(anyhow::anyhow!("no annotation records in the input").into());
    }
    let style = MapStyle {
        width: a.width,
        height: a.height,
        r_min: a.r_min,
        r_max: a.r_max,
        bucket_range: match a.bucket_range {
            RangeArg::Observed => BucketRange::ObservedMax,
            RangeArg::Full => BucketRange::Full,
        },
        ..MapStyle::default()
    };
    let tallies = tallies_from_counts(&input.counts);
    let map = render_svg(&tallies, &input.places, &outline, &style)?;
    for d in &map.diagnostics {
        eprintln!("multiex: {d}");
    }
    let mut out = open_out(a.out.as_deref())?;
    out.write_all(map.svg.as_bytes())?;
    out.flush()?;
    Ok(Outcome::Ok)
}

fn cmd_train(a: TrainArgs) -> ConfigResult<Outcome> {
    let label = LangEncLabel::new(&a.lang, a.encoding)?;
    let mut corpus = Vec::new();
    for p in &a.corpus {
        let bytes = fs::read(p).with_context(|| format!("reading {}", p.display()))?;
        decode_to_utf8(&bytes, a.encoding).with_context(|| format!("{} is not valid {}", p.display(), a.encoding))?;
        corpus.extend_from_slice(&bytes);
        corpus.push(b'\n');
    }
    let profile = train_profile(&corpus, label)?;
    let file = File::create(&a.out).with_context(|| format!("creating {}", a.out.display()))?;
    let mut w = BufWriter::new(file);
    profile.write_to(&mut w)?;
    w.flush()?;
    Ok(Outcome::Ok)
}

fn cmd_propose(a: ProposeArgs) -> ConfigResult<Outcome> {
    let gazetteer = load_gazetteer(&a.gazetteer, &LoadOptions::default())?;
    let file = File::open(&a.frequency_list).with_context(|| format!("opening {}", a.frequency_list.display()))?;
    let mut words = Vec::new();
    for line in BufReader::new(file).lines() {
        let line = line?;
        if let Some(w) = line.split('\t').next().map(str::trim).filter(|w| !w.is_empty()) {
            words.push(w.to_string());
        }
    }
    if words.is_empty() {
        return Err(anyhow::anyhow!("frequency list {} is empty", a.frequency_list.display()).into());
    }
    let mut out = open_out(a.out.as_deref())?;
    writeln!(out, "# surface\tfrequency rank\tword")?;
    for p in propose_stop_words(&gazetteer, &words, a.top) {
        writeln!(out, "{}\t{}\t{}", p.surface, p.rank, p.word)?;
    }
    out.flush()?;
    Ok(Outcome::Ok)
}
