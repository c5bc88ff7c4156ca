//! Command implementations. Each command returns the text it wants on
//! stdout plus an exit code: 0 success, 1 a validation or regression check
//! failed, 2 I/O or parse errors (raised as [`CliError`]).

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use lexigrid::corpus::{
    alphabet_by_name, attribute_distribution, parse_annotated, syllable_count_with, vowel_ratio,
    word_tokens, Alphabet, AnnotatedToken, Distribution, FrequencyTable, LengthMeasure,
    SyllableLexicon,
};
use lexigrid::infometrics::{entropy_bits, informational_energy};
use lexigrid::laws::{
    black_budget, length_report, predict_counts, word_bounds, LawsError,
};
use lexigrid::grid::Grid;
use lexigrid::ranking::{
    build_rank_table, expand_groups, parse_grouped_ranks, text_ecart, EcartReport, RankTable,
};
use lexigrid::selfcheck::{all_passed, run_selfcheck};
use lexigrid::tables::{builtin_tables, get_table, NamedTable, TableData};
use num_rational::Ratio;
use serde_json::{json, Value};

use crate::report::{ratio_f64, ratio_value, write_warnings, Report};

/// Errors that map to exit code 2.
#[derive(Debug)]
pub enum CliError {
    Io { path: PathBuf, message: String },
    Input(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Io { path, message } => write!(f, "{}: {message}", path.display()),
            CliError::Input(message) => f.write_str(message),
        }
    }
}

pub struct Outcome {
    pub stdout: String,
    pub exit: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, exit: 0 }
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

/// Defaults that a config file may set; flags always win.
#[derive(Default, Clone)]
pub struct Config {
    pub alphabet: Option<String>,
    pub max_black_percent: Option<Ratio<i64>>,
}

impl Config {
    /// Parse `key = value` lines; `#` comments and blank lines are skipped.
    /// Unknown keys are rejected so typos surface instead of being ignored.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut config = Config::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Input(format!("config line {}: expected key = value", lineno + 1))
            })?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "alphabet" => config.alphabet = Some(value.to_string()),
                "max_black_percent" => {
                    config.max_black_percent = Some(parse_percent(value)?);
                }
                other => {
                    return Err(CliError::Input(format!(
                        "config line {}: unknown key {other:?}",
                        lineno + 1
                    )))
                }
            }
        }
        Ok(config)
    }

    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        match path {
            Some(p) => Config::parse(&read_file(p)?),
            None => Ok(Config::default()),
        }
    }
}

/// Parse a non-negative decimal like `15` or `12.5` into an exact rational
/// in [0, 100].
pub fn parse_percent(s: &str) -> Result<Ratio<i64>, CliError> {
    let err = || CliError::Input(format!("invalid percentage {s:?} (want e.g. 15 or 12.5)"));
    let s = s.trim();
    let (int_part, frac_part) = match s.split_once('.') {
        Some((i, f)) => (i, f),
        None => (s, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err());
    }
    let digits = |part: &str| part.is_empty() || part.bytes().all(|b| b.is_ascii_digit());
    if !digits(int_part) || !digits(frac_part) || frac_part.len() > 9 {
        return Err(err());
    }
    let int: i64 = if int_part.is_empty() {
        0
    } else {
        int_part.parse().map_err(|_| err())?
    };
    let scale = 10i64.pow(frac_part.len() as u32);
    let frac: i64 = if frac_part.is_empty() {
        0
    } else {
        frac_part.parse().map_err(|_| err())?
    };
    let ratio = Ratio::new(int * scale + frac, scale);
    if ratio > Ratio::from_integer(100) {
        return Err(CliError::Input(format!("percentage {s} is over 100")));
    }
    Ok(ratio)
}

fn resolve_alphabet(
    flag: Option<&str>,
    config: &Config,
) -> Result<&'static Alphabet, CliError> {
    let name = flag
        .map(str::to_string)
        .or_else(|| config.alphabet.clone())
        .unwrap_or_else(|| "grid23".to_string());
    alphabet_by_name(&name).ok_or_else(|| {
        CliError::Input(format!(
            "unknown alphabet {name:?} (choose grid23, clue27 or poetry31)"
        ))
    })
}

/// Tables named on the command line resolve against the override directory
/// in `LEXIGRID_TABLES` first, then the embedded set.
fn resolve_table(name: &str) -> Result<NamedTable, CliError> {
    if let Ok(dir) = std::env::var("LEXIGRID_TABLES") {
        let path = Path::new(&dir).join(format!("{name}.json"));
        if path.is_file() {
            let table = NamedTable::from_json(&read_file(&path)?)
                .map_err(|e| CliError::Input(e.to_string()))?;
            if table.name != name {
                return Err(CliError::Input(format!(
                    "override file {} declares name {:?}",
                    path.display(),
                    table.name
                )));
            }
            return Ok(table);
        }
    }
    get_table(name)
        .cloned()
        .map_err(|e| CliError::Input(e.to_string()))
}

/// Every visible table: embedded ones plus override-directory files, the
/// latter replacing or extending by name. Sorted by name.
fn visible_tables() -> Result<Vec<NamedTable>, CliError> {
    let mut by_name: HashMap<String, NamedTable> = builtin_tables()
        .iter()
        .map(|t| (t.name.clone(), t.clone()))
        .collect();
    if let Ok(dir) = std::env::var("LEXIGRID_TABLES") {
        let entries = fs::read_dir(&dir).map_err(|e| CliError::Io {
            path: PathBuf::from(&dir),
            message: e.to_string(),
        })?;
        // Directory order is filesystem-dependent; sort so shadowing between
        // files is deterministic.
        let mut paths: Vec<PathBuf> = Vec::new();
        for entry in entries {
            let entry = entry.map_err(|e| CliError::Io {
                path: PathBuf::from(&dir),
                message: e.to_string(),
            })?;
            let path = entry.path();
            if path.extension().is_some_and(|e| e == "json") {
                paths.push(path);
            }
        }
        paths.sort();
        for path in paths {
            let table = NamedTable::from_json(&read_file(&path)?)
                .map_err(|e| CliError::Input(e.to_string()))?;
            by_name.insert(table.name.clone(), table);
        }
    }
    let mut tables: Vec<NamedTable> = by_name.into_values().collect();
    tables.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(tables)
}

// --- analyze-grid ---------------------------------------------------------

pub fn analyze_grid(
    file: &Path,
    max_black_percent: Option<&str>,
    config: &Config,
    json: bool,
) -> Result<Outcome, CliError> {
    let percent = match max_black_percent {
        Some(s) => parse_percent(s)?,
        None => config
            .max_black_percent
            .unwrap_or_else(|| Ratio::from_integer(15)),
    };
    let text = read_file(file)?;
    let grid = Grid::parse(&text).map_err(|e| CliError::Input(format!("{}: {e}", file.display())))?;

    let mut report = Report::new("analyze-grid", vec![file.display().to_string()]);
    let (n, m, p) = (grid.rows(), grid.cols(), grid.black_count());
    let census = grid.black_census();
    let words = grid.extract_words();
    let spacing = grid.spacing_valid();
    let black_percent = 100.0 * p as f64 / (n * m) as f64;

    report.set(
        "grid",
        json!({
            "rows": n,
            "cols": m,
            "black_cells": p,
            "white_cells": grid.white_count(),
            "black_percent": black_percent,
            "spacing_valid": spacing,
        }),
    );
    report.set(
        "zones",
        json!({
            "corner": census.corner,
            "horizontal_border": census.horizontal_border,
            "vertical_border": census.vertical_border,
            "interior": census.interior,
        }),
    );
    let across_share = 100.0 * words.across.len() as f64 / words.total().max(1) as f64;
    report.set(
        "enumeration",
        json!({
            "total": words.total(),
            "across": words.across.len(),
            "down": words.down.len(),
            "difference": words.difference(),
            "across_share_percent": across_share,
        }),
    );

    let formulas = if !spacing {
        report.warn("counting formulas skipped: adjacent black cells; enumeration is authoritative");
        None
    } else {
        match predict_counts(n, m, &census) {
            Ok(p) => Some(p),
            Err(LawsError::DimensionsTooSmall { .. }) => {
                report.warn(format!(
                    "counting formulas skipped: dimensions {n}x{m} below 3x3; enumeration is authoritative"
                ));
                None
            }
            Err(e) => {
                report.warn(format!("counting formulas skipped: {e}"));
                None
            }
        }
    };
    match formulas {
        Some(pred) => {
            let matches = pred.total == words.total()
                && pred.across == words.across.len()
                && pred.down == words.down.len();
            report.set(
                "formulas",
                json!({
                    "total": pred.total,
                    "across": pred.across,
                    "down": pred.down,
                    "difference": pred.difference,
                    "matches_enumeration": matches,
                }),
            );
            if !matches {
                report.warn("formula counts disagree with enumeration");
            }
        }
        None => report.set("formulas", Value::Null),
    }

    let (min_words, max_words) = word_bounds(n, m, p);
    report.set("bounds", json!({"min_words": min_words, "max_words": max_words}));

    match length_report(&grid, &words) {
        Ok(len) => report.set(
            "length",
            json!({
                "letter_slots": len.letter_slots,
                "word_count": len.word_count,
                "mean_length": ratio_value(len.mean_length),
                "lower_bound": ratio_value(len.lower_bound),
            }),
        ),
        Err(e) => {
            report.warn(format!("length report unavailable: {e}"));
            report.set("length", Value::Null);
        }
    }

    let allowed = black_budget(n, m, percent);
    let within = (p as i64) <= allowed;
    report.set(
        "budget",
        json!({
            "percent": ratio_value(percent),
            "allowed": allowed,
            "used": p,
            "within": within,
        }),
    );
    if !within {
        report.warn(format!("budget {allowed} exceeded ({p} black cells)"));
    }

    let exit = if within { 0 } else { 1 };
    if json {
        return Ok(Outcome { stdout: report.to_json(), exit });
    }

    let mut out = String::new();
    let _ = writeln!(
        out,
        "grid {}: {n}x{m}, {p} black cells ({black_percent:.3}%), spacing {}",
        file.display(),
        if spacing { "valid" } else { "INVALID" }
    );
    let _ = writeln!(
        out,
        "zones: corner {} | top/bottom border {} | left/right border {} | interior {}",
        census.corner, census.horizontal_border, census.vertical_border, census.interior
    );
    let _ = writeln!(
        out,
        "enumeration: {} words | {} across | {} down | difference {} | across share {:.3}%",
        words.total(),
        words.across.len(),
        words.down.len(),
        words.difference(),
        across_share
    );
    match formulas {
        Some(pred) => {
            let _ = writeln!(
                out,
                "formulas: {} words | {} across | {} down | difference {} | {}",
                pred.total,
                pred.across,
                pred.down,
                pred.difference,
                if pred.total == words.total() {
                    "agree with enumeration"
                } else {
                    "DISAGREE with enumeration"
                }
            );
        }
        None => {
            let _ = writeln!(out, "formulas: skipped (see warnings)");
        }
    }
    let _ = writeln!(out, "word count bounds: [{min_words}, {max_words}]");
    if let Ok(len) = length_report(&grid, &words) {
        let _ = writeln!(
            out,
            "letters: {} slots | mean word length {:.3} (= {}/{}) | lower bound {:.3}",
            len.letter_slots,
            ratio_f64(len.mean_length),
            len.mean_length.numer(),
            len.mean_length.denom(),
            ratio_f64(len.lower_bound)
        );
    }
    let _ = writeln!(
        out,
        "budget at {:.3}%: {} allowed, {} used | {}",
        ratio_f64(percent),
        allowed,
        p,
        if within { "within budget" } else { "EXCEEDED" }
    );
    write_warnings(&mut out, &report.warnings);
    Ok(Outcome { stdout: out, exit })
}

// --- corpus-stats ---------------------------------------------------------

pub struct CorpusStatsArgs<'a> {
    pub files: &'a [PathBuf],
    pub alphabet: Option<&'a str>,
    pub annotated: bool,
    pub syllable_lexicon: Option<&'a Path>,
    pub per_file: bool,
    pub keywords: Option<usize>,
    pub stoplist: Option<&'a Path>,
    pub json: bool,
}

struct FileStats {
    freq: FrequencyTable,
    tokens: Vec<String>,
    annotated: Vec<AnnotatedToken>,
}

fn gather_file(
    path: &Path,
    alphabet: &'static Alphabet,
    annotated: bool,
) -> Result<FileStats, CliError> {
    let text = read_file(path)?;
    if annotated {
        let tokens = parse_annotated(&text)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        let mut freq = FrequencyTable::from_text("", alphabet);
        let mut words = Vec::new();
        for t in &tokens {
            freq.merge(&FrequencyTable::from_text(&t.surface, alphabet));
            words.extend(word_tokens(&t.surface, alphabet));
        }
        Ok(FileStats {
            freq,
            tokens: words,
            annotated: tokens,
        })
    } else {
        Ok(FileStats {
            freq: FrequencyTable::from_text(&text, alphabet),
            tokens: word_tokens(&text, alphabet),
            annotated: Vec::new(),
        })
    }
}

fn distribution_json(dist: &Distribution) -> Value {
    json!({
        "entries": dist
            .entries()
            .iter()
            .map(|&(v, p)| json!({"value": v, "proportion": p}))
            .collect::<Vec<_>>(),
        "mean": dist.mean(),
    })
}

fn stats_json(
    stats: &FileStats,
    alphabet: &'static Alphabet,
    lexicon: Option<&SyllableLexicon>,
    keywords: Option<usize>,
    stoplist: &HashSet<String>,
    warnings: &mut Vec<String>,
) -> Value {
    let mut result = serde_json::Map::new();
    let freq = &stats.freq;
    let mut letters = serde_json::Map::new();
    letters.insert("total".into(), json!(freq.total()));
    letters.insert("discarded".into(), json!(freq.discarded()));
    if freq.total() > 0.0 {
        let rows: Vec<Value> = freq
            .weighted_symbols()
            .iter()
            .map(|&(sym, count)| {
                json!({
                    "symbol": sym.to_string(),
                    "count": count,
                    "percent": 100.0 * count / freq.total(),
                })
            })
            .collect();
        letters.insert("rows".into(), Value::Array(rows));
        letters.insert(
            "vowel_percent".into(),
            json!(vowel_ratio(freq).expect("non-empty table")),
        );
        letters.insert(
            "consonant_percent".into(),
            json!(100.0 - vowel_ratio(freq).expect("non-empty table")),
        );
    } else {
        warnings.push("no letters found under this alphabet".into());
    }
    result.insert("letters".into(), Value::Object(letters));

    let distinct: HashSet<&String> = stats.tokens.iter().collect();
    result.insert(
        "tokens".into(),
        json!({"count": stats.tokens.len(), "distinct": distinct.len()}),
    );

    if !stats.tokens.is_empty() {
        let letters_dist = lexigrid::corpus::length_distribution(
            &stats.tokens,
            LengthMeasure::Letters,
            alphabet,
            lexicon,
        )
        .expect("non-empty token list");
        result.insert("length_letters".into(), distribution_json(&letters_dist));
        let syll_dist = lexigrid::corpus::length_distribution(
            &stats.tokens,
            LengthMeasure::Syllables,
            alphabet,
            lexicon,
        )
        .expect("non-empty token list");
        let vowelless = stats
            .tokens
            .iter()
            .filter(|t| syllable_count_with(t, alphabet, lexicon).vowelless)
            .count();
        let mut syll = distribution_json(&syll_dist);
        if let Value::Object(map) = &mut syll {
            map.insert("vowelless_tokens".into(), json!(vowelless));
        }
        result.insert("length_syllables".into(), syll);
        if vowelless > 0 {
            warnings.push(format!(
                "{vowelless} consonant-only tokens counted as one syllable-slot each"
            ));
        }
        // Informational cross-check only: mean letters per word divided by
        // mean syllables per word. Not an identity, so never asserted.
        if syll_dist.mean() > 0.0 {
            result.insert(
                "letters_per_syllable_derived".into(),
                json!(letters_dist.mean() / syll_dist.mean()),
            );
        }
    }

    if let Some(k) = keywords {
        let top = lexigrid::corpus::keyword_top_k(&stats.tokens, k, stoplist);
        result.insert("keywords".into(), json!(top));
    }

    if !stats.annotated.is_empty() {
        let mut keys: Vec<String> = stats
            .annotated
            .iter()
            .flat_map(|t| t.attributes.keys().cloned())
            .collect();
        keys.sort();
        keys.dedup();
        let mut attrs = serde_json::Map::new();
        for key in keys {
            let dist = attribute_distribution(&stats.annotated, &key)
                .expect("key collected from the tokens themselves");
            attrs.insert(
                key,
                Value::Array(
                    dist.into_iter()
                        .map(|(v, p)| json!({"value": v, "proportion": p}))
                        .collect(),
                ),
            );
        }
        result.insert("attributes".into(), Value::Object(attrs));
    }
    Value::Object(result)
}

/// Counts are carried as f64 (they merge with percentage-weighted tables);
/// print them as integers whenever they are whole.
fn fmt_count(x: f64) -> String {
    if x.fract() == 0.0 && x.abs() < 9e15 {
        format!("{}", x as i64)
    } else {
        format!("{x:.3}")
    }
}

fn stats_text(out: &mut String, label: &str, value: &Value) {
    let letters = &value["letters"];
    let _ = writeln!(
        out,
        "{label}: {} letters ({} discarded)",
        fmt_count(letters["total"].as_f64().unwrap_or(0.0)),
        letters["discarded"]
    );
    if let Some(rows) = letters["rows"].as_array() {
        let mut line = String::from("letters:");
        for row in rows {
            let _ = write!(
                &mut line,
                " {} {:.3}%",
                row["symbol"].as_str().unwrap_or("?"),
                row["percent"].as_f64().unwrap_or(0.0)
            );
        }
        let _ = writeln!(out, "{line}");
        let _ = writeln!(
            out,
            "vowels: {:.3}% | consonants: {:.3}%",
            letters["vowel_percent"].as_f64().unwrap_or(0.0),
            letters["consonant_percent"].as_f64().unwrap_or(0.0)
        );
    }
    let _ = writeln!(
        out,
        "tokens: {} ({} distinct)",
        value["tokens"]["count"], value["tokens"]["distinct"]
    );
    for (field, title) in [
        ("length_letters", "word length in letters"),
        ("length_syllables", "word length in syllables"),
    ] {
        if let Some(entries) = value[field]["entries"].as_array() {
            let mut line = format!("{title}:");
            for e in entries {
                let _ = write!(
                    &mut line,
                    " {}:{:.3}",
                    e["value"],
                    e["proportion"].as_f64().unwrap_or(0.0)
                );
            }
            let _ = write!(
                &mut line,
                " | mean {:.3}",
                value[field]["mean"].as_f64().unwrap_or(0.0)
            );
            if let Some(v) = value[field]["vowelless_tokens"].as_u64() {
                if v > 0 {
                    let _ = write!(&mut line, " | vowelless {v}");
                }
            }
            let _ = writeln!(out, "{line}");
        }
    }
    if let Some(lps) = value["letters_per_syllable_derived"].as_f64() {
        let _ = writeln!(out, "letters/syllable (derived cross-check): {lps:.3}");
    }
    if let Some(kw) = value["keywords"].as_array() {
        let words: Vec<&str> = kw.iter().filter_map(|v| v.as_str()).collect();
        let _ = writeln!(out, "keywords: {}", words.join(", "));
    }
    if let Some(attrs) = value["attributes"].as_object() {
        for (key, dist) in attrs {
            let mut line = format!("attribute {key}:");
            if let Some(entries) = dist.as_array() {
                for e in entries {
                    let _ = write!(
                        &mut line,
                        " {} {:.3}%",
                        e["value"].as_str().unwrap_or("?"),
                        100.0 * e["proportion"].as_f64().unwrap_or(0.0)
                    );
                }
            }
            let _ = writeln!(out, "{line}");
        }
    }
}

pub fn corpus_stats(args: &CorpusStatsArgs<'_>, config: &Config) -> Result<Outcome, CliError> {
    let alphabet = resolve_alphabet(args.alphabet, config)?;
    let lexicon = match args.syllable_lexicon {
        Some(path) => Some(
            SyllableLexicon::parse(&read_file(path)?)
                .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?,
        ),
        None => None,
    };
    let stoplist: HashSet<String> = match args.stoplist {
        Some(path) => read_file(path)?
            .lines()
            .map(|l| l.trim())
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .flat_map(|l| word_tokens(l, alphabet))
            .collect(),
        None => HashSet::new(),
    };

    let mut report = Report::new(
        "corpus-stats",
        args.files.iter().map(|p| p.display().to_string()).collect(),
    );
    report.set("alphabet", json!(alphabet.name()));

    let mut text_sections: Vec<(String, Value)> = Vec::new();
    if args.per_file {
        let mut files = Vec::new();
        for path in args.files {
            let stats = gather_file(path, alphabet, args.annotated)?;
            let mut warnings = Vec::new();
            let value = stats_json(
                &stats,
                alphabet,
                lexicon.as_ref(),
                args.keywords,
                &stoplist,
                &mut warnings,
            );
            for w in warnings {
                report.warn(format!("{}: {w}", path.display()));
            }
            text_sections.push((path.display().to_string(), value.clone()));
            files.push(json!({"file": path.display().to_string(), "stats": value}));
        }
        report.set("files", Value::Array(files));
    } else {
        let mut merged: Option<FileStats> = None;
        for path in args.files {
            let stats = gather_file(path, alphabet, args.annotated)?;
            merged = Some(match merged {
                None => stats,
                Some(mut acc) => {
                    acc.freq.merge(&stats.freq);
                    acc.tokens.extend(stats.tokens);
                    acc.annotated.extend(stats.annotated);
                    acc
                }
            });
        }
        let stats = merged.expect("clap requires at least one file");
        let mut warnings = Vec::new();
        let value = stats_json(
            &stats,
            alphabet,
            lexicon.as_ref(),
            args.keywords,
            &stoplist,
            &mut warnings,
        );
        for w in warnings {
            report.warn(w);
        }
        text_sections.push(("corpus".to_string(), value.clone()));
        report.set("stats", value);
    }

    if args.json {
        return Ok(Outcome::ok(report.to_json()));
    }
    let mut out = String::new();
    let _ = writeln!(
        out,
        "corpus-stats over {} file(s) | alphabet {}",
        args.files.len(),
        alphabet.name()
    );
    for (label, value) in &text_sections {
        stats_text(&mut out, label, value);
    }
    write_warnings(&mut out, &report.warnings);
    Ok(Outcome::ok(out))
}

// --- ecart ----------------------------------------------------------------

enum LetterReference {
    Table(NamedTable),
    File(PathBuf),
}

fn letter_reference_ranks(reference: &str) -> Result<(RankTable<char>, String), CliError> {
    let source = if get_table(reference).is_ok() || !Path::new(reference).exists() {
        LetterReference::Table(resolve_table(reference)?)
    } else {
        LetterReference::File(PathBuf::from(reference))
    };
    match source {
        LetterReference::Table(table) => {
            let ranks = match &table.data {
                TableData::RankList { .. } => table
                    .as_rank_table()
                    .map_err(|e| CliError::Input(e.to_string()))?,
                TableData::LetterFreq { .. } => {
                    let freq = table
                        .as_frequency_table()
                        .map_err(|e| CliError::Input(e.to_string()))?;
                    build_rank_table(&freq.weighted_symbols(), None)
                }
                TableData::GroupedRanks { groups } => {
                    RankTable::from_order(expand_groups(groups))
                        .map_err(|e| CliError::Input(e.to_string()))?
                }
                _ => {
                    return Err(CliError::Input(format!(
                        "table {} has kind {}, which cannot serve as a ranking reference",
                        table.name,
                        table.kind_name()
                    )))
                }
            };
            Ok((ranks, table.name))
        }
        LetterReference::File(path) => {
            let groups = parse_grouped_ranks(&read_file(&path)?)
                .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            let mut chars = Vec::new();
            for sym in expand_groups(&groups) {
                let mut it = sym.chars();
                match (it.next(), it.next()) {
                    (Some(c), None) => chars.push(c),
                    _ => {
                        return Err(CliError::Input(format!(
                            "{}: symbol {sym:?} is not a single letter (use --words for word rankings)",
                            path.display()
                        )))
                    }
                }
            }
            let ranks = RankTable::from_order(chars)
                .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            Ok((ranks, path.display().to_string()))
        }
    }
}

fn ecart_json<S: ToString>(report: &EcartReport<S>) -> Value {
    json!({
        "n": report.n,
        "sum_abs": report.sum_abs(),
        "mean_abs": ratio_value(report.mean_abs),
        "upper_bound": ratio_value(report.upper_bound),
        "per_symbol": report
            .per_symbol
            .iter()
            .enumerate()
            .map(|(i, (sym, dev))| {
                // deviation = reference rank - observed rank
                json!({
                    "symbol": sym.to_string(),
                    "reference_rank": i + 1,
                    "observed_rank": (i as i64 + 1) - dev,
                    "deviation": dev,
                })
            })
            .collect::<Vec<_>>(),
    })
}

fn ecart_text(out: &mut String, results: &Value) {
    let _ = writeln!(
        out,
        "n {} | sum of |deviations| {} | mean {:.6} (= {}) | upper bound {:.6}",
        results["n"],
        results["sum_abs"],
        results["mean_abs"]["value"].as_f64().unwrap_or(f64::NAN),
        results["mean_abs"]["exact"].as_str().unwrap_or("?"),
        results["upper_bound"]["value"].as_f64().unwrap_or(f64::NAN),
    );
    if let Some(rows) = results["per_symbol"].as_array() {
        let mut line = String::from("deviation (reference rank - observed rank):");
        for row in rows {
            let dev = row["deviation"].as_i64().unwrap_or(0);
            let _ = write!(
                &mut line,
                " {} {}{}",
                row["symbol"].as_str().unwrap_or("?"),
                if dev >= 0 { "+" } else { "" },
                dev
            );
        }
        let _ = writeln!(out, "{line}");
    }
}

pub fn ecart(
    file: &Path,
    reference: &str,
    words: bool,
    alphabet_flag: Option<&str>,
    config: &Config,
    json: bool,
) -> Result<Outcome, CliError> {
    let alphabet = resolve_alphabet(alphabet_flag, config)?;
    let text = read_file(file)?;
    let mut report = Report::new("ecart", vec![file.display().to_string()]);
    report.set("alphabet", json!(alphabet.name()));
    report.set("mode", json!(if words { "words" } else { "letters" }));

    let results = if words {
        let path = Path::new(reference);
        if !path.exists() {
            return Err(CliError::Input(format!(
                "word references must be grouped rank files; {reference:?} does not exist"
            )));
        }
        let groups = parse_grouped_ranks(&read_file(path)?)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        let ref_ranks = RankTable::from_order(expand_groups(&groups))
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        report.set("reference", json!(path.display().to_string()));

        let tokens = word_tokens(&text, alphabet);
        if tokens.is_empty() {
            return Err(CliError::Input(format!(
                "{}: no tokens under alphabet {}",
                file.display(),
                alphabet.name()
            )));
        }
        let mut counts: HashMap<String, u64> = HashMap::new();
        for t in &tokens {
            *counts.entry(t.clone()).or_insert(0) += 1;
        }
        let mut weighted: Vec<(String, f64)> = counts
            .into_iter()
            .map(|(t, c)| (t, c as f64))
            .collect();
        weighted.sort_by(|a, b| a.0.cmp(&b.0));
        let observed = build_rank_table(&weighted, Some(&ref_ranks));
        let ecart = text_ecart(&ref_ranks, &observed)
            .map_err(|e| CliError::Input(e.to_string()))?;
        ecart_json(&ecart)
    } else {
        let (ref_ranks, ref_label) = letter_reference_ranks(reference)?;
        report.set("reference", json!(ref_label));
        let freq = FrequencyTable::from_text(&text, alphabet);
        if freq.total() <= 0.0 {
            return Err(CliError::Input(format!(
                "{}: no letters under alphabet {}",
                file.display(),
                alphabet.name()
            )));
        }
        let observed = build_rank_table(&freq.weighted_symbols(), Some(&ref_ranks));
        let ecart = text_ecart(&ref_ranks, &observed)
            .map_err(|e| CliError::Input(e.to_string()))?;
        ecart_json(&ecart)
    };

    report.set("ecart", results.clone());
    if json {
        return Ok(Outcome::ok(report.to_json()));
    }
    let mut out = String::new();
    let _ = writeln!(
        out,
        "ecart {} vs {} ({})",
        file.display(),
        results_reference_label(&report.results),
        if words { "words" } else { "letters" }
    );
    ecart_text(&mut out, &results);
    write_warnings(&mut out, &report.warnings);
    Ok(Outcome::ok(out))
}

fn results_reference_label(results: &Value) -> String {
    results["reference"]
        .as_str()
        .unwrap_or("<reference>")
        .to_string()
}

// --- infometrics ----------------------------------------------------------

pub fn infometrics_cmd(
    file: &Path,
    alphabet_flag: Option<&str>,
    config: &Config,
    json: bool,
) -> Result<Outcome, CliError> {
    let alphabet = resolve_alphabet(alphabet_flag, config)?;
    let text = read_file(file)?;
    let freq = FrequencyTable::from_text(&text, alphabet);
    if freq.total() <= 0.0 {
        return Err(CliError::Input(format!(
            "{}: no letters under alphabet {}",
            file.display(),
            alphabet.name()
        )));
    }
    let entropy = entropy_bits(&freq).expect("non-empty table");
    let energy = informational_energy(&freq).expect("non-empty table");

    let mut report = Report::new("infometrics", vec![file.display().to_string()]);
    report.set("alphabet", json!(alphabet.name()));
    report.set(
        "letters",
        json!({"total": freq.total(), "discarded": freq.discarded()}),
    );
    report.set("entropy_bits", json!(entropy));
    report.set("informational_energy", json!(energy));

    if json {
        return Ok(Outcome::ok(report.to_json()));
    }
    let mut out = String::new();
    let _ = writeln!(
        out,
        "infometrics {} | alphabet {}",
        file.display(),
        alphabet.name()
    );
    let _ = writeln!(
        out,
        "letters: {} ({} discarded)",
        fmt_count(freq.total()),
        freq.discarded()
    );
    let _ = writeln!(out, "entropy: {entropy:.6} bits");
    let _ = writeln!(out, "informational energy: {energy:.6}");
    Ok(Outcome::ok(out))
}

// --- tables ---------------------------------------------------------------

pub fn tables_list(json: bool) -> Result<Outcome, CliError> {
    let tables = visible_tables()?;
    if json {
        let rows: Vec<Value> = tables
            .iter()
            .map(|t| {
                json!({
                    "name": t.name,
                    "kind": t.kind_name(),
                    "provenance": t.provenance,
                })
            })
            .collect();
        let mut out = serde_json::to_string_pretty(&Value::Array(rows)).expect("serializes");
        out.push('\n');
        return Ok(Outcome::ok(out));
    }
    let mut out = String::new();
    for t in &tables {
        let _ = writeln!(out, "{:24} {:14} {}", t.name, t.kind_name(), t.provenance);
    }
    Ok(Outcome::ok(out))
}

fn csv_escape(field: &str) -> String {
    if field.contains(',') || field.contains('"') || field.contains('\n') {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

fn table_csv(table: &NamedTable) -> String {
    let mut out = String::new();
    match &table.data {
        TableData::RankList { symbols } => {
            out.push_str("rank,symbol\n");
            for (i, s) in symbols.iter().enumerate() {
                let _ = writeln!(out, "{},{}", i + 1, s);
            }
        }
        TableData::LetterFreq { rows, .. } => {
            out.push_str("symbol,percent,uncertain\n");
            for r in rows {
                let _ = writeln!(
                    out,
                    "{},{:.3},{}",
                    r.symbol,
                    r.percent,
                    if r.uncertain { "true" } else { "" }
                );
            }
        }
        TableData::Distribution { entries, mean } => {
            out.push_str("value,percent,uncertain\n");
            for e in entries {
                let _ = writeln!(
                    out,
                    "{},{:.3},{}",
                    e.value,
                    e.percent,
                    if e.uncertain { "true" } else { "" }
                );
            }
            let _ = writeln!(out, "mean,{mean:.3},");
        }
        TableData::RecordGrids { rows } => {
            out.push_str("side,min_black,percentage,count_known\n");
            for r in rows {
                let _ = writeln!(
                    out,
                    "{},{},{:.3},{}",
                    r.side, r.min_black, r.percent, r.count_known
                );
            }
        }
        TableData::RatioSet { rows } => {
            out.push_str("label,value\n");
            for r in rows {
                let _ = writeln!(out, "{},{}", csv_escape(&r.label), r.value);
            }
        }
        TableData::GroupedRanks { groups } => {
            out.push_str("group,symbol\n");
            for (i, group) in groups.iter().enumerate() {
                for s in group {
                    let _ = writeln!(out, "{},{}", i + 1, s);
                }
            }
        }
    }
    out
}

fn table_text(table: &NamedTable) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} ({})", table.name, table.kind_name());
    let _ = writeln!(out, "provenance: {}", table.provenance);
    match &table.data {
        TableData::RankList { symbols } => {
            let rendered: Vec<String> = symbols
                .iter()
                .enumerate()
                .map(|(i, s)| format!("{}:{}", i + 1, s))
                .collect();
            let _ = writeln!(out, "ranks: {}", rendered.join(" "));
        }
        TableData::LetterFreq {
            rows,
            printed_vowel_percent,
            printed_consonant_percent,
            ..
        } => {
            for r in rows {
                let _ = writeln!(
                    out,
                    "  {} {:7.3}%{}",
                    r.symbol,
                    r.percent,
                    if r.uncertain { "  (uncertain)" } else { "" }
                );
            }
            if let Some(v) = printed_vowel_percent {
                let _ = writeln!(out, "printed vowel percent: {v:.3}");
            }
            if let Some(c) = printed_consonant_percent {
                let _ = writeln!(out, "printed consonant percent: {c:.3}");
            }
        }
        TableData::Distribution { entries, mean } => {
            for e in entries {
                let _ = writeln!(
                    out,
                    "  {:3} {:7.3}%{}",
                    e.value,
                    e.percent,
                    if e.uncertain { "  (uncertain)" } else { "" }
                );
            }
            let _ = writeln!(out, "mean: {mean:.3}");
        }
        TableData::RecordGrids { rows } => {
            let _ = writeln!(out, "  side  min_black  percentage  count_known");
            for r in rows {
                let _ = writeln!(
                    out,
                    "  {:4}  {:9}  {:9.3}%  {:11}",
                    r.side, r.min_black, r.percent, r.count_known
                );
            }
        }
        TableData::RatioSet { rows } => {
            for r in rows {
                let _ = writeln!(out, "  {:32} {}", r.label, r.value);
            }
        }
        TableData::GroupedRanks { groups } => {
            for (i, group) in groups.iter().enumerate() {
                let symbols: Vec<String> = group.iter().map(char::to_string).collect();
                let _ = writeln!(out, "  {:2}: {}", i + 1, symbols.join(","));
            }
        }
    }
    out
}

pub fn tables_show(name: &str, json: bool, csv: bool) -> Result<Outcome, CliError> {
    if json && csv {
        return Err(CliError::Input("choose one of --json or --csv".into()));
    }
    let table = resolve_table(name)?;
    let stdout = if json {
        let mut s = table.to_json();
        s.push('\n');
        s
    } else if csv {
        table_csv(&table)
    } else {
        table_text(&table)
    };
    Ok(Outcome::ok(stdout))
}

// --- selfcheck --------------------------------------------------------------

pub fn selfcheck(json: bool) -> Result<Outcome, CliError> {
    let checks = run_selfcheck();
    let passed = all_passed(&checks);
    if json {
        let rows: Vec<Value> = checks
            .iter()
            .map(|c| {
                json!({
                    "name": c.name,
                    "detail": c.detail,
                    "passed": c.passed,
                    "gating": c.gating,
                })
            })
            .collect();
        let doc = json!({"checks": rows, "passed": passed});
        let mut out = serde_json::to_string_pretty(&doc).expect("serializes");
        out.push('\n');
        return Ok(Outcome {
            stdout: out,
            exit: if passed { 0 } else { 1 },
        });
    }
    let mut out = String::new();
    let mut failed = 0;
    for c in &checks {
        let tag = if c.passed { "[PASS]" } else { "[FAIL]" };
        if !c.passed && c.gating {
            failed += 1;
        }
        let _ = writeln!(out, "{tag} {}: {}", c.name, c.detail);
    }
    let _ = writeln!(
        out,
        "selfcheck: {} checks, {} passed, {failed} failed",
        checks.len(),
        checks.len() - failed
    );
    Ok(Outcome {
        stdout: out,
        exit: if passed { 0 } else { 1 },
    })
}
