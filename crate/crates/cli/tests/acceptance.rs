//! CLI acceptance: the selfcheck gate, determinism of every subcommand
//! (byte-identical stdout across consecutive runs), exit-code contracts,
//! and the file-format surfaces (grid files, annotated corpora, syllable
//! lexica, grouped rank files, config, table overrides).

use std::path::Path;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> Output {
    run_with_env(args, &[])
}

fn run_with_env(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_lexigrid"));
    cmd.args(args);
    cmd.env_remove("LEXIGRID_TABLES");
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout is utf-8")
}

#[test]
fn criterion_11_selfcheck_passes_and_every_subcommand_is_deterministic() {
    let selfcheck = run(&["selfcheck"]);
    assert!(
        selfcheck.status.success(),
        "selfcheck failed:\n{}",
        stdout_of(&selfcheck)
    );

    let grid = fixture("grid_5x5.txt");
    let corpus = fixture("corpus_small.txt");
    let annotated = fixture("annotated_small.tsv");
    let lexicon = fixture("lexicon_small.tsv");
    let ranks = fixture("ranks_letters.txt");
    let word_ranks = fixture("ranks_words.txt");
    let stoplist = fixture("stoplist.txt");
    let invocations: Vec<Vec<&str>> = vec![
        vec!["analyze-grid", &grid],
        vec!["analyze-grid", &grid, "--json"],
        vec!["analyze-grid", &grid, "--max-black-percent", "12.5"],
        vec!["corpus-stats", &corpus, "--alphabet", "grid23"],
        vec!["corpus-stats", &corpus, "--alphabet", "clue27", "--json"],
        vec![
            "corpus-stats",
            &corpus,
            "--alphabet",
            "grid23",
            "--syllable-lexicon",
            &lexicon,
            "--keywords",
            "4",
            "--stoplist",
            &stoplist,
        ],
        vec![
            "corpus-stats",
            &annotated,
            "--annotated",
            "--alphabet",
            "poetry31",
        ],
        vec!["corpus-stats", &corpus, &annotated, "--per-file"],
        vec!["ecart", &corpus, "--reference", "ROMANIAN_RANKS_23"],
        vec![
            "ecart",
            &corpus,
            "--reference",
            "ROMANIAN_RANKS_23",
            "--json",
        ],
        vec!["ecart", &corpus, "--reference", &ranks],
        vec!["ecart", &corpus, "--reference", &word_ranks, "--words"],
        vec!["infometrics", &corpus, "--alphabet", "grid23"],
        vec!["infometrics", &corpus, "--alphabet", "poetry31", "--json"],
        vec!["tables", "list"],
        vec!["tables", "list", "--json"],
        vec!["tables", "show", "RECORD_GRIDS"],
        vec!["tables", "show", "RECORD_GRIDS", "--csv"],
        vec!["tables", "show", "POETRY_LETTER_FREQ", "--json"],
        vec!["tables", "show", "JURIDICAL_GROUPS", "--csv"],
        vec!["selfcheck"],
        vec!["selfcheck", "--json"],
    ];
    for args in &invocations {
        let first = run(args);
        let second = run(args);
        assert_eq!(
            first.stdout, second.stdout,
            "stdout differs between runs of {args:?}"
        );
        assert_eq!(
            first.status.code(),
            second.status.code(),
            "exit code differs between runs of {args:?}"
        );
    }
    println!(
        "[PASS] criterion 11: selfcheck exits 0; {} invocations byte-identical across consecutive runs",
        invocations.len()
    );
}

#[test]
fn budget_excess_warns_and_exits_one() {
    let out = run(&["analyze-grid", &fixture("grid_13x13_26.txt")]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout_of(&out);
    assert!(
        text.contains("budget 25 exceeded"),
        "missing budget warning in:\n{text}"
    );
    assert!(text.contains("26 black cells"), "warning names the count");
    // The same run still reports full enumeration counts.
    assert!(text.contains("enumeration:"));
}

#[test]
fn budget_within_limit_exits_zero() {
    let out = run(&["analyze-grid", &fixture("grid_5x5.txt")]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout_of(&out));
}

#[test]
fn spacing_violation_warns_but_still_enumerates() {
    let out = run(&["analyze-grid", &fixture("grid_bad_spacing.txt")]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("warning: counting formulas skipped"));
    assert!(text.contains("enumeration:"));
}

#[test]
fn small_grid_skips_formulas_but_enumerates() {
    let out = run(&["analyze-grid", &fixture("grid_2x4.txt")]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("below 3x3"));
    assert!(text.contains("enumeration:"));
}

#[test]
fn record_grid_csv_has_nine_rows() {
    let out = run(&["tables", "show", "RECORD_GRIDS", "--csv"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("side,min_black,percentage,count_known"),
        "header row"
    );
    let data: Vec<&str> = lines.collect();
    assert_eq!(data.len(), 9, "nine data rows");
    assert!(data.contains(&"11,4,3.305,1"));
    assert!(data.contains(&"16,20,7.812,2"));
}

#[test]
fn missing_input_file_exits_two() {
    let out = run(&["ecart", "missing.txt", "--reference", "ROMANIAN_RANKS_23"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty(), "diagnostic goes to stderr");
    assert!(out.stdout.is_empty(), "no report on stdout");
}

#[test]
fn unparseable_grid_exits_two() {
    let out = run(&["analyze-grid", &fixture("corpus_small.txt")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_table_exits_two() {
    let out = run(&["tables", "show", "NOPE"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("NOPE"), "stderr names the table: {err}");
}

#[test]
fn letter_freq_tables_serve_as_ecart_references() {
    // A frequency table reference is ranked on the fly; the comparison then
    // covers the full 23-letter alphabet.
    let out = run(&[
        "ecart",
        &fixture("corpus_small.txt"),
        "--reference",
        "GRID_LETTER_FREQ",
        "--json",
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&out)).expect("json parses");
    assert_eq!(doc["results"]["ecart"]["n"], 23);
    let bound = doc["results"]["ecart"]["upper_bound"]["value"].as_f64().unwrap();
    let mean = doc["results"]["ecart"]["mean_abs"]["value"].as_f64().unwrap();
    assert!(mean >= 0.0 && mean <= bound);
}

#[test]
fn json_reports_have_sorted_top_level_keys() {
    let out = run(&["analyze-grid", &fixture("grid_5x5.txt"), "--json"]);
    let text = stdout_of(&out);
    let doc: serde_json::Value = serde_json::from_str(&text).expect("json parses");
    for key in ["command", "inputs", "results", "warnings"] {
        assert!(doc.get(key).is_some(), "missing {key}");
    }
    // Keys arrive sorted because the map is ordered; spot-check the raw text.
    let cmd_pos = text.find("\"command\"").unwrap();
    let inputs_pos = text.find("\"inputs\"").unwrap();
    let results_pos = text.find("\"results\"").unwrap();
    let warnings_pos = text.find("\"warnings\"").unwrap();
    assert!(cmd_pos < inputs_pos && inputs_pos < results_pos && results_pos < warnings_pos);
}

#[test]
fn config_file_sets_defaults_and_flags_override() {
    let config = fixture("config_demo.txt");
    // Config alphabet (poetry31) applies when no flag is given.
    let out = run(&[
        "infometrics",
        &fixture("corpus_small.txt"),
        "--config",
        &config,
    ]);
    assert!(stdout_of(&out).contains("alphabet poetry31"));
    // Flag wins over config.
    let out = run(&[
        "infometrics",
        &fixture("corpus_small.txt"),
        "--config",
        &config,
        "--alphabet",
        "grid23",
    ]);
    assert!(stdout_of(&out).contains("alphabet grid23"));
    // Config budget (12.5%) flips the 5x5 demo grid to exceeded: allowed 3.
    let out = run(&[
        "analyze-grid",
        &fixture("grid_5x5.txt"),
        "--config",
        &config,
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout_of(&out).contains("budget 3 exceeded"));
}

#[test]
fn tables_override_directory_adds_and_shadows() {
    let dir = fixture("tables_override");
    let out = run_with_env(&["tables", "show", "DEMO_RANKS"], &[("LEXIGRID_TABLES", &dir)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout_of(&out).contains("local demo override"));
    let listed = run_with_env(&["tables", "list"], &[("LEXIGRID_TABLES", &dir)]);
    assert!(stdout_of(&listed).contains("DEMO_RANKS"));
    // Without the env var the table does not exist.
    let missing = run(&["tables", "show", "DEMO_RANKS"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn word_mode_ecart_runs_against_a_word_rank_file() {
    let out = run(&[
        "ecart",
        &fixture("corpus_small.txt"),
        "--reference",
        &fixture("ranks_words.txt"),
        "--words",
        "--json",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&out)).expect("json");
    let ecart = &doc["results"]["ecart"];
    // Union of the 3-word reference and the corpus vocabulary.
    assert!(ecart["n"].as_u64().unwrap() > 20);
    assert_eq!(doc["results"]["mode"], "words");
}

#[test]
fn annotated_mode_reports_attribute_distributions() {
    let out = run(&[
        "corpus-stats",
        &fixture("annotated_small.tsv"),
        "--annotated",
        "--json",
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&out)).expect("json");
    let attrs = &doc["results"]["stats"]["attributes"];
    assert!(attrs["pos"].is_array());
    let pos: Vec<(&str, f64)> = attrs["pos"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| (v["value"].as_str().unwrap(), v["proportion"].as_f64().unwrap()))
        .collect();
    // 4 nouns, 2 adjectives, 2 verbs of 8 tokens.
    assert!(pos.contains(&("noun", 0.5)));
    assert!(pos.contains(&("adjective", 0.25)));
    assert!(pos.contains(&("verb", 0.25)));
    // case only on the nouns that carry it.
    assert!(attrs["case"].is_array());
}
