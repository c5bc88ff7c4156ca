//! `lexigrid` — batch frontend for crossword-grid analysis and corpus
//! statistics: zone census and word enumeration with closed-form
//! cross-checks, letter/word frequency profiles, rank-deviation against
//! reference rankings, entropy and informational energy, the embedded
//! reference tables, and a regression selfcheck.
//!
//! Exit codes: 0 success, 1 a validation or regression check failed,
//! 2 I/O or parse errors (details on stderr).

mod commands;
mod report;

use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{CliError, Config, CorpusStatsArgs, Outcome};

#[derive(Parser)]
#[command(
    name = "lexigrid",
    version,
    about = "Crossword-grid combinatorics and Romanian corpus statistics"
)]
struct Cli {
    /// Key=value config file; recognized keys: alphabet, max_black_percent.
    /// Command-line flags override it.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a grid file: zone census, word enumeration, count formulas,
    /// bounds, mean word length, black budget
    AnalyzeGrid {
        file: PathBuf,
        /// Budget threshold in percent (default 15)
        #[arg(long, value_name = "PERCENT")]
        max_black_percent: Option<String>,
        /// Emit the machine-readable report
        #[arg(long)]
        json: bool,
    },
    /// Letter, token, length and syllable statistics over corpus files
    CorpusStats {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Alphabet profile: grid23, clue27 or poetry31
        #[arg(long)]
        alphabet: Option<String>,
        /// Files are in the annotated one-token-per-line format
        #[arg(long)]
        annotated: bool,
        /// Per-word syllable overrides (lines `WORD<TAB>count`)
        #[arg(long, value_name = "FILE")]
        syllable_lexicon: Option<PathBuf>,
        /// Report each file separately instead of merging
        #[arg(long)]
        per_file: bool,
        /// Also list the K most frequent tokens
        #[arg(long, value_name = "K")]
        keywords: Option<usize>,
        /// Tokens to exclude from the keyword list, one per line
        #[arg(long, value_name = "FILE")]
        stoplist: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Rank deviation of a corpus against a reference ranking
    Ecart {
        file: PathBuf,
        /// Table name (e.g. ROMANIAN_RANKS_23) or a grouped rank file
        #[arg(long, value_name = "TABLE|FILE")]
        reference: String,
        /// Compare word ranks instead of letter ranks
        #[arg(long)]
        words: bool,
        #[arg(long)]
        alphabet: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// First-order entropy and informational energy of a corpus file
    Infometrics {
        file: PathBuf,
        #[arg(long)]
        alphabet: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// List or dump the embedded reference tables
    Tables {
        #[command(subcommand)]
        command: TablesCommand,
    },
    /// Run the embedded regressions against the published values
    Selfcheck {
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum TablesCommand {
    /// All table names with kind and provenance
    List {
        #[arg(long)]
        json: bool,
    },
    /// One table in text, JSON or CSV form
    Show {
        name: String,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        csv: bool,
    },
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    let config = Config::load(cli.config.as_deref())?;
    match cli.command {
        Command::AnalyzeGrid {
            file,
            max_black_percent,
            json,
        } => commands::analyze_grid(&file, max_black_percent.as_deref(), &config, json),
        Command::CorpusStats {
            files,
            alphabet,
            annotated,
            syllable_lexicon,
            per_file,
            keywords,
            stoplist,
            json,
        } => commands::corpus_stats(
            &CorpusStatsArgs {
                files: &files,
                alphabet: alphabet.as_deref(),
                annotated,
                syllable_lexicon: syllable_lexicon.as_deref(),
                per_file,
                keywords,
                stoplist: stoplist.as_deref(),
                json,
            },
            &config,
        ),
        Command::Ecart {
            file,
            reference,
            words,
            alphabet,
            json,
        } => commands::ecart(&file, &reference, words, alphabet.as_deref(), &config, json),
        Command::Infometrics {
            file,
            alphabet,
            json,
        } => commands::infometrics_cmd(&file, alphabet.as_deref(), &config, json),
        Command::Tables { command } => match command {
            TablesCommand::List { json } => commands::tables_list(json),
            TablesCommand::Show { name, json, csv } => commands::tables_show(&name, json, csv),
        },
        Command::Selfcheck { json } => commands::selfcheck(json),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(outcome.stdout.as_bytes()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::from(outcome.exit as u8)
        }
        Err(err) => {
            eprintln!("lexigrid: {err}");
            ExitCode::from(2)
        }
    }
}
