//! Embedded reference datasets: every numeric table the source study
//! published, compiled into the binary as JSON data files and exposed by
//! name. The same JSON schema (`{name, provenance, kind, payload}`) is
//! accepted for user-supplied override files, so tests never touch the
//! network and the CLI can swap datasets in from a directory.

use std::sync::LazyLock;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::{alphabet_by_name, CorpusError, Distribution, FrequencyTable};
use crate::laws::RecordGridEntry;
use crate::ranking::{RankError, RankTable};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TableError {
    #[error("unknown table {0:?}")]
    UnknownTable(String),
    #[error("table {name} is malformed: {reason}")]
    Malformed { name: String, reason: String },
    #[error("table {name} has kind {kind}, which does not support this view")]
    WrongKind { name: String, kind: String },
}

/// One row of a letter-frequency table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FreqRow {
    pub symbol: char,
    pub percent: f64,
    /// Garbled in the source and reconstructed; excluded from hard checks.
    #[serde(default, skip_serializing_if = "is_false")]
    pub uncertain: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// One entry of a numeric distribution table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistEntry {
    pub value: u32,
    pub percent: f64,
    #[serde(default, skip_serializing_if = "is_false")]
    pub uncertain: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// One row of the record-grid table. `percent` is the printed value,
/// truncated to three decimals in the source.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecordRow {
    pub side: usize,
    pub min_black: usize,
    pub percent: f64,
    pub count_known: usize,
}

/// One labeled value of a ratio set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioRow {
    pub label: String,
    pub value: f64,
}

fn is_false(b: &bool) -> bool {
    !*b
}

/// Kind-tagged payload of a named table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "payload", rename_all = "snake_case")]
pub enum TableData {
    RankList {
        symbols: Vec<char>,
    },
    LetterFreq {
        alphabet: String,
        rows: Vec<FreqRow>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        printed_vowel_percent: Option<f64>,
        #[serde(default, skip_serializing_if = "is_false")]
        printed_vowel_percent_uncertain: bool,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        printed_consonant_percent: Option<f64>,
    },
    Distribution {
        entries: Vec<DistEntry>,
        /// Mean as printed in the source.
        mean: f64,
    },
    RecordGrids {
        rows: Vec<RecordRow>,
    },
    RatioSet {
        rows: Vec<RatioRow>,
    },
    GroupedRanks {
        groups: Vec<Vec<char>>,
    },
}

impl TableData {
    pub fn kind_name(&self) -> &'static str {
        match self {
            TableData::RankList { .. } => "rank_list",
            TableData::LetterFreq { .. } => "letter_freq",
            TableData::Distribution { .. } => "distribution",
            TableData::RecordGrids { .. } => "record_grids",
            TableData::RatioSet { .. } => "ratio_set",
            TableData::GroupedRanks { .. } => "grouped_ranks",
        }
    }
}

/// A named, provenance-tagged dataset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedTable {
    pub name: String,
    pub provenance: String,
    #[serde(flatten)]
    pub data: TableData,
}

impl NamedTable {
    /// Parse one table from its JSON document and validate it.
    pub fn from_json(json: &str) -> Result<Self, TableError> {
        let table: NamedTable = serde_json::from_str(json).map_err(|e| TableError::Malformed {
            name: "<unparsed>".into(),
            reason: e.to_string(),
        })?;
        table.validate()?;
        Ok(table)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serializes")
    }

    pub fn kind_name(&self) -> &'static str {
        self.data.kind_name()
    }

    /// Structural checks: non-empty name and provenance, weights in range,
    /// and percentage tables summing to 100 within 0.1 (guards against
    /// transcription typos).
    pub fn validate(&self) -> Result<(), TableError> {
        let fail = |reason: String| {
            Err(TableError::Malformed {
                name: self.name.clone(),
                reason,
            })
        };
        if self.name.trim().is_empty() {
            return fail("empty name".into());
        }
        if self.provenance.trim().is_empty() {
            return fail("empty provenance".into());
        }
        match &self.data {
            TableData::RankList { symbols } => {
                if symbols.is_empty() {
                    return fail("empty rank list".into());
                }
                let mut seen = std::collections::HashSet::new();
                for s in symbols {
                    if !seen.insert(s) {
                        return fail(format!("duplicate symbol {s:?}"));
                    }
                }
            }
            TableData::LetterFreq { alphabet, rows, .. } => {
                let profile = match alphabet_by_name(alphabet) {
                    Some(p) => p,
                    None => return fail(format!("unknown alphabet profile {alphabet:?}")),
                };
                let total: f64 = rows.iter().map(|r| r.percent).sum();
                if (total - 100.0).abs() > 0.1 {
                    return fail(format!("letter percentages sum to {total}, not 100"));
                }
                for row in rows {
                    if row.percent < 0.0 {
                        return fail(format!("negative percentage for {:?}", row.symbol));
                    }
                    if !profile.contains(row.symbol) {
                        return fail(format!(
                            "symbol {:?} not in alphabet {alphabet}",
                            row.symbol
                        ));
                    }
                }
            }
            TableData::Distribution { entries, .. } => {
                let total: f64 = entries.iter().map(|e| e.percent).sum();
                if (total - 100.0).abs() > 0.1 {
                    return fail(format!("distribution percentages sum to {total}, not 100"));
                }
                if entries.iter().any(|e| e.percent < 0.0) {
                    return fail("negative proportion".into());
                }
            }
            TableData::RecordGrids { rows } => {
                if rows.is_empty() {
                    return fail("empty record table".into());
                }
                for r in rows {
                    if r.side == 0 || r.min_black > r.side * r.side {
                        return fail(format!("impossible record row for side {}", r.side));
                    }
                }
            }
            TableData::RatioSet { rows } => {
                if rows.is_empty() {
                    return fail("empty ratio set".into());
                }
            }
            TableData::GroupedRanks { groups } => {
                if groups.is_empty() || groups.iter().any(|g| g.is_empty()) {
                    return fail("empty group".into());
                }
                let mut seen = std::collections::HashSet::new();
                for s in groups.iter().flatten() {
                    if !seen.insert(s) {
                        return fail(format!("symbol {s:?} in two groups"));
                    }
                }
            }
        }
        Ok(())
    }

    /// View a rank_list table as a rank table.
    pub fn as_rank_table(&self) -> Result<RankTable<char>, TableError> {
        match &self.data {
            TableData::RankList { symbols } => {
                RankTable::from_order(symbols.iter().copied()).map_err(|e| self.corrupt(&e))
            }
            _ => Err(self.wrong_kind()),
        }
    }

    /// View a letter_freq table as a frequency table over its profile.
    pub fn as_frequency_table(&self) -> Result<FrequencyTable, TableError> {
        match &self.data {
            TableData::LetterFreq {
                alphabet, rows, ..
            } => {
                let profile = alphabet_by_name(alphabet).ok_or_else(|| self.wrong_kind())?;
                let pairs: Vec<(char, f64)> =
                    rows.iter().map(|r| (r.symbol, r.percent)).collect();
                FrequencyTable::from_weight_rows(profile, &pairs).map_err(|e| self.corrupt(&e))
            }
            _ => Err(self.wrong_kind()),
        }
    }

    /// View a distribution table as a renormalized numeric distribution.
    pub fn as_distribution(&self) -> Result<Distribution, TableError> {
        match &self.data {
            TableData::Distribution { entries, .. } => {
                let pairs: Vec<(u32, f64)> =
                    entries.iter().map(|e| (e.value, e.percent)).collect();
                Distribution::from_masses(&pairs).map_err(|e| self.corrupt(&e))
            }
            _ => Err(self.wrong_kind()),
        }
    }

    /// Mean as printed in the source, for distribution tables.
    pub fn printed_mean(&self) -> Result<f64, TableError> {
        match &self.data {
            TableData::Distribution { mean, .. } => Ok(*mean),
            _ => Err(self.wrong_kind()),
        }
    }

    /// View a record_grids table as typed rows with exact printed
    /// percentages (milli-percent rationals).
    pub fn as_record_entries(&self) -> Result<Vec<RecordGridEntry>, TableError> {
        match &self.data {
            TableData::RecordGrids { rows } => Ok(rows
                .iter()
                .map(|r| RecordGridEntry {
                    side: r.side,
                    min_black: r.min_black,
                    percentage: Ratio::new((r.percent * 1000.0).round() as i64, 1000),
                    count_known: r.count_known,
                })
                .collect()),
            _ => Err(self.wrong_kind()),
        }
    }

    /// View a grouped_ranks table as its groups.
    pub fn as_groups(&self) -> Result<&[Vec<char>], TableError> {
        match &self.data {
            TableData::GroupedRanks { groups } => Ok(groups),
            _ => Err(self.wrong_kind()),
        }
    }

    /// Value of a labeled row in a ratio_set table.
    pub fn ratio(&self, label: &str) -> Result<f64, TableError> {
        match &self.data {
            TableData::RatioSet { rows } => rows
                .iter()
                .find(|r| r.label == label)
                .map(|r| r.value)
                .ok_or_else(|| TableError::Malformed {
                    name: self.name.clone(),
                    reason: format!("no row labeled {label:?}"),
                }),
            _ => Err(self.wrong_kind()),
        }
    }

    fn wrong_kind(&self) -> TableError {
        TableError::WrongKind {
            name: self.name.clone(),
            kind: self.kind_name().into(),
        }
    }

    fn corrupt(&self, err: &dyn std::fmt::Display) -> TableError {
        TableError::Malformed {
            name: self.name.clone(),
            reason: err.to_string(),
        }
    }
}

macro_rules! embedded_tables {
    ($($file:literal),+ $(,)?) => {
        [$(include_str!(concat!("../data/", $file, ".json"))),+]
    };
}

static BUILTIN_JSON: [&str; 14] = embedded_tables![
    "ROMANIAN_RANKS_23",
    "GRID_LETTER_FREQ",
    "GRID_SYLLABLE_DIST",
    "GRID_POS_SHARES",
    "CLUE_LETTER_FREQ",
    "RECORD_GRIDS",
    "JURIDICAL_GROUPS",
    "POETRY_LETTER_FREQ",
    "POETRY_SYLLABLE_DIST",
    "POETRY_LETTERLEN_DIST",
    "POETRY_RATIOS",
    "POETRY_POS_SHARES",
    "POETRY_CASE_DIST",
    "LANGUAGE_CONSTANTS",
];

static BUILTINS: LazyLock<Vec<NamedTable>> = LazyLock::new(|| {
    let mut tables: Vec<NamedTable> = BUILTIN_JSON
        .iter()
        .map(|json| NamedTable::from_json(json).expect("embedded table is valid"))
        .collect();
    tables.sort_by(|a, b| a.name.cmp(&b.name));
    tables
});

/// All embedded tables, sorted by name.
pub fn builtin_tables() -> &'static [NamedTable] {
    &BUILTINS
}

/// Look up an embedded table by its registered name.
pub fn get_table(name: &str) -> Result<&'static NamedTable, TableError> {
    BUILTINS
        .iter()
        .find(|t| t.name == name)
        .ok_or_else(|| TableError::UnknownTable(name.to_string()))
}

/// The record-grid rows, typed for [`crate::laws`].
pub fn record_grids() -> &'static [RecordGridEntry] {
    static ROWS: LazyLock<Vec<RecordGridEntry>> = LazyLock::new(|| {
        get_table("RECORD_GRIDS")
            .expect("embedded record table")
            .as_record_entries()
            .expect("record table is record_grids kind")
    });
    &ROWS
}

impl From<CorpusError> for TableError {
    fn from(err: CorpusError) -> Self {
        TableError::Malformed {
            name: "<conversion>".into(),
            reason: err.to_string(),
        }
    }
}

impl From<RankError> for TableError {
    fn from(err: RankError) -> Self {
        TableError::Malformed {
            name: "<conversion>".into(),
            reason: err.to_string(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_builtins_load_and_validate() {
        let tables = builtin_tables();
        assert_eq!(tables.len(), 14);
        for t in tables {
            t.validate().unwrap();
            assert!(!t.provenance.is_empty());
        }
    }

    #[test]
    fn registered_names_resolve() {
        for name in [
            "ROMANIAN_RANKS_23",
            "GRID_LETTER_FREQ",
            "GRID_SYLLABLE_DIST",
            "GRID_POS_SHARES",
            "CLUE_LETTER_FREQ",
            "RECORD_GRIDS",
            "JURIDICAL_GROUPS",
            "POETRY_LETTER_FREQ",
            "POETRY_SYLLABLE_DIST",
            "POETRY_LETTERLEN_DIST",
            "POETRY_RATIOS",
            "POETRY_POS_SHARES",
            "POETRY_CASE_DIST",
            "LANGUAGE_CONSTANTS",
        ] {
            assert!(get_table(name).is_ok(), "{name} missing");
        }
        assert_eq!(
            get_table("NOPE"),
            Err(TableError::UnknownTable("NOPE".into()))
        );
    }

    #[test]
    fn record_rows_match_expected_shape() {
        let rows = get_table("RECORD_GRIDS").unwrap().as_record_entries().unwrap();
        assert_eq!(rows.len(), 9);
        assert_eq!(rows[0].side, 8);
        assert_eq!(rows[0].min_black, 0);
        assert_eq!(rows[0].count_known, 24);
    }

    #[test]
    fn poetry_ratio_lookup() {
        let t = get_table("POETRY_RATIOS").unwrap();
        assert_eq!(t.ratio("words_per_line").unwrap(), 3.528);
        assert!(t.ratio("nope").is_err());
    }

    #[test]
    fn rank_list_view() {
        let t = get_table("ROMANIAN_RANKS_23").unwrap().as_rank_table().unwrap();
        assert_eq!(t.len(), 23);
        assert_eq!(t.rank_of(&'E'), Some(1));
        assert_eq!(t.rank_of(&'K'), Some(23));
        assert_eq!(t.rank_of(&'P'), Some(13));
    }

    #[test]
    fn letter_freq_views_renormalize() {
        for name in ["GRID_LETTER_FREQ", "CLUE_LETTER_FREQ", "POETRY_LETTER_FREQ"] {
            let freq = get_table(name).unwrap().as_frequency_table().unwrap();
            let sum: f64 = freq.probabilities().unwrap().iter().map(|(_, p)| p).sum();
            assert!((sum - 1.0).abs() < 1e-12, "{name} probabilities sum {sum}");
        }
    }

    #[test]
    fn grid_letter_probabilities_match_the_published_percentages() {
        // The grid table's column sums to exactly 100, so probabilities are
        // the percentages over 100.
        let freq = get_table("GRID_LETTER_FREQ")
            .unwrap()
            .as_frequency_table()
            .unwrap();
        for (sym, expected) in [('A', 0.15741), ('I', 0.12849), ('J', 0.00053), ('K', 0.0)] {
            let p = freq.probability(sym).unwrap();
            assert!(
                (p - expected).abs() < 1e-9,
                "probability of {sym} is {p}, expected {expected}"
            );
        }
    }

    #[test]
    fn distribution_views_renormalize_close_to_printed_totals() {
        for name in [
            "GRID_SYLLABLE_DIST",
            "POETRY_SYLLABLE_DIST",
            "POETRY_LETTERLEN_DIST",
        ] {
            let t = get_table(name).unwrap();
            let d = t.as_distribution().unwrap();
            let sum: f64 = d.entries().iter().map(|(_, p)| p).sum();
            assert!((sum - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn wrong_kind_views_are_rejected() {
        let t = get_table("ROMANIAN_RANKS_23").unwrap();
        assert!(matches!(
            t.as_distribution(),
            Err(TableError::WrongKind { .. })
        ));
        assert!(matches!(t.ratio("x"), Err(TableError::WrongKind { .. })));
    }

    #[test]
    fn json_roundtrip_preserves_tables() {
        for t in builtin_tables() {
            let back = NamedTable::from_json(&t.to_json()).unwrap();
            assert_eq!(&back, t);
        }
    }

    #[test]
    fn validation_catches_bad_sums() {
        let json = r#"{
            "name": "BAD",
            "provenance": "test",
            "kind": "distribution",
            "payload": {"entries": [{"value": 1, "percent": 80.0}], "mean": 1.0}
        }"#;
        assert!(matches!(
            NamedTable::from_json(json),
            Err(TableError::Malformed { .. })
        ));
    }

    #[test]
    fn validation_catches_foreign_symbols() {
        let json = r#"{
            "name": "BAD",
            "provenance": "test",
            "kind": "letter_freq",
            "payload": {"alphabet": "grid23", "rows": [{"symbol": "Ă", "percent": 100.0}]}
        }"#;
        assert!(matches!(
            NamedTable::from_json(json),
            Err(TableError::Malformed { .. })
        ));
    }
}
