//! Text ingestion and corpus statistics: alphabet profiles with Romanian
//! diacritic folding, letter/word frequency tables, vowel ratios, length and
//! syllable distributions, keyword listing, and attribute distributions over
//! pre-annotated corpora.
//!
//! Three built-in profiles cover the three incompatible alphabets the
//! embedded reference tables use: [`GRID23`] (diacritics folded away, 23
//! letters), [`CLUE27`] (diacritics distinct, 27 letters), and [`POETRY31`]
//! (the full 31-letter alphabet). Both the comma-below (Ș/Ț) and cedilla
//! (Ş/Ţ) encodings are accepted on input; real Romanian text mixes them.

use std::collections::{BTreeMap, HashMap, HashSet};

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CorpusError {
    #[error("empty input: no symbols to measure")]
    EmptyInput,
    #[error("symbol {symbol:?} is not in alphabet {alphabet}")]
    UnknownSymbol { symbol: char, alphabet: String },
    #[error("no token carries attribute {0:?}")]
    MissingKey(String),
    #[error("malformed input at line {line}: {reason}")]
    Malformed { line: usize, reason: String },
}

/// A symbol inventory: ordered letters, a vowel subset, and a fold map from
/// source letters onto inventory symbols.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    name: &'static str,
    symbols: &'static [char],
    vowels: &'static [char],
    folds: &'static [(char, char)],
}

/// 23-letter grid alphabet: Ă and Â fold to A, Î to I, Ș to S, Ț to T; no
/// Q/W/Y; K kept (it only ever counts zero in grids).
pub static GRID23: Alphabet = Alphabet {
    name: "grid23",
    symbols: &[
        'A', 'B', 'C', 'D', 'E', 'F', 'G', 'H', 'I', 'J', 'K', 'L', 'M', 'N', 'O', 'P', 'R',
        'S', 'T', 'U', 'V', 'X', 'Z',
    ],
    vowels: &['A', 'E', 'I', 'O', 'U'],
    folds: &[('Ă', 'A'), ('Â', 'A'), ('Î', 'I'), ('Ș', 'S'), ('Ț', 'T')],
};

/// 27-letter clue alphabet with diacritics distinct, in the clue table's
/// frequency order. M is absent — an artifact of the source table, kept
/// faithfully; M in input text is dropped to the discard tally.
pub static CLUE27: Alphabet = Alphabet {
    name: "clue27",
    symbols: &[
        'E', 'I', 'A', 'R', 'U', 'N', 'T', 'C', 'L', 'O', 'P', 'Ă', 'S', 'Î', 'D', 'Â', 'V',
        'F', 'Ș', 'Ț', 'G', 'B', 'H', 'J', 'Z', 'X', 'K',
    ],
    vowels: &['A', 'E', 'I', 'O', 'U', 'Ă', 'Â', 'Î'],
    folds: &[],
};

/// Full 31-letter Romanian alphabet (diacritics distinct, Q/W/Y/K included),
/// in the poetry table's frequency order.
pub static POETRY31: Alphabet = Alphabet {
    name: "poetry31",
    symbols: &[
        'E', 'I', 'A', 'R', 'N', 'U', 'T', 'L', 'C', 'S', 'O', 'P', 'Ă', 'M', 'D', 'Î', 'V',
        'G', 'B', 'Ș', 'F', 'Z', 'Ț', 'H', 'J', 'X', 'Â', 'K', 'Q', 'Y', 'W',
    ],
    vowels: &['A', 'E', 'I', 'O', 'U', 'Ă', 'Â', 'Î'],
    folds: &[],
};

/// Look up a built-in profile by its lowercase name.
pub fn alphabet_by_name(name: &str) -> Option<&'static Alphabet> {
    match name {
        "grid23" => Some(&GRID23),
        "clue27" => Some(&CLUE27),
        "poetry31" => Some(&POETRY31),
        _ => None,
    }
}

impl Alphabet {
    pub fn name(&self) -> &'static str {
        self.name
    }

    pub fn symbols(&self) -> &'static [char] {
        self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn contains(&self, symbol: char) -> bool {
        self.symbols.contains(&symbol)
    }

    pub fn is_vowel(&self, symbol: char) -> bool {
        self.vowels.contains(&symbol)
    }

    fn index_of(&self, symbol: char) -> Option<usize> {
        self.symbols.iter().position(|&s| s == symbol)
    }

    /// Map one already-uppercased character onto an alphabet symbol, or None
    /// if it falls outside the alphabet after folding.
    fn fold_char(&self, ch: char) -> Option<char> {
        // Cedilla forms normalize to the comma-below letters first.
        let ch = match ch {
            '\u{015E}' => 'Ș',
            '\u{0162}' => 'Ț',
            other => other,
        };
        let ch = self
            .folds
            .iter()
            .find(|(from, _)| *from == ch)
            .map(|(_, to)| *to)
            .unwrap_or(ch);
        self.contains(ch).then_some(ch)
    }
}

/// Normalized symbols plus a tally of everything dropped (any character
/// outside the alphabet, whitespace included).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolStream {
    pub symbols: Vec<char>,
    pub discarded: u64,
}

/// Uppercase, canonicalize cedilla forms to comma-below, apply the profile's
/// fold map, and drop everything outside the alphabet. Idempotent: running
/// it over its own output changes nothing.
pub fn normalize_stream(text: &str, alphabet: &Alphabet) -> SymbolStream {
    let mut symbols = Vec::new();
    let mut discarded = 0;
    for ch in text.chars() {
        for upper in ch.to_uppercase() {
            match alphabet.fold_char(upper) {
                Some(sym) => symbols.push(sym),
                None => discarded += 1,
            }
        }
    }
    SymbolStream { symbols, discarded }
}

/// Split text into maximal runs of alphabet letters (after normalization).
/// Every non-alphabet character separates tokens, hyphens included.
pub fn word_tokens(text: &str, alphabet: &Alphabet) -> Vec<String> {
    let mut tokens = Vec::new();
    let mut current = String::new();
    for ch in text.chars() {
        for upper in ch.to_uppercase() {
            match alphabet.fold_char(upper) {
                Some(sym) => current.push(sym),
                None => {
                    if !current.is_empty() {
                        tokens.push(std::mem::take(&mut current));
                    }
                }
            }
        }
    }
    if !current.is_empty() {
        tokens.push(current);
    }
    tokens
}

/// Symbol weights over an alphabet. Built from text the weights are integer
/// counts; built from a published percentage table they are the printed
/// percentages. Probabilities renormalize by the total either way, and every
/// alphabet symbol is present (absent ones at weight zero, as the rank
/// builder's absent rule requires).
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyTable {
    alphabet: &'static Alphabet,
    weights: Vec<f64>,
    total: f64,
    discarded: u64,
}

impl FrequencyTable {
    /// Count normalized symbols. Symbols outside the alphabet are rejected;
    /// feed this from [`normalize_stream`].
    pub fn from_symbols(
        symbols: &[char],
        alphabet: &'static Alphabet,
    ) -> Result<Self, CorpusError> {
        let mut weights = vec![0.0; alphabet.len()];
        for &sym in symbols {
            let idx = alphabet
                .index_of(sym)
                .ok_or_else(|| CorpusError::UnknownSymbol {
                    symbol: sym,
                    alphabet: alphabet.name.into(),
                })?;
            weights[idx] += 1.0;
        }
        Ok(Self::from_weights(alphabet, weights, 0))
    }

    /// Normalize raw text and count it, keeping the discard tally.
    pub fn from_text(text: &str, alphabet: &'static Alphabet) -> Self {
        let stream = normalize_stream(text, alphabet);
        let mut table = Self::from_symbols(&stream.symbols, alphabet)
            .expect("normalize_stream only emits alphabet symbols");
        table.discarded = stream.discarded;
        table
    }

    /// Load published percentages (or any non-negative weights). Rows for
    /// symbols outside the alphabet are rejected; alphabet symbols missing
    /// from the rows sit at weight zero.
    pub fn from_weight_rows(
        alphabet: &'static Alphabet,
        rows: &[(char, f64)],
    ) -> Result<Self, CorpusError> {
        let mut weights = vec![0.0; alphabet.len()];
        for &(sym, w) in rows {
            let idx = alphabet
                .index_of(sym)
                .ok_or_else(|| CorpusError::UnknownSymbol {
                    symbol: sym,
                    alphabet: alphabet.name.into(),
                })?;
            weights[idx] += w;
        }
        Ok(Self::from_weights(alphabet, weights, 0))
    }

    fn from_weights(alphabet: &'static Alphabet, weights: Vec<f64>, discarded: u64) -> Self {
        let total = weights.iter().sum();
        FrequencyTable {
            alphabet,
            weights,
            total,
            discarded,
        }
    }

    /// Merge another table over the same alphabet into this one (counts are
    /// commutative, so multi-file ingestion is order-independent).
    pub fn merge(&mut self, other: &FrequencyTable) {
        assert_eq!(
            self.alphabet, other.alphabet,
            "cannot merge tables over different alphabets"
        );
        for (w, o) in self.weights.iter_mut().zip(&other.weights) {
            *w += o;
        }
        self.total += other.total;
        self.discarded += other.discarded;
    }

    pub fn alphabet(&self) -> &'static Alphabet {
        self.alphabet
    }

    pub fn total(&self) -> f64 {
        self.total
    }

    pub fn discarded(&self) -> u64 {
        self.discarded
    }

    /// Weight of a symbol (zero when unranked or outside the alphabet).
    pub fn weight(&self, symbol: char) -> f64 {
        self.alphabet
            .index_of(symbol)
            .map_or(0.0, |i| self.weights[i])
    }

    /// (symbol, weight) pairs in alphabet order — the tie order the rank
    /// builder expects.
    pub fn weighted_symbols(&self) -> Vec<(char, f64)> {
        self.alphabet
            .symbols
            .iter()
            .copied()
            .zip(self.weights.iter().copied())
            .collect()
    }

    pub fn probability(&self, symbol: char) -> Result<f64, CorpusError> {
        if self.total <= 0.0 {
            return Err(CorpusError::EmptyInput);
        }
        Ok(self.weight(symbol) / self.total)
    }

    /// (symbol, probability) pairs in alphabet order, renormalized by the
    /// total. Errs on an empty table.
    pub fn probabilities(&self) -> Result<Vec<(char, f64)>, CorpusError> {
        if self.total <= 0.0 {
            return Err(CorpusError::EmptyInput);
        }
        Ok(self
            .alphabet
            .symbols
            .iter()
            .copied()
            .zip(self.weights.iter().map(|w| w / self.total))
            .collect())
    }
}

/// Vowel percentage of a frequency table: 100 · Σ probability(vowel).
pub fn vowel_ratio(table: &FrequencyTable) -> Result<f64, CorpusError> {
    let vowel_sum: f64 = table
        .probabilities()?
        .into_iter()
        .filter(|(sym, _)| table.alphabet.is_vowel(*sym))
        .map(|(_, p)| p)
        .sum();
    Ok(100.0 * vowel_sum)
}

/// Consonant percentage, defined as the exact complement of [`vowel_ratio`]
/// so the two always add to 100.
pub fn consonant_ratio(table: &FrequencyTable) -> Result<f64, CorpusError> {
    Ok(100.0 - vowel_ratio(table)?)
}

/// Syllable estimate for one token: the number of maximal vowel runs (every
/// run is one nucleus). Consonant-only tokens have no nucleus; they count as
/// one syllable-slot with the `vowelless` flag raised.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SyllableCount {
    pub syllables: usize,
    pub vowelless: bool,
}

pub fn syllable_count(word: &str, alphabet: &Alphabet) -> SyllableCount {
    let mut runs = 0;
    let mut in_run = false;
    for ch in word.chars() {
        if alphabet.is_vowel(ch) {
            if !in_run {
                runs += 1;
                in_run = true;
            }
        } else {
            in_run = false;
        }
    }
    if runs == 0 {
        SyllableCount {
            syllables: 1,
            vowelless: true,
        }
    } else {
        SyllableCount {
            syllables: runs,
            vowelless: false,
        }
    }
}

/// Per-word syllable overrides, for words where the vowel-run heuristic is
/// wrong (hiatus vs. diphthong). Entries are matched against normalized
/// tokens, so write them uppercase in the target profile's folded form.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SyllableLexicon {
    entries: HashMap<String, usize>,
}

impl SyllableLexicon {
    /// Parse lines `WORD<TAB>count`. Blank lines and `#` comments are
    /// skipped.
    pub fn parse(text: &str) -> Result<Self, CorpusError> {
        let mut entries = HashMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let (word, count) = line.split_once('\t').ok_or_else(|| CorpusError::Malformed {
                line: lineno + 1,
                reason: "expected WORD<TAB>count".into(),
            })?;
            let count: usize = count.trim().parse().map_err(|_| CorpusError::Malformed {
                line: lineno + 1,
                reason: format!("syllable count {:?} is not a number", count.trim()),
            })?;
            if count == 0 {
                return Err(CorpusError::Malformed {
                    line: lineno + 1,
                    reason: "syllable count must be at least 1".into(),
                });
            }
            entries.insert(word.trim().to_string(), count);
        }
        Ok(SyllableLexicon { entries })
    }

    pub fn get(&self, word: &str) -> Option<usize> {
        self.entries.get(word).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// [`syllable_count`] with a lexicon override applied first.
pub fn syllable_count_with(
    word: &str,
    alphabet: &Alphabet,
    lexicon: Option<&SyllableLexicon>,
) -> SyllableCount {
    if let Some(count) = lexicon.and_then(|l| l.get(word)) {
        return SyllableCount {
            syllables: count,
            vowelless: false,
        };
    }
    syllable_count(word, alphabet)
}

/// A proportion per numeric value (word length, syllable count), always
/// renormalized to sum to 1, with the mean Σ value · proportion.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    entries: Vec<(u32, f64)>,
    mean: f64,
}

impl Distribution {
    /// Build from raw (value, mass) pairs — counts or percentages — and
    /// renormalize. Errs when the total mass is zero.
    pub fn from_masses(pairs: &[(u32, f64)]) -> Result<Self, CorpusError> {
        let mut by_value: BTreeMap<u32, f64> = BTreeMap::new();
        for &(v, mass) in pairs {
            *by_value.entry(v).or_insert(0.0) += mass;
        }
        let total: f64 = by_value.values().sum();
        if total <= 0.0 {
            return Err(CorpusError::EmptyInput);
        }
        let entries: Vec<(u32, f64)> = by_value
            .into_iter()
            .map(|(v, mass)| (v, mass / total))
            .collect();
        let mean = entries.iter().map(|&(v, p)| v as f64 * p).sum();
        Ok(Distribution { entries, mean })
    }

    /// (value, proportion) pairs sorted by value.
    pub fn entries(&self) -> &[(u32, f64)] {
        &self.entries
    }

    pub fn proportion(&self, value: u32) -> f64 {
        self.entries
            .iter()
            .find(|(v, _)| *v == value)
            .map_or(0.0, |(_, p)| *p)
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }
}

/// Mean of a distribution (already renormalized at construction).
pub fn distribution_mean(dist: &Distribution) -> f64 {
    dist.mean()
}

/// What to measure a token's length in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LengthMeasure {
    Letters,
    Syllables,
}

/// Distribution of token lengths in letters or syllables (vowel-run
/// heuristic, lexicon override honored).
pub fn length_distribution(
    tokens: &[String],
    measure: LengthMeasure,
    alphabet: &Alphabet,
    lexicon: Option<&SyllableLexicon>,
) -> Result<Distribution, CorpusError> {
    if tokens.is_empty() {
        return Err(CorpusError::EmptyInput);
    }
    let mut counts: BTreeMap<u32, f64> = BTreeMap::new();
    for token in tokens {
        let len = match measure {
            LengthMeasure::Letters => token.chars().count(),
            LengthMeasure::Syllables => syllable_count_with(token, alphabet, lexicon).syllables,
        };
        *counts.entry(len as u32).or_insert(0.0) += 1.0;
    }
    let pairs: Vec<(u32, f64)> = counts.into_iter().collect();
    Distribution::from_masses(&pairs)
}

/// The k most frequent tokens outside the stoplist, ties resolved by first
/// occurrence. Returns the whole remaining vocabulary when it has fewer than
/// k entries.
pub fn keyword_top_k(tokens: &[String], k: usize, stoplist: &HashSet<String>) -> Vec<String> {
    let mut stats: HashMap<&str, (u64, usize)> = HashMap::new();
    for (idx, token) in tokens.iter().enumerate() {
        if stoplist.contains(token.as_str()) {
            continue;
        }
        let entry = stats.entry(token).or_insert((0, idx));
        entry.0 += 1;
    }
    let mut ranked: Vec<(&str, u64, usize)> =
        stats.into_iter().map(|(t, (c, i))| (t, c, i)).collect();
    ranked.sort_by(|a, b| b.1.cmp(&a.1).then(a.2.cmp(&b.2)));
    ranked
        .into_iter()
        .take(k)
        .map(|(t, _, _)| t.to_string())
        .collect()
}

/// One token of a pre-annotated corpus: a surface form plus key=value
/// attributes (part of speech, case, article, ...).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnotatedToken {
    pub surface: String,
    pub attributes: BTreeMap<String, String>,
}

/// Parse the annotated corpus format: one token per line,
/// `surface<TAB>key=value[,key=value...]`; lines starting with `#` are
/// comments. A line without a tab is a bare token with no attributes.
pub fn parse_annotated(text: &str) -> Result<Vec<AnnotatedToken>, CorpusError> {
    let mut tokens = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let (surface, attrs) = match line.split_once('\t') {
            Some((s, a)) => (s, Some(a)),
            None => (line, None),
        };
        let surface = surface.trim();
        if surface.is_empty() {
            return Err(CorpusError::Malformed {
                line: lineno + 1,
                reason: "empty surface form".into(),
            });
        }
        let mut attributes = BTreeMap::new();
        if let Some(attrs) = attrs {
            for pair in attrs.split(',') {
                let pair = pair.trim();
                if pair.is_empty() {
                    continue;
                }
                let (key, value) = pair.split_once('=').ok_or_else(|| CorpusError::Malformed {
                    line: lineno + 1,
                    reason: format!("attribute {pair:?} is not key=value"),
                })?;
                attributes.insert(key.trim().to_string(), value.trim().to_string());
            }
        }
        tokens.push(AnnotatedToken {
            surface: surface.to_string(),
            attributes,
        });
    }
    Ok(tokens)
}

/// Proportion of each attribute value among the tokens that carry the key,
/// sorted by value label. Errs when no token has the key.
pub fn attribute_distribution(
    tokens: &[AnnotatedToken],
    key: &str,
) -> Result<Vec<(String, f64)>, CorpusError> {
    let mut counts: BTreeMap<&str, u64> = BTreeMap::new();
    let mut carriers = 0u64;
    for token in tokens {
        if let Some(value) = token.attributes.get(key) {
            *counts.entry(value).or_insert(0) += 1;
            carriers += 1;
        }
    }
    if carriers == 0 {
        return Err(CorpusError::MissingKey(key.to_string()));
    }
    Ok(counts
        .into_iter()
        .map(|(value, count)| (value.to_string(), count as f64 / carriers as f64))
        .collect())
}
