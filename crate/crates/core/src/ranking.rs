//! Rank tables and the écart rank-deviation metric.
//!
//! The écart of a symbol is its rank in a reference table minus its rank in
//! an observed table; the écart of a text is the mean of the absolute
//! per-symbol écarts. It is bounded above by (n−1)/2 + ⌊n/2⌋/n, attained by
//! the order-reversing permutation; [`max_ecart_oracle`] confirms this by
//! exhaustive search for small n.
//!
//! Symbols are generic so the same operations serve letter tables (`char`)
//! and word tables (`String`).

use std::collections::HashSet;
use std::fmt::Debug;
use std::hash::Hash;

use itertools::Itertools;
use num_rational::Ratio;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RankError {
    #[error("duplicate symbol {0:?} in rank order")]
    DuplicateSymbol(String),
    #[error("rank tables share no symbols")]
    SymbolSetMismatch,
    #[error("exhaustive search over {0}! permutations refused (max n = 8)")]
    TooLarge(usize),
    #[error("malformed grouped rank list at line {line}: {reason}")]
    MalformedGroups { line: usize, reason: String },
}

/// Symbols ranked 1 (most frequent) through n. The rank map is a bijection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankTable<S> {
    symbols: Vec<S>,
}

impl<S: Clone + Eq + Hash + Debug> RankTable<S> {
    /// Build from symbols listed in rank order (first = rank 1).
    pub fn from_order(symbols: impl IntoIterator<Item = S>) -> Result<Self, RankError> {
        let symbols: Vec<S> = symbols.into_iter().collect();
        let mut seen = HashSet::new();
        for s in &symbols {
            if !seen.insert(s.clone()) {
                return Err(RankError::DuplicateSymbol(format!("{s:?}")));
            }
        }
        Ok(RankTable { symbols })
    }

    /// 1-based rank of a symbol, if ranked.
    pub fn rank_of(&self, symbol: &S) -> Option<usize> {
        self.symbols.iter().position(|s| s == symbol).map(|i| i + 1)
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Symbols in rank order.
    pub fn symbols(&self) -> &[S] {
        &self.symbols
    }

    /// Restrict to the symbols of `other`, preserving relative order and
    /// re-ranking 1..k.
    pub fn restricted_to(&self, other: &RankTable<S>) -> RankTable<S> {
        RankTable {
            symbols: self
                .symbols
                .iter()
                .filter(|s| other.rank_of(s).is_some())
                .cloned()
                .collect(),
        }
    }
}

/// Rank symbols by descending weight. Ties break by reference rank when a
/// reference is given, otherwise by position in the input (callers pass
/// symbols in alphabet order). Zero-weight symbols are appended after every
/// weighted one — they get the biggest ranks — ordered by the same tie rule.
pub fn build_rank_table<S: Clone + Eq + Hash + Debug>(
    weighted: &[(S, f64)],
    reference: Option<&RankTable<S>>,
) -> RankTable<S> {
    let tie_key = |idx: usize, sym: &S| -> (usize, usize) {
        match reference {
            // Symbols the reference does not rank tie-break by input
            // position, after every referenced one.
            Some(r) => (r.rank_of(sym).unwrap_or(usize::MAX), idx),
            None => (idx, 0),
        }
    };
    let mut present: Vec<((usize, usize), &S, f64)> = Vec::new();
    let mut absent: Vec<((usize, usize), &S)> = Vec::new();
    for (idx, (sym, w)) in weighted.iter().enumerate() {
        if *w > 0.0 {
            present.push((tie_key(idx, sym), sym, *w));
        } else {
            absent.push((tie_key(idx, sym), sym));
        }
    }
    present.sort_by(|a, b| b.2.total_cmp(&a.2).then(a.0.cmp(&b.0)));
    absent.sort_by_key(|(key, _)| *key);
    let symbols = present
        .into_iter()
        .map(|(_, s, _)| s.clone())
        .chain(absent.into_iter().map(|(_, s)| s.clone()))
        .collect();
    RankTable { symbols }
}

/// Per-symbol and mean rank deviation between two tables over the same
/// symbol universe.
#[derive(Debug, Clone, PartialEq)]
pub struct EcartReport<S> {
    /// (symbol, reference rank − observed rank), in reference-rank order.
    pub per_symbol: Vec<(S, i64)>,
    /// Mean of the absolute deviations.
    pub mean_abs: Ratio<i64>,
    /// Distinct symbols compared.
    pub n: usize,
    /// The closed-form bound for this n.
    pub upper_bound: Ratio<i64>,
}

impl<S> EcartReport<S> {
    pub fn mean_abs_f64(&self) -> f64 {
        *self.mean_abs.numer() as f64 / *self.mean_abs.denom() as f64
    }

    pub fn sum_abs(&self) -> i64 {
        self.per_symbol.iter().map(|(_, d)| d.abs()).sum()
    }
}

/// Écart between a reference and an observed rank table.
///
/// Symbols missing from one side are first appended to it at the biggest
/// ranks, in the order the other table lists them; the deviation is then
/// reference rank − observed rank per symbol, and `mean_abs` averages the
/// absolute values over the n symbols of the union. Errs when the tables
/// share no symbols at all.
pub fn text_ecart<S: Clone + Eq + Hash + Debug>(
    reference: &RankTable<S>,
    observed: &RankTable<S>,
) -> Result<EcartReport<S>, RankError> {
    if !reference
        .symbols
        .iter()
        .any(|s| observed.rank_of(s).is_some())
    {
        return Err(RankError::SymbolSetMismatch);
    }
    let inject = |base: &RankTable<S>, other: &RankTable<S>| -> Vec<S> {
        let mut full = base.symbols.clone();
        full.extend(
            other
                .symbols
                .iter()
                .filter(|s| base.rank_of(s).is_none())
                .cloned(),
        );
        full
    };
    let ref_full = inject(reference, observed);
    let obs_full = inject(observed, reference);
    let n = ref_full.len();
    debug_assert_eq!(n, obs_full.len());
    let obs_rank = |sym: &S| obs_full.iter().position(|s| s == sym).unwrap() as i64 + 1;
    let per_symbol: Vec<(S, i64)> = ref_full
        .iter()
        .enumerate()
        .map(|(i, sym)| (sym.clone(), (i as i64 + 1) - obs_rank(sym)))
        .collect();
    let sum: i64 = per_symbol.iter().map(|(_, d)| d.abs()).sum();
    Ok(EcartReport {
        per_symbol,
        mean_abs: Ratio::new(sum, n as i64),
        n,
        upper_bound: ecart_bound(n),
    })
}

/// Upper bound of the mean absolute rank deviation over n symbols:
/// (n−1)/2 + ⌊n/2⌋/n.
pub fn ecart_bound(n: usize) -> Ratio<i64> {
    let n = n as i64;
    if n == 0 {
        return Ratio::from_integer(0);
    }
    Ratio::new(n - 1, 2) + Ratio::new(n / 2, n)
}

/// Exhaustive maximum of the mean absolute deviation over all permutations
/// of 1..=n. Factorial search, so n is capped at 8. Equals
/// [`ecart_bound`]`(n)` and is attained by the order-reversing permutation.
pub fn max_ecart_oracle(n: usize) -> Result<Ratio<i64>, RankError> {
    if n > 8 {
        return Err(RankError::TooLarge(n));
    }
    if n == 0 {
        return Ok(Ratio::from_integer(0));
    }
    let max_sum = (1..=n as i64)
        .permutations(n)
        .map(|perm| {
            perm.iter()
                .enumerate()
                .map(|(i, &j)| (i as i64 + 1 - j).abs())
                .sum::<i64>()
        })
        .max()
        .expect("at least one permutation");
    Ok(Ratio::new(max_sum, n as i64))
}

/// Parse a grouped rank list: lines `group: SYM[,SYM...]` in descending
/// frequency order. Blank lines and `#` comments are skipped. Group numbers
/// must start at 1 and increase by one; symbols may repeat nowhere.
pub fn parse_grouped_ranks(text: &str) -> Result<Vec<Vec<String>>, RankError> {
    let mut groups = Vec::new();
    let mut seen: HashSet<String> = HashSet::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (label, rest) = line.split_once(':').ok_or_else(|| RankError::MalformedGroups {
            line: lineno + 1,
            reason: "expected `group: SYM[,SYM...]`".into(),
        })?;
        let number: usize = label.trim().parse().map_err(|_| RankError::MalformedGroups {
            line: lineno + 1,
            reason: format!("group label {:?} is not a number", label.trim()),
        })?;
        if number != groups.len() + 1 {
            return Err(RankError::MalformedGroups {
                line: lineno + 1,
                reason: format!("expected group {}, found {number}", groups.len() + 1),
            });
        }
        let mut group = Vec::new();
        for sym in rest.split(',') {
            let sym = sym.trim();
            if sym.is_empty() {
                return Err(RankError::MalformedGroups {
                    line: lineno + 1,
                    reason: "empty symbol".into(),
                });
            }
            if !seen.insert(sym.to_string()) {
                return Err(RankError::MalformedGroups {
                    line: lineno + 1,
                    reason: format!("symbol {sym:?} listed twice"),
                });
            }
            group.push(sym.to_string());
        }
        groups.push(group);
    }
    if groups.is_empty() {
        return Err(RankError::MalformedGroups {
            line: 0,
            reason: "no groups".into(),
        });
    }
    Ok(groups)
}

/// Flatten grouped ranks into a strict order, keeping the listed
/// within-group order.
pub fn expand_groups<S: Clone>(groups: &[Vec<S>]) -> Vec<S> {
    groups.iter().flatten().cloned().collect()
}
