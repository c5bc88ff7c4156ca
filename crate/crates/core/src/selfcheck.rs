//! Regression checks that pin the toolkit to the source study's published
//! numbers: écart, entropy, informational energy, distribution means, vowel
//! ratios, the record-grid table, the budget rounding examples, and the
//! internal consistency of the poetry ratios. The CLI `selfcheck` subcommand
//! prints one line per check and fails if any gating check fails.

use num_rational::Ratio;

use crate::corpus::vowel_ratio;
use crate::infometrics::{entropy_bits, informational_energy};
use crate::laws::{black_budget, budget_feasibility, record_table, verify_record};
use crate::ranking::{build_rank_table, expand_groups, text_ecart, RankTable};
use crate::tables::get_table;

/// Outcome of one regression check.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub detail: String,
    pub passed: bool,
    /// Non-gating checks document known-ambiguous source values; they never
    /// fail the run.
    pub gating: bool,
}

/// True when every gating check passed.
pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed || !c.gating)
}

fn approx(name: &'static str, actual: f64, expected: f64, tol: f64) -> Check {
    Check {
        name,
        detail: format!("{actual:.6} (expected {expected} within {tol})"),
        passed: (actual - expected).abs() <= tol,
        gating: true,
    }
}

/// Run every embedded regression. Infallible by construction: the embedded
/// tables are validated at load, so failures show up as failed checks, not
/// errors.
pub fn run_selfcheck() -> Vec<Check> {
    let mut checks = Vec::new();

    let romanian = get_table("ROMANIAN_RANKS_23")
        .and_then(|t| t.as_rank_table())
        .expect("embedded rank list");
    let grid_freq = get_table("GRID_LETTER_FREQ")
        .and_then(|t| t.as_frequency_table())
        .expect("embedded grid letters");
    let clue_freq = get_table("CLUE_LETTER_FREQ")
        .and_then(|t| t.as_frequency_table())
        .expect("embedded clue letters");
    let poetry_freq = get_table("POETRY_LETTER_FREQ")
        .and_then(|t| t.as_frequency_table())
        .expect("embedded poetry letters");

    // Grid-letter écart: 32/23 against the 23-letter language ranking.
    let grid_ranks = build_rank_table(&grid_freq.weighted_symbols(), Some(&romanian));
    match text_ecart(&romanian, &grid_ranks) {
        Ok(report) => {
            let exact = report.mean_abs == Ratio::new(32, 23);
            let close = (report.mean_abs_f64() - 1.391).abs() <= 0.001;
            checks.push(Check {
                name: "ecart_grid_letters",
                detail: format!(
                    "sum {} over n {} -> {:.6} (expected 32/23, printed 1.391)",
                    report.sum_abs(),
                    report.n,
                    report.mean_abs_f64()
                ),
                passed: exact && close,
                gating: true,
            });
        }
        Err(e) => checks.push(Check {
            name: "ecart_grid_letters",
            detail: format!("failed: {e}"),
            passed: false,
            gating: true,
        }),
    }

    // Entropy and informational energy of the three letter tables.
    let metric = |table: &crate::corpus::FrequencyTable| {
        (
            entropy_bits(table).expect("non-empty table"),
            informational_energy(table).expect("non-empty table"),
        )
    };
    let (h, e) = metric(&grid_freq);
    checks.push(approx("entropy_grid_letters", h, 3.865, 0.01));
    checks.push(approx("energy_grid_letters", e, 0.084, 0.002));
    let (h, e) = metric(&clue_freq);
    checks.push(approx("entropy_clue_letters", h, 4.226, 0.01));
    checks.push(approx("energy_clue_letters", e, 0.062, 0.002));
    let (h, e) = metric(&poetry_freq);
    checks.push(approx("entropy_poetry_letters", h, 4.222, 0.01));
    checks.push(approx("energy_poetry_letters", e, 0.064, 0.002));

    // Distribution means against their printed values.
    for (name, table, tol) in [
        ("mean_grid_syllables", "GRID_SYLLABLE_DIST", 0.001),
        ("mean_poetry_syllables", "POETRY_SYLLABLE_DIST", 0.001),
        ("mean_poetry_letter_lengths", "POETRY_LETTERLEN_DIST", 0.02),
    ] {
        let t = get_table(table).expect("embedded distribution");
        let dist = t.as_distribution().expect("distribution kind");
        let printed = t.printed_mean().expect("distribution kind");
        checks.push(approx(name, dist.mean(), printed, tol));
    }

    // Vowel ratios of the grid and poetry tables match their printed
    // columns. (The clue table's printed column is inconsistent with its own
    // rows and is deliberately not checked.)
    checks.push(approx(
        "vowels_grid_letters",
        vowel_ratio(&grid_freq).expect("non-empty"),
        47.462,
        0.001,
    ));
    checks.push(approx(
        "vowels_poetry_letters",
        vowel_ratio(&poetry_freq).expect("non-empty"),
        46.865,
        0.01,
    ));

    // Record-grid table: recomputed percentages match all stored rows.
    let rows = record_table();
    let bad: Vec<String> = rows
        .iter()
        .filter(|r| !verify_record(r))
        .map(|r| format!("{}x{}", r.side, r.side))
        .collect();
    checks.push(Check {
        name: "record_grid_percentages",
        detail: if bad.is_empty() {
            format!("all {} rows verified at 3 decimals", rows.len())
        } else {
            format!("rows failed: {}", bad.join(", "))
        },
        passed: bad.is_empty() && rows.len() == 9,
        gating: true,
    });

    // Budget rounding examples.
    let b13 = black_budget(13, 13, Ratio::from_integer(15));
    let b12 = black_budget(12, 12, Ratio::from_integer(15));
    checks.push(Check {
        name: "budget_rounding",
        detail: format!("13x13 -> {b13} (expected 25), 12x12 -> {b12} (expected 22)"),
        passed: b13 == 25 && b12 == 22,
        gating: true,
    });

    // Feasibility equality case: 15x15 at one fifth black gives bound 3.
    let feas = budget_feasibility(15, 15, Ratio::new(1, 5));
    checks.push(Check {
        name: "feasibility_equality_case",
        detail: format!(
            "bound {}/{} short_words {}",
            feas.bound.numer(),
            feas.bound.denom(),
            feas.short_words
        ),
        passed: feas.bound == Ratio::from_integer(3) && feas.short_words,
        gating: true,
    });

    // Poetry ratios: products of per-line/per-sentence averages agree with
    // the directly printed ones.
    let ratios = get_table("POETRY_RATIOS").expect("embedded ratios");
    let r = |label: &str| ratios.ratio(label).expect("labeled row");
    let products = [
        (
            "letters_per_syllable * syllables_per_word",
            r("letters_per_syllable") * r("syllables_per_word"),
            r("letters_per_word"),
        ),
        (
            "words_per_line * syllables_per_word",
            r("words_per_line") * r("syllables_per_word"),
            r("syllables_per_line"),
        ),
        (
            "words_per_line * lines_per_sentence",
            r("words_per_line") * r("lines_per_sentence"),
            r("words_per_sentence"),
        ),
    ];
    let worst = products
        .iter()
        .map(|(_, got, want)| (got - want).abs())
        .fold(0.0_f64, f64::max);
    checks.push(Check {
        name: "poetry_ratio_consistency",
        detail: format!("largest product deviation {worst:.5} (allowed 0.01)"),
        passed: worst <= 0.01,
        gating: true,
    });

    // Juridical typewriter groups, expanded in listed order and restricted
    // to the 23-letter reference: 52/23. The source prints 2.348 for this
    // quantity; the within-group order behind that figure is unrecoverable,
    // so the printed target is reported here without gating anything.
    checks.push(juridical_check(&romanian));

    checks
}

fn juridical_check(romanian: &RankTable<char>) -> Check {
    let groups = match get_table("JURIDICAL_GROUPS").and_then(|t| t.as_groups().map(<[_]>::to_vec))
    {
        Ok(groups) => groups,
        Err(e) => {
            return Check {
                name: "ecart_juridical_letters",
                detail: format!("failed: {e}"),
                passed: false,
                gating: true,
            }
        }
    };
    let expanded: Vec<char> = expand_groups(&groups)
        .into_iter()
        .filter(|s| romanian.rank_of(s).is_some())
        .collect();
    let juridical = match RankTable::from_order(expanded) {
        Ok(t) => t,
        Err(e) => {
            return Check {
                name: "ecart_juridical_letters",
                detail: format!("failed: {e}"),
                passed: false,
                gating: true,
            }
        }
    };
    match text_ecart(romanian, &juridical) {
        Ok(report) => Check {
            name: "ecart_juridical_letters",
            detail: format!(
                "sum {} over n {} -> {:.6} under listed-order expansion; printed 2.348 rests on an unrecoverable within-group order and is not checked",
                report.sum_abs(),
                report.n,
                report.mean_abs_f64(),
            ),
            passed: report.mean_abs == Ratio::new(52, 23),
            gating: true,
        },
        Err(e) => Check {
            name: "ecart_juridical_letters",
            detail: format!("failed: {e}"),
            passed: false,
            gating: true,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_gating_check_passes() {
        let checks = run_selfcheck();
        for c in &checks {
            assert!(
                c.passed || !c.gating,
                "check {} failed: {}",
                c.name,
                c.detail
            );
        }
        assert!(all_passed(&checks));
        assert!(checks.len() >= 15);
    }

    #[test]
    fn check_names_are_unique() {
        let checks = run_selfcheck();
        let mut names: Vec<&str> = checks.iter().map(|c| c.name).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), checks.len());
    }
}
