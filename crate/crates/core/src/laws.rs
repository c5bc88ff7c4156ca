//! Closed-form grid laws: word counts from the zone census, word-count
//! bounds, the mean-word-length lower bound, the black-square budget with
//! its rounding rule, the budget feasibility derivation, and the embedded
//! record-grid table.
//!
//! The counting formulas are exact only for grids with both dimensions ≥ 3
//! and no two orthogonally adjacent black cells; [`predict_counts`] rejects
//! small dimensions and [`predict_for_grid`] additionally rejects bad
//! spacing, so callers fall back to [`crate::grid::Grid::extract_words`]
//! instead of getting silently wrong numbers.
//!
//! Bounds and percentages use exact rational arithmetic; rounding happens
//! only at display time.

use num_rational::Ratio;
use thiserror::Error;

use crate::grid::{BlackCensus, Grid, WordCensus};
use crate::tables;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LawsError {
    #[error("counting formulas need both dimensions >= 3, got {n}x{m}")]
    DimensionsTooSmall { n: usize, m: usize },
    #[error("counting formulas need isolated black cells (no orthogonal adjacency)")]
    SpacingInvalid,
    #[error("grid has no words (every cell is black)")]
    NoWords,
}

/// Word counts predicted from dimensions and the black-cell census alone.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridPrediction {
    pub total: usize,
    pub across: usize,
    pub down: usize,
    /// Across minus down.
    pub difference: i64,
}

/// Predict word counts for an n×m grid from its black-cell census.
///
/// total = n + m + border + 2·interior; across = n + horizontal_border +
/// interior; down = m + vertical_border + interior. Corner blacks change
/// nothing. Requires n, m ≥ 3; the caller is responsible for checking
/// spacing (see [`predict_for_grid`]).
pub fn predict_counts(
    n: usize,
    m: usize,
    census: &BlackCensus,
) -> Result<GridPrediction, LawsError> {
    if n < 3 || m < 3 {
        return Err(LawsError::DimensionsTooSmall { n, m });
    }
    let across = n + census.horizontal_border + census.interior;
    let down = m + census.vertical_border + census.interior;
    Ok(GridPrediction {
        total: across + down,
        across,
        down,
        difference: across as i64 - down as i64,
    })
}

/// [`predict_counts`] with the full precondition check: both dimensions ≥ 3
/// and no two black cells orthogonally adjacent.
pub fn predict_for_grid(grid: &Grid) -> Result<GridPrediction, LawsError> {
    if !grid.spacing_valid() {
        return Err(LawsError::SpacingInvalid);
    }
    predict_counts(grid.rows(), grid.cols(), &grid.black_census())
}

/// Minimum and maximum possible word counts of an n×m grid with p black
/// cells: (n + m, n + m + 2p). The minimum is attained with every black in a
/// corner, the maximum with every black in the interior.
pub fn word_bounds(n: usize, m: usize, p: usize) -> (usize, usize) {
    (n + m, n + m + 2 * p)
}

/// Letter-slot count, word count, mean word length, and its lower bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LengthReport {
    /// White cells, i.e. letter slots (n·m − p).
    pub letter_slots: usize,
    pub word_count: usize,
    /// 2·(n·m − p) / word_count: each letter sits in one across and one down
    /// word.
    pub mean_length: Ratio<i64>,
    /// 2·(n·m − p) / (n + m + 2p), the mean at the maximal word count.
    pub lower_bound: Ratio<i64>,
}

/// Mean word length of a grid against its enumerated words, with the
/// closed-form lower bound. Errors with [`LawsError::NoWords`] on an
/// all-black grid.
pub fn length_report(grid: &Grid, words: &WordCensus) -> Result<LengthReport, LawsError> {
    let word_count = words.total();
    if word_count == 0 {
        return Err(LawsError::NoWords);
    }
    let slots = grid.white_count() as i64;
    let (n, m, p) = (grid.rows(), grid.cols(), grid.black_count());
    let (_, max_words) = word_bounds(n, m, p);
    Ok(LengthReport {
        letter_slots: slots as usize,
        word_count,
        mean_length: Ratio::new(2 * slots, word_count as i64),
        lower_bound: Ratio::new(2 * slots, max_words as i64),
    })
}

/// Round to the largest natural number within 0.5 of `x`: exact halves round
/// up. This is the rounding used by the 15% budget rule.
pub fn round_half_up(x: Ratio<i64>) -> i64 {
    (x + Ratio::new(1, 2)).floor().to_integer()
}

/// Black-cell budget of an n×m grid at the given percentage (the customary
/// limit is 15): `round_half_up(percent/100 · n·m)`.
pub fn black_budget(n: usize, m: usize, percent: Ratio<i64>) -> i64 {
    round_half_up(percent * Ratio::new((n * m) as i64, 100))
}

/// Outcome of the budget feasibility rule at a black-cell fraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Feasibility {
    /// Mean-word-length lower bound with p = fraction·n·m:
    /// 2·n·m·(1−fraction) / (n + m + 2·fraction·n·m).
    pub bound: Ratio<i64>,
    /// True when the bound is ≤ 3, i.e. the grid is forced into short words.
    /// At fraction 1/5 this is equivalent to 1/n + 1/m ≥ 2/15.
    pub short_words: bool,
}

pub fn budget_feasibility(n: usize, m: usize, fraction: Ratio<i64>) -> Feasibility {
    let (n, m) = (n as i64, m as i64);
    let nm = Ratio::from_integer(n * m);
    let bound = Ratio::from_integer(2) * nm * (Ratio::from_integer(1) - fraction)
        / (Ratio::from_integer(n + m) + Ratio::from_integer(2) * fraction * nm);
    Feasibility {
        bound,
        short_words: bound <= Ratio::from_integer(3),
    }
}

/// One row of the record-grid table: the minimum known black-cell count for
/// a square grid side, its percentage as printed (truncated to 3 decimals),
/// and the number of such grids known.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RecordGridEntry {
    pub side: usize,
    pub min_black: usize,
    /// Printed percentage, e.g. 3305/1000 for 3.305%.
    pub percentage: Ratio<i64>,
    pub count_known: usize,
}

/// The embedded record-grid table for square grids of side 8 through 16.
pub fn record_table() -> &'static [RecordGridEntry] {
    tables::record_grids()
}

/// Recompute 100·min_black/side² and check it matches the stored percentage
/// at 3 decimals (truncated, which is how the table was printed). Exact
/// integer arithmetic: ⌊recomputed·1000⌋ must equal stored·1000.
pub fn verify_record(entry: &RecordGridEntry) -> bool {
    let exact_millis = Ratio::new(
        100_000 * entry.min_black as i64,
        (entry.side * entry.side) as i64,
    )
    .floor()
    .to_integer();
    let stored_millis = entry.percentage * Ratio::from_integer(1000);
    stored_millis.is_integer() && stored_millis.to_integer() == exact_millis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Grid;
    use num_traits::ToPrimitive;

    fn ratio(n: i64, d: i64) -> Ratio<i64> {
        Ratio::new(n, d)
    }

    #[test]
    fn predict_matches_enumeration_center_black() {
        let g = Grid::parse("...\n.#.\n...").unwrap();
        let p = predict_for_grid(&g).unwrap();
        assert_eq!(
            p,
            GridPrediction {
                total: 8,
                across: 4,
                down: 4,
                difference: 0
            }
        );
        let words = g.extract_words();
        assert_eq!(p.total, words.total());
        assert_eq!(p.across, words.across.len());
        assert_eq!(p.down, words.down.len());
    }

    #[test]
    fn predict_matches_enumeration_5x5_border_black() {
        let g = Grid::parse("..#..\n.....\n.....\n.....\n.....").unwrap();
        let p = predict_for_grid(&g).unwrap();
        assert_eq!(
            p,
            GridPrediction {
                total: 11,
                across: 6,
                down: 5,
                difference: 1
            }
        );
        let words = g.extract_words();
        assert_eq!(p.across, words.across.len());
        assert_eq!(p.down, words.down.len());
    }

    #[test]
    fn predict_no_blacks_is_n_plus_m() {
        let census = BlackCensus::default();
        let p = predict_counts(7, 4, &census).unwrap();
        assert_eq!(p.total, 11);
        assert_eq!(p.difference, 3);
    }

    #[test]
    fn predict_rejects_small_dimensions() {
        let census = BlackCensus::default();
        assert_eq!(
            predict_counts(2, 5, &census),
            Err(LawsError::DimensionsTooSmall { n: 2, m: 5 })
        );
    }

    #[test]
    fn predict_rejects_bad_spacing() {
        let g = Grid::parse("##.\n...\n...").unwrap();
        assert_eq!(predict_for_grid(&g), Err(LawsError::SpacingInvalid));
    }

    #[test]
    fn moving_a_black_inward_adds_exactly_one_word() {
        // Formula-level monotonicity: border -> interior adds one word,
        // corner blacks never matter.
        let base = BlackCensus {
            total: 3,
            corner: 1,
            horizontal_border: 1,
            vertical_border: 1,
            interior: 0,
        };
        let moved = BlackCensus {
            horizontal_border: 0,
            interior: 1,
            ..base
        };
        let without_corner = BlackCensus {
            total: 2,
            corner: 0,
            ..base
        };
        let p0 = predict_counts(9, 9, &base).unwrap();
        assert_eq!(predict_counts(9, 9, &moved).unwrap().total, p0.total + 1);
        assert_eq!(
            predict_counts(9, 9, &without_corner).unwrap().total,
            p0.total
        );
    }

    #[test]
    fn moving_a_black_inward_on_a_real_grid() {
        // Same check against the enumeration oracle: black at (1,3) moved
        // to (3,3).
        let border = Grid::parse("..#..\n.....\n.....\n.....\n.....").unwrap();
        let interior = Grid::parse(".....\n.....\n..#..\n.....\n.....").unwrap();
        assert_eq!(
            interior.extract_words().total(),
            border.extract_words().total() + 1
        );
    }

    #[test]
    fn word_bounds_examples() {
        assert_eq!(word_bounds(3, 3, 1), (6, 8));
        assert_eq!(word_bounds(13, 13, 25), (26, 76));
        assert_eq!(word_bounds(1, 1, 0), (2, 2));
    }

    #[test]
    fn length_report_all_white_3x3() {
        let g = Grid::parse("...\n...\n...").unwrap();
        let r = length_report(&g, &g.extract_words()).unwrap();
        assert_eq!(r.letter_slots, 9);
        assert_eq!(r.mean_length, ratio(3, 1));
        assert_eq!(r.lower_bound, ratio(3, 1));
    }

    #[test]
    fn length_report_center_black() {
        let g = Grid::parse("...\n.#.\n...").unwrap();
        let r = length_report(&g, &g.extract_words()).unwrap();
        assert_eq!(r.word_count, 8);
        assert_eq!(r.mean_length, ratio(2, 1));
        assert_eq!(r.lower_bound, ratio(2, 1));
    }

    #[test]
    fn length_bound_13x13_maximal_words() {
        // 2(169-25)/(26+50) = 288/76.
        let bound = ratio(2 * (169 - 25), 13 + 13 + 2 * 25);
        assert_eq!(bound, ratio(72, 19));
        assert!((bound.to_f64().unwrap() - 3.789_473_68).abs() < 1e-6);
    }

    #[test]
    fn length_report_all_black_errors() {
        let g = Grid::parse("#").unwrap();
        assert_eq!(
            length_report(&g, &g.extract_words()),
            Err(LawsError::NoWords)
        );
    }

    #[test]
    fn budget_rounding_examples() {
        assert_eq!(black_budget(13, 13, ratio(15, 1)), 25); // 25.35 -> 25
        assert_eq!(black_budget(12, 12, ratio(15, 1)), 22); // 21.6  -> 22
        assert_eq!(round_half_up(ratio(45, 2)), 23); // 22.5 ties up
        assert_eq!(round_half_up(ratio(0, 1)), 0);
    }

    #[test]
    fn budget_zero_percent_is_zero() {
        for (n, m) in [(1, 1), (3, 7), (13, 13)] {
            assert_eq!(black_budget(n, m, ratio(0, 1)), 0);
        }
    }

    #[test]
    fn budget_monotone_in_percent() {
        let mut last = -1;
        for tenths in 0..=1000 {
            let b = black_budget(11, 13, ratio(tenths, 10));
            assert!(b >= last, "budget dropped at {tenths} tenths of a percent");
            last = b;
        }
    }

    #[test]
    fn feasibility_equality_case() {
        let f = budget_feasibility(15, 15, ratio(1, 5));
        assert_eq!(f.bound, ratio(3, 1));
        assert!(f.short_words);
    }

    #[test]
    fn feasibility_examples() {
        assert!(budget_feasibility(10, 10, ratio(1, 5)).short_words);
        assert!(!budget_feasibility(20, 20, ratio(1, 5)).short_words);
    }

    #[test]
    fn record_table_verifies() {
        let rows = record_table();
        assert_eq!(rows.len(), 9);
        for row in rows {
            assert!(verify_record(row), "record row {}x{} failed", row.side, row.side);
        }
        let r11 = rows.iter().find(|r| r.side == 11).unwrap();
        assert_eq!(r11.min_black, 4);
        assert_eq!(r11.percentage, ratio(3305, 1000));
        let r16 = rows.iter().find(|r| r.side == 16).unwrap();
        assert_eq!(r16.min_black, 20);
        assert_eq!(r16.percentage, ratio(7812, 1000));
        let r8 = rows.iter().find(|r| r.side == 8).unwrap();
        assert_eq!((r8.min_black, r8.count_known), (0, 24));
        assert_eq!(r8.percentage, ratio(0, 1));
    }

    #[test]
    fn verify_record_rejects_wrong_percentage() {
        let bad = RecordGridEntry {
            side: 11,
            min_black: 4,
            percentage: ratio(3306, 1000),
            count_known: 1,
        };
        assert!(!verify_record(&bad));
    }
}
