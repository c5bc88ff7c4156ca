//! Grid parsing, zone census, and word enumeration by direct scan.
//!
//! A word is a maximal run of white cells in one row (across) or one column
//! (down), length ≥ 1, bounded by black cells or the grid border. One-letter
//! runs count as words. The direct scan here is the ground truth that the
//! closed-form counts in [`crate::laws`] are validated against.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GridError {
    #[error("row {line} has {got} cells, expected {expected}")]
    RaggedRows {
        line: usize,
        expected: usize,
        got: usize,
    },
    #[error("invalid character {ch:?} at line {line}, column {col}")]
    InvalidChar { line: usize, col: usize, ch: char },
    #[error("grid has no cells")]
    EmptyGrid,
}

/// One cell: white (optionally holding a letter A–Z) or black.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cell {
    White(Option<char>),
    Black,
}

impl Cell {
    pub fn is_black(self) -> bool {
        matches!(self, Cell::Black)
    }

    pub fn is_white(self) -> bool {
        !self.is_black()
    }

    fn to_char(self) -> char {
        match self {
            Cell::White(None) => '.',
            Cell::White(Some(letter)) => letter,
            Cell::Black => '#',
        }
    }
}

/// Positional zone of a cell. Every cell belongs to exactly one zone.
///
/// Corners are the distinct corner cells (four in the general case; fewer
/// when a dimension is 1). The border zones are the first/last rows and
/// columns minus the corners, so for a one-row grid the vertical-border zone
/// is empty. The interior may be empty for n or m ≤ 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Zone {
    Corner,
    /// Top or bottom border row, corners excluded.
    HorizontalBorder,
    /// Left or right border column, corners excluded.
    VerticalBorder,
    Interior,
}

/// Black-cell counts partitioned by zone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct BlackCensus {
    /// Total black cells.
    pub total: usize,
    /// Black cells on corner cells.
    pub corner: usize,
    /// Black cells on the top/bottom border rows (corners excluded).
    pub horizontal_border: usize,
    /// Black cells on the left/right border columns (corners excluded).
    pub vertical_border: usize,
    /// Black cells in the interior.
    pub interior: usize,
}

impl BlackCensus {
    /// Black cells anywhere on the non-corner border.
    pub fn border(&self) -> usize {
        self.horizontal_border + self.vertical_border
    }
}

/// A maximal run of white cells.
///
/// For an across word `index` is the row and `start` the first column; for a
/// down word `index` is the column and `start` the first row. All 1-based.
/// `text` is present only when every cell in the run holds a letter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordSlot {
    pub index: usize,
    pub start: usize,
    pub len: usize,
    pub text: Option<String>,
}

/// All across and down words of a grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordCensus {
    pub across: Vec<WordSlot>,
    pub down: Vec<WordSlot>,
}

impl WordCensus {
    pub fn total(&self) -> usize {
        self.across.len() + self.down.len()
    }

    /// Across minus down word count.
    pub fn difference(&self) -> i64 {
        self.across.len() as i64 - self.down.len() as i64
    }
}

/// A rectangular grid of white/black cells, stored row-major.
///
/// Coordinates are 1-based `(row, column)` throughout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    rows: usize,
    cols: usize,
    cells: Vec<Cell>,
}

impl Grid {
    /// Build a grid from row-major cells. `cells.len()` must be `rows * cols`
    /// and both dimensions must be at least 1.
    pub fn new(rows: usize, cols: usize, cells: Vec<Cell>) -> Result<Self, GridError> {
        if rows == 0 || cols == 0 || cells.is_empty() {
            return Err(GridError::EmptyGrid);
        }
        if cells.len() != rows * cols {
            return Err(GridError::RaggedRows {
                line: rows,
                expected: rows * cols,
                got: cells.len(),
            });
        }
        Ok(Grid { rows, cols, cells })
    }

    /// Parse the text grid format: `.` empty white cell, `A`–`Z` lettered
    /// white cell, `#` black cell. Lines starting with `;` are comments and
    /// ignored; all other lines must have equal length. A trailing newline is
    /// optional.
    pub fn parse(text: &str) -> Result<Self, GridError> {
        let mut cells = Vec::new();
        let mut cols = None;
        let mut rows = 0;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.strip_suffix('\r').unwrap_or(raw);
            if line.starts_with(';') {
                continue;
            }
            let mut width = 0;
            for (colno, ch) in line.chars().enumerate() {
                let cell = match ch {
                    '.' => Cell::White(None),
                    '#' => Cell::Black,
                    'A'..='Z' => Cell::White(Some(ch)),
                    other => {
                        return Err(GridError::InvalidChar {
                            line: lineno + 1,
                            col: colno + 1,
                            ch: other,
                        })
                    }
                };
                cells.push(cell);
                width += 1;
            }
            match cols {
                None => cols = Some(width),
                Some(expected) if expected != width => {
                    return Err(GridError::RaggedRows {
                        line: lineno + 1,
                        expected,
                        got: width,
                    })
                }
                Some(_) => {}
            }
            rows += 1;
        }
        let cols = cols.ok_or(GridError::EmptyGrid)?;
        if cols == 0 {
            return Err(GridError::EmptyGrid);
        }
        Grid::new(rows, cols, cells)
    }

    /// Row count (n).
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Column count (m).
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Cell at 1-based `(row, col)`. Panics if out of range.
    pub fn cell(&self, row: usize, col: usize) -> Cell {
        assert!(
            (1..=self.rows).contains(&row) && (1..=self.cols).contains(&col),
            "cell ({row},{col}) outside {}x{} grid",
            self.rows,
            self.cols
        );
        self.cells[(row - 1) * self.cols + (col - 1)]
    }

    /// Number of black cells (p).
    pub fn black_count(&self) -> usize {
        self.cells.iter().filter(|c| c.is_black()).count()
    }

    /// Number of white cells (n·m − p).
    pub fn white_count(&self) -> usize {
        self.cells.len() - self.black_count()
    }

    /// Zone of the 1-based `(row, col)` cell. Purely positional: a corner
    /// cell is a corner no matter what it contains.
    pub fn zone(&self, row: usize, col: usize) -> Zone {
        let row_border = row == 1 || row == self.rows;
        let col_border = col == 1 || col == self.cols;
        match (row_border, col_border) {
            (true, true) => Zone::Corner,
            (true, false) => Zone::HorizontalBorder,
            (false, true) => Zone::VerticalBorder,
            (false, false) => Zone::Interior,
        }
    }

    /// Count black cells per zone.
    pub fn black_census(&self) -> BlackCensus {
        let mut census = BlackCensus::default();
        for row in 1..=self.rows {
            for col in 1..=self.cols {
                if !self.cell(row, col).is_black() {
                    continue;
                }
                census.total += 1;
                match self.zone(row, col) {
                    Zone::Corner => census.corner += 1,
                    Zone::HorizontalBorder => census.horizontal_border += 1,
                    Zone::VerticalBorder => census.vertical_border += 1,
                    Zone::Interior => census.interior += 1,
                }
            }
        }
        census
    }

    /// Enumerate every across and down word as maximal white runs.
    pub fn extract_words(&self) -> WordCensus {
        let across = (1..=self.rows)
            .flat_map(|row| scan_runs(self.cols, row, |pos| self.cell(row, pos)))
            .collect();
        let down = (1..=self.cols)
            .flat_map(|col| scan_runs(self.rows, col, |pos| self.cell(pos, col)))
            .collect();
        WordCensus { across, down }
    }

    /// True when no two black cells are orthogonally adjacent. This is the
    /// precondition under which the closed-form counts in [`crate::laws`]
    /// are exact.
    pub fn spacing_valid(&self) -> bool {
        for row in 1..=self.rows {
            for col in 1..=self.cols {
                if !self.cell(row, col).is_black() {
                    continue;
                }
                if col < self.cols && self.cell(row, col + 1).is_black() {
                    return false;
                }
                if row < self.rows && self.cell(row + 1, col).is_black() {
                    return false;
                }
            }
        }
        true
    }

    /// Render back to the text format with a trailing newline. Comments are
    /// not preserved; `Grid::parse(grid.serialize())` reproduces the grid.
    pub fn serialize(&self) -> String {
        let mut out = String::with_capacity((self.cols + 1) * self.rows);
        for row in 1..=self.rows {
            for col in 1..=self.cols {
                out.push(self.cell(row, col).to_char());
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

/// Maximal white runs along one line; `cell_at` maps a 1-based position on
/// the line to the cell.
fn scan_runs(len: usize, index: usize, cell_at: impl Fn(usize) -> Cell) -> Vec<WordSlot> {
    let mut runs = Vec::new();
    let mut start = None;
    let mut letters: Vec<Option<char>> = Vec::new();
    for pos in 1..=len + 1 {
        let white = pos <= len && cell_at(pos).is_white();
        if white {
            if start.is_none() {
                start = Some(pos);
                letters.clear();
            }
            match cell_at(pos) {
                Cell::White(l) => letters.push(l),
                Cell::Black => unreachable!(),
            }
        } else if let Some(s) = start.take() {
            let text = letters.iter().copied().collect::<Option<String>>();
            runs.push(WordSlot {
                index,
                start: s,
                len: pos - s,
                text,
            });
        }
    }
    runs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(text: &str) -> Grid {
        Grid::parse(text).expect("fixture grid parses")
    }

    #[test]
    fn parse_all_white() {
        let g = grid("..\n..");
        assert_eq!((g.rows(), g.cols()), (2, 2));
        assert_eq!(g.black_count(), 0);
        assert!(g.cells.iter().all(|c| *c == Cell::White(None)));
    }

    #[test]
    fn parse_diagonal_blacks() {
        let g = grid("#.\n.#");
        assert_eq!(g.cell(1, 1), Cell::Black);
        assert_eq!(g.cell(2, 2), Cell::Black);
        assert_eq!(g.cell(1, 2), Cell::White(None));
        assert_eq!(g.black_count(), 2);
    }

    #[test]
    fn parse_ragged_rows() {
        assert_eq!(
            Grid::parse("..\n."),
            Err(GridError::RaggedRows {
                line: 2,
                expected: 2,
                got: 1
            })
        );
    }

    #[test]
    fn parse_rejects_invalid_chars() {
        assert_eq!(
            Grid::parse(".a\n.."),
            Err(GridError::InvalidChar {
                line: 1,
                col: 2,
                ch: 'a'
            })
        );
        // Diacritics belong to corpus ingestion, not grid files.
        assert!(matches!(
            Grid::parse("Ă.\n.."),
            Err(GridError::InvalidChar { ch: 'Ă', .. })
        ));
    }

    #[test]
    fn parse_empty_inputs() {
        assert_eq!(Grid::parse(""), Err(GridError::EmptyGrid));
        assert_eq!(Grid::parse("; only a comment\n"), Err(GridError::EmptyGrid));
    }

    #[test]
    fn parse_skips_comments_and_crlf() {
        let g = grid("; header\n.#\r\n..\r\n");
        assert_eq!((g.rows(), g.cols()), (2, 2));
        assert_eq!(g.cell(1, 2), Cell::Black);
    }

    #[test]
    fn letters_are_kept() {
        let g = grid("AN.\n#..");
        assert_eq!(g.cell(1, 1), Cell::White(Some('A')));
        assert_eq!(g.cell(1, 2), Cell::White(Some('N')));
    }

    #[test]
    fn census_by_hand_5x5() {
        // Blacks at (1,1) corner, (1,3) top border, (3,3) interior.
        let g = grid("#.#..\n.....\n..#..\n.....\n.....");
        let c = g.black_census();
        assert_eq!(c.corner, 1);
        assert_eq!(c.horizontal_border, 1);
        assert_eq!(c.vertical_border, 0);
        assert_eq!(c.interior, 1);
        assert_eq!(c.total, 3);
    }

    #[test]
    fn census_all_white_is_zero() {
        let c = grid("...\n...\n...").black_census();
        assert_eq!(c, BlackCensus::default());
    }

    #[test]
    fn census_left_border() {
        // (2,1) is on the left border column, not a corner.
        let c = grid("...\n#..\n...").black_census();
        assert_eq!(c.vertical_border, 1);
        assert_eq!(c.corner + c.horizontal_border + c.interior, 0);
    }

    #[test]
    fn zone_of_degenerate_grids() {
        // One row: two corners, the middle cell counts as horizontal border.
        let g = grid("...");
        assert_eq!(g.zone(1, 1), Zone::Corner);
        assert_eq!(g.zone(1, 2), Zone::HorizontalBorder);
        assert_eq!(g.zone(1, 3), Zone::Corner);
        // One column: middle cell is on both side borders, corners aside.
        let g = grid(".\n.\n.");
        assert_eq!(g.zone(2, 1), Zone::VerticalBorder);
        // 2x2 is all corners.
        let g = grid("..\n..");
        for r in 1..=2 {
            for c in 1..=2 {
                assert_eq!(g.zone(r, c), Zone::Corner);
            }
        }
    }

    #[test]
    fn words_all_white_3x3() {
        let words = grid("...\n...\n...").extract_words();
        assert_eq!(words.across.len(), 3);
        assert_eq!(words.down.len(), 3);
        assert_eq!(words.total(), 6);
    }

    #[test]
    fn words_center_black_3x3() {
        let words = grid("...\n.#.\n...").extract_words();
        let across_lens: Vec<usize> = words.across.iter().map(|w| w.len).collect();
        assert_eq!(across_lens, vec![3, 1, 1, 3]);
        assert_eq!(words.down.len(), 4);
        assert_eq!(words.total(), 8);
    }

    #[test]
    fn words_one_row_with_black() {
        // 1x3 with black in the middle: two across one-letter words and the
        // two remaining one-cell columns as down words.
        let words = grid(".#.").extract_words();
        assert_eq!(words.across.len(), 2);
        assert!(words.across.iter().all(|w| w.len == 1));
        assert_eq!(words.down.len(), 2);
    }

    #[test]
    fn word_slot_positions_and_text() {
        let words = grid("AN#AC\n.....").extract_words();
        assert_eq!(
            words.across[0],
            WordSlot {
                index: 1,
                start: 1,
                len: 2,
                text: Some("AN".into())
            }
        );
        assert_eq!(
            words.across[1],
            WordSlot {
                index: 1,
                start: 4,
                len: 2,
                text: Some("AC".into())
            }
        );
        // Second row is unlettered, so no text.
        assert_eq!(words.across[2].text, None);
    }

    #[test]
    fn spacing_adjacent_blacks() {
        assert!(!grid("##.").spacing_valid());
        assert!(!grid("#..\n#..\n...").spacing_valid());
        assert!(grid("#.\n.#").spacing_valid());
        assert!(grid("...\n...").spacing_valid());
    }

    #[test]
    fn roundtrip_parse_serialize() {
        let g = grid("; note\nAN#..\n.#...\n.....");
        assert_eq!(Grid::parse(&g.serialize()).unwrap(), g);
    }

    #[test]
    fn word_cover_matches_white_count() {
        let g = grid("#.#..\n.....\n..#..\n....#\n.....");
        let words = g.extract_words();
        let across_cells: usize = words.across.iter().map(|w| w.len).sum();
        let down_cells: usize = words.down.iter().map(|w| w.len).sum();
        assert_eq!(across_cells, g.white_count());
        assert_eq!(down_cells, g.white_count());
    }
}
