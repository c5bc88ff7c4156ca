//! Shared test support: seeded random grids with isolated black cells.

use lexigrid::grid::{Cell, Grid};
use lexigrid::laws::black_budget;
use num_rational::Ratio;
use rand::rngs::StdRng;
use rand::Rng;

/// Random n×m grid (dimensions in [3,12]) with random isolated black cells
/// up to the 15% budget. Placement is by rejection, so spacing always holds.
pub fn random_spaced_grid(rng: &mut StdRng) -> Grid {
    let n: usize = rng.random_range(3..=12);
    let m: usize = rng.random_range(3..=12);
    let budget = black_budget(n, m, Ratio::from_integer(15)).max(0) as usize;
    let target = rng.random_range(0..=budget);
    let mut cells = vec![Cell::White(None); n * m];
    let at = |r: usize, c: usize| r * m + c;
    let mut placed = 0;
    let mut attempts = 0;
    while placed < target && attempts < 50 * target.max(1) {
        attempts += 1;
        let r = rng.random_range(0..n);
        let c = rng.random_range(0..m);
        if cells[at(r, c)].is_black() {
            continue;
        }
        let neighbor_black = (r > 0 && cells[at(r - 1, c)].is_black())
            || (r + 1 < n && cells[at(r + 1, c)].is_black())
            || (c > 0 && cells[at(r, c - 1)].is_black())
            || (c + 1 < m && cells[at(r, c + 1)].is_black());
        if neighbor_black {
            continue;
        }
        cells[at(r, c)] = Cell::Black;
        placed += 1;
    }
    Grid::new(n, m, cells).expect("generator dimensions are valid")
}
