//! Crossword-grid combinatorics and corpus statistics for Romanian text.
//!
//! The crate has two halves that meet in the middle:
//!
//! * **Grids** — parse rectangular white/black grids, census black cells by
//!   zone (corners, borders, interior), enumerate across/down words by direct
//!   scan ([`grid`]), and predict the same counts in closed form together with
//!   word-count bounds, the mean-word-length bound, and the black-square
//!   budget rule ([`laws`]). The enumeration is the oracle the formulas are
//!   checked against.
//! * **Corpora** — normalize Romanian text under one of three alphabet
//!   profiles (with diacritic folding), build letter/word frequency tables,
//!   length and syllable distributions ([`corpus`]), rank tables and the
//!   écart rank-deviation metric with its closed-form upper bound
//!   ([`ranking`]), and first-order entropy / informational energy
//!   ([`infometrics`]).
//!
//! Every numeric table the underlying study published is embedded as a named
//! dataset ([`tables`]) and wired into regression checks ([`selfcheck`]).

#![forbid(unsafe_code)]

pub mod corpus;
pub mod grid;
pub mod infometrics;
pub mod laws;
pub mod ranking;
pub mod selfcheck;
pub mod tables;

pub use grid::{BlackCensus, Cell, Grid, GridError, WordCensus, WordSlot, Zone};
pub use laws::{Feasibility, GridPrediction, LawsError, LengthReport, RecordGridEntry};
pub use ranking::{EcartReport, RankError, RankTable};
