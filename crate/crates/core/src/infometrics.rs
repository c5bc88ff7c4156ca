//! First-order Shannon entropy and Onicescu informational energy over
//! frequency tables.
//!
//! Entropy is reported in bits: −Σ pᵢ·log₂ pᵢ with 0·log 0 = 0, which equals
//! the base-10 form divided by log₁₀ 2. Energy is Σ pᵢ², ranging from 1/n
//! (uniform over n symbols) up to 1 (degenerate). Both are invariant under
//! symbol relabeling and under appending zero-count symbols.

use crate::corpus::{CorpusError, FrequencyTable};

/// −Σ pᵢ·log₂ pᵢ over the table's probabilities. Errs on an empty table.
pub fn entropy_bits(table: &FrequencyTable) -> Result<f64, CorpusError> {
    Ok(table
        .probabilities()?
        .into_iter()
        .filter(|&(_, p)| p > 0.0)
        .map(|(_, p)| -p * p.log2())
        .sum())
}

/// Σ pᵢ² over the table's probabilities. Errs on an empty table.
pub fn informational_energy(table: &FrequencyTable) -> Result<f64, CorpusError> {
    Ok(table
        .probabilities()?
        .into_iter()
        .map(|(_, p)| p * p)
        .sum())
}
