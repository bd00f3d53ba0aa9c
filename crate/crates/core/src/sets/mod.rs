//! Word sets: explicit truncations of the free semigroup and regular sets
//! given by complete automata.

mod dfa;
mod explicit;

pub use dfa::{Dfa, DEFAULT_STATE_CAP};
pub use explicit::{LayeredSet, DEFAULT_BIT_BUDGET, DEFAULT_EXPLICIT_HORIZON};

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::words::{Alphabet, Word};

/// `|S(n)|` together with `|F(n)| = q^n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LayerCount {
    pub n: usize,
    #[serde(serialize_with = "crate::report::big_as_string")]
    pub count: BigUint,
    #[serde(serialize_with = "crate::report::big_as_string")]
    pub total: BigUint,
}

impl LayerCount {
    pub fn new(q: usize, n: usize, count: BigUint) -> Self {
        let total = BigUint::from(q).pow(n as u32);
        debug_assert!(count <= total);
        LayerCount { n, count, total }
    }
}

/// Operations shared by explicit and regular word sets.
pub trait WordSet {
    fn alphabet(&self) -> &Alphabet;

    /// Largest length at which membership is known; `None` for sets
    /// defined at every length.
    fn horizon(&self) -> Option<usize>;

    fn contains(&self, w: &Word) -> bool;

    /// `|S(n)|`.
    fn layer_count(&self, n: usize) -> Result<BigUint>;

    /// `|S(1)|, …, |S(h)|`.
    fn layer_counts(&self, h: usize) -> Result<Vec<BigUint>> {
        (1..=h).map(|n| self.layer_count(n)).collect()
    }

    /// `|S(n; ℓ₁,…,ℓₖ)|`.
    fn refined_count(&self, n: usize, lengths: &[usize]) -> Result<BigUint>;

    /// Whether the set is given by an automaton (and so has an eventually
    /// periodic density profile).
    fn is_regular(&self) -> bool {
        false
    }
}

/// Checks `1 ≤ ℓ₁ < ℓ₂ < ⋯ < ℓₖ < n`.
pub fn validate_lengths(n: usize, lengths: &[usize]) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidLengths("n must be positive".into()));
    }
    if lengths.first() == Some(&0) {
        return Err(Error::InvalidLengths("lengths must be positive".into()));
    }
    if lengths.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidLengths(format!(
            "lengths {lengths:?} are not strictly increasing"
        )));
    }
    if lengths.last().is_some_and(|&l| l >= n) {
        return Err(Error::InvalidLengths(format!(
            "lengths {lengths:?} must lie below n = {n}"
        )));
    }
    Ok(())
}
