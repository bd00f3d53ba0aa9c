//! Exact analysis of product-free subsets of the free semigroup over a
//! finite alphabet.
//!
//! A set `S` of nonempty words is product-free when no `x, y, z ∈ S`
//! satisfy `x·y = z`. The crate decides product-freeness for explicit
//! truncated sets and for regular sets given by automata, computes layer
//! densities exactly (each word of length `n` weighs `q^-n`), evaluates the
//! chained density inequalities that bound the Banach density of such sets
//! by `1/2`, builds the standard extremal and pathological examples, and
//! searches exhaustively for maximum-density product-free subsets of small
//! balls.

pub mod error;
pub mod report;
pub mod sets;
pub mod words;
pub mod density;
pub mod productfree;
pub mod proofkit;
pub mod constructions;
pub mod search;
pub mod cli;

pub use error::{Error, Result};
pub use sets::{Dfa, LayerCount, LayeredSet, WordSet};
pub use words::{Alphabet, Word};
