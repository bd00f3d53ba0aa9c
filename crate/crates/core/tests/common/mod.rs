//! Independent string-based oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use prodfree::constructions::{odd_occurrence, GammaSpec};
use prodfree::{Alphabet, Dfa, LayeredSet, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn ratio(n: u128, d: u128) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// All words of length `n` over `symbols`, in lexicographic order.
pub fn strings_of_len(symbols: &str, n: usize) -> Vec<String> {
    let mut out = vec![String::new()];
    for _ in 0..n {
        out = out
            .iter()
            .flat_map(|p| symbols.chars().map(move |c| format!("{p}{c}")))
            .collect();
    }
    out
}

/// All words of length `1..=n`, shortlex.
pub fn ball_strings(symbols: &str, n: usize) -> Vec<String> {
    (1..=n).flat_map(|k| strings_of_len(symbols, k)).collect()
}

pub fn naive_product_free(set: &BTreeSet<String>) -> bool {
    set.iter()
        .all(|x| set.iter().all(|y| !set.contains(&format!("{x}{y}"))))
}

pub fn to_strings(set: &LayeredSet) -> BTreeSet<String> {
    set.words().iter().map(Word::to_string).collect()
}

pub fn from_strings(alphabet: &Alphabet, horizon: usize, words: &BTreeSet<String>) -> LayeredSet {
    let ws: Vec<Word> = words.iter().map(|w| alphabet.word(w).unwrap()).collect();
    LayeredSet::from_words(alphabet, &ws, horizon).unwrap()
}

/// Each word of the ball kept independently with probability `p`.
pub fn random_subset(symbols: &str, horizon: usize, p: f64, seed: u64) -> BTreeSet<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    ball_strings(symbols, horizon)
        .into_iter()
        .filter(|_| rng.gen_bool(p))
        .collect()
}

/// A regular set composed from odd-occurrence sets, length filters and
/// boolean operations.
pub fn random_regular(alphabet: &Alphabet, seed: u64) -> Dfa {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gammas = GammaSpec::all(alphabet);
    let atom = |rng: &mut ChaCha8Rng| -> Dfa {
        match rng.gen_range(0..4) {
            0 => Dfa::length_parity(alphabet, rng.gen_bool(0.5)),
            1 => {
                let lens: Vec<usize> = (1..=6).filter(|_| rng.gen_bool(0.5)).collect();
                Dfa::with_lengths(alphabet, &lens).complement()
            }
            _ => odd_occurrence(alphabet, &gammas[rng.gen_range(0..gammas.len())]).unwrap(),
        }
    };
    let mut d = atom(&mut rng);
    for _ in 0..rng.gen_range(1..=3) {
        let e = atom(&mut rng);
        d = match rng.gen_range(0..4) {
            0 => d.union(&e).unwrap(),
            1 => d.intersect(&e).unwrap(),
            2 => d.difference(&e).unwrap(),
            _ => d.complement().intersect(&e).unwrap(),
        }
        .minimize();
    }
    d
}

/// The first maximum over all product-free subsets of `F≤(N)`, scanning
/// subsets with the first shortlex word as the most significant bit, from
/// the full ball downwards. Returns (score numerator over q^N, witness).
pub fn brute_force_max(symbols: &str, horizon: usize) -> (u128, BTreeSet<String>) {
    let items = ball_strings(symbols, horizon);
    let m = items.len();
    assert!(m <= 20, "too many subsets");
    let q = symbols.chars().count() as u128;
    let weight = |w: &String| q.pow((horizon - w.chars().count()) as u32);
    let mut best: Option<(u128, BTreeSet<String>)> = None;
    for mask in (0u32..1 << m).rev() {
        let set: BTreeSet<String> = (0..m)
            .filter(|&i| mask >> (m - 1 - i) & 1 == 1)
            .map(|i| items[i].clone())
            .collect();
        if !naive_product_free(&set) {
            continue;
        }
        let score: u128 = set.iter().map(weight).sum();
        if best.as_ref().is_none_or(|(b, _)| score > *b) {
            best = Some((score, set));
        }
    }
    best.unwrap()
}
