//! Deciding product-freeness and checking the pairwise density inequality.
//!
//! For an explicit set the truncation is the universe: a product `x·y`
//! longer than the horizon is not constrained. This is why maximum-density
//! product-free subsets of a ball can exceed density `1/2`.

use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::density::DensityProfile;
use crate::error::Result;
use crate::report;
use crate::sets::{Dfa, LayeredSet};
use crate::words::Word;

/// Words `x, y, z` of the set under test with `x·y = z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessTriple {
    pub x: Word,
    pub y: Word,
    pub z: Word,
}

impl WitnessTriple {
    /// `x·y = z`.
    pub fn is_factorization(&self) -> bool {
        self.x.concat(&self.y).map(|w| w == self.z).unwrap_or(false)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    ProductFree,
    Witness(WitnessTriple),
}

impl Verdict {
    pub fn is_product_free(&self) -> bool {
        matches!(self, Verdict::ProductFree)
    }

    pub fn witness(&self) -> Option<&WitnessTriple> {
        match self {
            Verdict::ProductFree => None,
            Verdict::Witness(w) => Some(w),
        }
    }
}

/// Checks an explicit set. The witness minimizes `|z|`, then the rank of
/// `z`, then `|x|`.
pub fn check_explicit(set: &LayeredSet) -> Verdict {
    let horizon = set.horizon();
    let nonempty: Vec<bool> = (0..=horizon).map(|n| n > 0 && set.count(n) > 0).collect();
    for len in 2..=horizon {
        if !nonempty[len] {
            continue;
        }
        let splits: Vec<(usize, u64)> = (1..len)
            .filter(|&m| nonempty[m] && nonempty[len - m])
            .map(|m| (m, set.layer_len(len - m)))
            .collect();
        if splits.is_empty() {
            continue;
        }
        for r in set.ranks(len) {
            for &(m, base) in &splits {
                if set.contains_rank(m, r / base) && set.contains_rank(len - m, r % base) {
                    let a = set.alphabet();
                    let z = a.unrank(len, r).expect("member rank");
                    let (x, y) = z.split_at(m).expect("proper split");
                    return Verdict::Witness(WitnessTriple { x, y, z });
                }
            }
        }
    }
    Verdict::ProductFree
}

/// Decides whether `(L·L) ∩ L` is empty, over all lengths. The witness has
/// the shortest possible `z` (least in lexicographic order among those) and
/// the shortest `x` splitting it.
pub fn check_regular(dfa: &Dfa, cap: usize) -> Result<Verdict> {
    let square = dfa.concat(dfa, cap)?;
    let overlap = square.intersect(dfa)?;
    let Some(z) = overlap.shortest_word() else {
        return Ok(Verdict::ProductFree);
    };
    let (x, y) = (1..z.len())
        .filter_map(|m| z.split_at(m))
        .find(|(x, y)| dfa.accepts(x) && dfa.accepts(y))
        .expect("a word of L·L splits into two members of L");
    Ok(Verdict::Witness(WitnessTriple { x, y, z }))
}

/// One instance of `d(m)d(n) + d(m+n) ≤ 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairwiseEntry {
    pub m: usize,
    pub n: usize,
    #[serde(serialize_with = "report::rational")]
    pub lhs: BigRational,
    pub violated: bool,
}

/// Evaluates `d(m)d(n) + d(m+n)` for all `1 ≤ m ≤ n` with `m + n ≤ H`.
pub fn pairwise_inequality(profile: &DensityProfile) -> Vec<PairwiseEntry> {
    let h = profile.horizon();
    let one = BigRational::one();
    let mut out = Vec::new();
    for m in 1..=h / 2 {
        for n in m..=h - m {
            let lhs = profile.d(m) * profile.d(n) + profile.d(m + n);
            let violated = lhs > one;
            out.push(PairwiseEntry { m, n, lhs, violated });
        }
    }
    out
}
