//! The named example sets: odd-occurrence sets, the counting-measure
//! pathology, the asymmetric triple `(X, Y, Z)`, and a seeded greedy
//! generator of product-free truncations.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::proofkit::Surd;
use crate::sets::{Dfa, LayeredSet, DEFAULT_BIT_BUDGET};
use crate::words::Alphabet;

/// A nonempty set `Γ` of symbol indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaSpec {
    symbols: Vec<u8>,
}

impl GammaSpec {
    /// Parses the symbols of `text`, e.g. `"ab"`.
    pub fn new(alphabet: &Alphabet, text: &str) -> Result<Self> {
        let mut symbols = Vec::new();
        for c in text.chars() {
            let i = alphabet.index_of(c).ok_or_else(|| Error::UnknownSymbol {
                symbol: c,
                alphabet: alphabet.to_string(),
            })?;
            symbols.push(i as u8);
        }
        GammaSpec::from_indices(alphabet, symbols)
    }

    pub fn from_indices(alphabet: &Alphabet, mut symbols: Vec<u8>) -> Result<Self> {
        symbols.sort_unstable();
        symbols.dedup();
        if symbols.is_empty() {
            return Err(Error::InvalidArgument("gamma must be a nonempty set of symbols".into()));
        }
        if let Some(&s) = symbols.iter().find(|&&s| s as usize >= alphabet.size()) {
            return Err(Error::SymbolIndex {
                index: s as usize,
                q: alphabet.size(),
            });
        }
        Ok(GammaSpec { symbols })
    }

    /// All `2^q − 1` nonempty subsets, by bitmask.
    pub fn all(alphabet: &Alphabet) -> Vec<GammaSpec> {
        let q = alphabet.size();
        (1u32..1 << q)
            .map(|mask| GammaSpec {
                symbols: (0..q as u8).filter(|&i| mask >> i & 1 == 1).collect(),
            })
            .collect()
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn contains(&self, symbol: u8) -> bool {
        self.symbols.binary_search(&symbol).is_ok()
    }
}

/// `O_Γ`: words with an odd number of occurrences of symbols from `Γ`.
pub fn odd_occurrence(alphabet: &Alphabet, gamma: &GammaSpec) -> Result<Dfa> {
    let q = alphabet.size();
    if let Some(&s) = gamma.symbols.iter().find(|&&s| s as usize >= q) {
        return Err(Error::SymbolIndex { index: s as usize, q });
    }
    let mut delta = Vec::with_capacity(2 * q);
    for state in 0..2u32 {
        for c in 0..q as u8 {
            delta.push(if gamma.contains(c) { 1 - state } else { state });
        }
    }
    Dfa::new(alphabet, 0, vec![false, true], delta)
}

/// Lengths `(2ᵐ, 2ᵐ + c]` for `m ≥ c`, up to `horizon`.
pub fn pathology_lengths(c: usize, horizon: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut m = c;
    while m < usize::BITS as usize - 1 {
        let base = 1usize << m;
        if base >= horizon {
            break;
        }
        out.extend((base + 1..=base + c).take_while(|&l| l <= horizon));
        m += 1;
    }
    out
}

/// Every word whose length lies in `(2ᵐ, 2ᵐ + c]` for some `m ≥ c`,
/// truncated at `horizon`.
///
/// Product-free only while `horizon < 2^(c+1) + 2`: beyond that,
/// `(2ᶜ+1) + (2ᶜ+1)` is itself an included length.
pub fn counting_pathology(alphabet: &Alphabet, c: usize, horizon: usize) -> Result<LayeredSet> {
    if alphabet.size() < 2 {
        return Err(Error::InvalidArgument("the pathology needs at least two symbols".into()));
    }
    if c < 2 || c >= usize::BITS as usize - 2 {
        return Err(Error::InvalidArgument(format!("c = {c} is out of range")));
    }
    let needed = (1usize << c) + c;
    if horizon < needed {
        return Err(Error::InvalidArgument(format!(
            "horizon {horizon} is below 2^c + c = {needed}"
        )));
    }
    let lengths = pathology_lengths(c, horizon);
    let bits: u128 = lengths
        .iter()
        .map(|&l| alphabet.layer_size(l).map(u128::from).unwrap_or(u128::MAX))
        .fold(0u128, u128::saturating_add);
    if bits > DEFAULT_BIT_BUDGET as u128 {
        return Err(Error::BudgetExceeded {
            needed: bits,
            budget: DEFAULT_BIT_BUDGET as u128,
        });
    }
    LayeredSet::full_layers(alphabet, horizon, lengths)
}

/// The sets `W ⊆ F(n)`, `X = W·F ∪ W`, `Y = F·W ∪ W` and `Z = F ∖ X·Y`.
#[derive(Debug, Clone)]
pub struct AsymmetricTriple {
    pub n: usize,
    pub epsilon: BigRational,
    /// The first `⌊φ·qⁿ⌋` words of `F(n)`.
    pub w: LayeredSet,
    pub w_size: u64,
    /// `||W|/qⁿ − φ| < ε/3`. The floor choice of `|W|` can miss this gap
    /// even when another size would meet it.
    pub within_gap: bool,
    pub x: Dfa,
    pub y: Dfa,
    pub z: Dfa,
}

impl AsymmetricTriple {
    /// `|W|/qⁿ`, the layer density of `X` and `Y` from length `n` on.
    pub fn w_density(&self) -> BigRational {
        let total = self.w.layer_len(self.n);
        BigRational::new(self.w_size.into(), total.into())
    }
}

/// `⌊φ·m⌋` in exact integer arithmetic: the largest `s` with
/// `(2s + m)² < 5m²`.
pub fn floor_phi_times(m: &BigUint) -> BigUint {
    if m.is_zero() {
        return BigUint::zero();
    }
    // ⌊(√5·m − m)/2⌋ = ⌊(⌊√5·m⌋ − m)/2⌋
    let root = (m * m * 5u32).sqrt();
    (root - m) / 2u32
}

fn gap_ok(s: &BigUint, total: &BigUint, third: &BigRational) -> bool {
    let ratio = BigRational::new(s.clone().into(), total.clone().into());
    let diff = Surd::from_rational(ratio) - Surd::phi();
    let third = Surd::from_rational(third.clone());
    diff < third && -diff < third
}

pub fn asymmetric_triple(alphabet: &Alphabet, n: usize, epsilon: &BigRational, cap: usize) -> Result<AsymmetricTriple> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    if *epsilon <= BigRational::zero() {
        return Err(Error::InvalidArgument("epsilon must be positive".into()));
    }
    let total = alphabet.layer_size(n).ok_or(Error::BudgetExceeded {
        needed: u128::MAX,
        budget: DEFAULT_BIT_BUDGET as u128,
    })?;
    if total > DEFAULT_BIT_BUDGET {
        return Err(Error::BudgetExceeded {
            needed: total as u128,
            budget: DEFAULT_BIT_BUDGET as u128,
        });
    }
    let total_big = BigUint::from(total);
    let s = floor_phi_times(&total_big);
    let third = epsilon / BigRational::from_integer(3.into());
    let within_gap = gap_ok(&s, &total_big, &third);
    if !within_gap && !gap_ok(&(&s + BigUint::one()), &total_big, &third) {
        return Err(Error::Precondition(format!(
            "no size of W in F({n}) lies within epsilon/3 of phi"
        )));
    }
    let w_size = s.to_u64().expect("bounded by q^n");

    let mut w = LayeredSet::empty(alphabet, n)?;
    for r in 0..w_size {
        w.insert_rank(n, r)?;
    }
    let w_dfa = Dfa::from_explicit(&w)?;
    let all = Dfa::universal(alphabet);
    let x = w_dfa.union(&w_dfa.concat(&all, cap)?)?.minimize();
    let y = w_dfa.union(&all.concat(&w_dfa, cap)?)?.minimize();
    let z = x.concat(&y, cap)?.complement().minimize();
    Ok(AsymmetricTriple {
        n,
        epsilon: epsilon.clone(),
        w,
        w_size,
        within_gap,
        x,
        y,
        z,
    })
}

/// Order in which the greedy generator offers words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Schedule {
    /// All words of the ball in one shuffled order.
    Uniform,
    /// Odd-length words first (shuffled), then even-length words.
    OddLengthsFirst,
    /// Uniform order, but layer `n` stops accepting words once its density
    /// reaches `caps[n − 1]` (layers past the list are uncapped).
    LayerCaps(Vec<BigRational>),
}

/// Offers every word of `F≤(N)` in a seeded order and keeps each one whose
/// insertion leaves the truncation product-free.
pub fn greedy_random_productfree(
    alphabet: &Alphabet,
    horizon: usize,
    seed: u64,
    schedule: &Schedule,
) -> Result<LayeredSet> {
    let mut set = LayeredSet::empty(alphabet, horizon)?;
    let ball: u128 = (1..=horizon)
        .map(|n| alphabet.layer_size(n).map(u128::from).unwrap_or(u128::MAX))
        .fold(0u128, u128::saturating_add);
    if ball > DEFAULT_BIT_BUDGET as u128 {
        return Err(Error::BudgetExceeded {
            needed: ball,
            budget: DEFAULT_BIT_BUDGET as u128,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<(usize, u64)> = (1..=horizon)
        .flat_map(|n| (0..set.layer_len(n)).map(move |r| (n, r)))
        .collect();
    match schedule {
        Schedule::Uniform | Schedule::LayerCaps(_) => order.shuffle(&mut rng),
        Schedule::OddLengthsFirst => {
            let (mut odd, mut even): (Vec<_>, Vec<_>) = order.into_iter().partition(|&(n, _)| n % 2 == 1);
            odd.shuffle(&mut rng);
            even.shuffle(&mut rng);
            odd.extend(even);
            order = odd;
        }
    }
    let caps: Vec<Option<u64>> = (1..=horizon)
        .map(|n| match schedule {
            Schedule::LayerCaps(caps) => caps.get(n - 1).map(|c| {
                let t = c * BigRational::from_integer(set.layer_len(n).into());
                t.ceil().to_integer().to_u64().unwrap_or(u64::MAX)
            }),
            _ => None,
        })
        .collect();

    for (n, r) in order {
        if caps[n - 1].is_some_and(|cap| set.count(n) >= cap) {
            continue;
        }
        if can_insert(&set, n, r) {
            set.insert_rank(n, r)?;
        }
    }
    Ok(set)
}

/// Whether adding `(n, r)` keeps `set` product-free, checking only the
/// products that involve the new word.
fn can_insert(set: &LayeredSet, n: usize, r: u64) -> bool {
    let horizon = set.horizon();
    // the new word as a product of two members
    for m in 1..n {
        let base = set.layer_len(n - m);
        if set.contains_rank(m, r / base) && set.contains_rank(n - m, r % base) {
            return false;
        }
    }
    if 2 * n <= horizon {
        let base = set.layer_len(n);
        if set.contains_rank(2 * n, r * base + r) {
            return false;
        }
    }
    // the new word as a factor of a member
    for k in 1..=horizon.saturating_sub(n) {
        if set.count(k) == 0 || set.count(n + k) == 0 {
            continue;
        }
        let (shift_k, shift_n) = (set.layer_len(k), set.layer_len(n));
        for y in set.ranks(k) {
            if set.contains_rank(n + k, r * shift_k + y) || set.contains_rank(n + k, y * shift_n + r) {
                return false;
            }
        }
    }
    true
}
