use bitvec::prelude::*;
use num_bigint::BigUint;

use super::{validate_lengths, WordSet};
use crate::error::{Error, Result};
use crate::words::{layer_size, Alphabet, Word, WordList};

/// Default cap on the number of bit positions a [`LayeredSet`] may allocate.
pub const DEFAULT_BIT_BUDGET: u64 = 1 << 28;

/// Default horizon for explicit sets.
pub const DEFAULT_EXPLICIT_HORIZON: usize = 16;

/// A subset of the ball `F_≤(N)` stored as one membership bitset per layer.
///
/// Layer `n` is indexed by lexicographic rank over `F(n)`. Empty layers are
/// not allocated.
#[derive(Clone)]
pub struct LayeredSet {
    alphabet: Alphabet,
    horizon: usize,
    layers: Vec<Option<BitVec>>,
}

impl LayeredSet {
    pub fn empty(alphabet: &Alphabet, horizon: usize) -> Result<Self> {
        if horizon == 0 {
            return Err(Error::InvalidArgument("horizon must be at least 1".into()));
        }
        alphabet.layer_size(horizon).ok_or(Error::BudgetExceeded {
            needed: (alphabet.size() as u128).saturating_pow(horizon as u32),
            budget: u64::MAX as u128,
        })?;
        Ok(LayeredSet {
            alphabet: alphabet.clone(),
            horizon,
            layers: vec![None; horizon],
        })
    }

    /// The explicit set holding exactly `words`.
    pub fn from_words<'a>(
        alphabet: &Alphabet,
        words: impl IntoIterator<Item = &'a Word>,
        horizon: usize,
    ) -> Result<Self> {
        let mut set = LayeredSet::empty(alphabet, horizon)?;
        for w in words {
            alphabet.ensure_same(w.alphabet())?;
            if w.len() > horizon {
                return Err(Error::BeyondHorizon {
                    len: w.len(),
                    horizon,
                });
            }
            set.insert_rank(w.len(), w.rank()?)?;
        }
        Ok(set)
    }

    /// Every word of `F(n)` for each listed length.
    pub fn full_layers(alphabet: &Alphabet, horizon: usize, lengths: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut set = LayeredSet::empty(alphabet, horizon)?;
        for n in lengths {
            set.fill_layer(n)?;
        }
        Ok(set)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    /// `q^n` for a length inside the horizon.
    pub fn layer_len(&self, n: usize) -> u64 {
        layer_size(self.alphabet.size(), n).expect("checked at construction")
    }

    fn check_len(&self, n: usize) -> Result<()> {
        if n == 0 {
            Err(Error::EmptyWord)
        } else if n > self.horizon {
            Err(Error::BeyondHorizon {
                len: n,
                horizon: self.horizon,
            })
        } else {
            Ok(())
        }
    }

    fn layer_mut(&mut self, n: usize) -> Result<&mut BitVec> {
        self.check_len(n)?;
        let size = self.layer_len(n);
        if self.layers[n - 1].is_none() {
            if size > DEFAULT_BIT_BUDGET {
                return Err(Error::BudgetExceeded {
                    needed: size as u128,
                    budget: DEFAULT_BIT_BUDGET as u128,
                });
            }
            self.layers[n - 1] = Some(bitvec![0; size as usize]);
        }
        Ok(self.layers[n - 1].as_mut().expect("allocated above"))
    }

    pub fn layer(&self, n: usize) -> Option<&BitSlice> {
        if n == 0 || n > self.horizon {
            return None;
        }
        self.layers[n - 1].as_deref()
    }

    pub fn insert_rank(&mut self, n: usize, rank: u64) -> Result<()> {
        let size = {
            self.check_len(n)?;
            self.layer_len(n)
        };
        if rank >= size {
            return Err(Error::RankOutOfRange {
                rank: rank as u128,
                q: self.alphabet.size(),
                n,
            });
        }
        self.layer_mut(n)?.set(rank as usize, true);
        Ok(())
    }

    pub fn remove_rank(&mut self, n: usize, rank: u64) {
        if let Some(Some(bits)) = self.layers.get_mut(n.wrapping_sub(1)) {
            if (rank as usize) < bits.len() {
                bits.set(rank as usize, false);
            }
        }
    }

    pub fn insert(&mut self, w: &Word) -> Result<()> {
        self.alphabet.ensure_same(w.alphabet())?;
        self.insert_rank(w.len(), w.rank()?)
    }

    pub fn fill_layer(&mut self, n: usize) -> Result<()> {
        self.layer_mut(n)?.fill(true);
        Ok(())
    }

    #[inline]
    pub fn contains_rank(&self, n: usize, rank: u64) -> bool {
        match self.layer(n) {
            Some(bits) => bits.get(rank as usize).map(|b| *b).unwrap_or(false),
            None => false,
        }
    }

    pub fn count(&self, n: usize) -> u64 {
        self.layer(n).map(|b| b.count_ones() as u64).unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        (1..=self.horizon).map(|n| self.count(n)).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.total() == 0
    }

    /// Ranks of the members of layer `n`, ascending.
    pub fn ranks(&self, n: usize) -> impl Iterator<Item = u64> + '_ {
        self.layer(n)
            .into_iter()
            .flat_map(|bits| bits.iter_ones().map(|r| r as u64))
    }

    /// Members in shortlex order.
    pub fn words(&self) -> Vec<Word> {
        (1..=self.horizon)
            .flat_map(|n| {
                self.ranks(n)
                    .map(move |r| self.alphabet.unrank(n, r).expect("rank in range"))
            })
            .collect()
    }

    fn zip_with(&self, other: &LayeredSet, f: impl Fn(bool, bool) -> bool) -> Result<LayeredSet> {
        self.alphabet.ensure_same(&other.alphabet)?;
        if self.horizon != other.horizon {
            return Err(Error::InvalidArgument(format!(
                "horizon mismatch: {} vs {}",
                self.horizon, other.horizon
            )));
        }
        let mut out = LayeredSet::empty(&self.alphabet, self.horizon)?;
        for n in 1..=self.horizon {
            let empty_result = f(false, false);
            if self.layer(n).is_none() && other.layer(n).is_none() && !empty_result {
                continue;
            }
            let size = self.layer_len(n) as usize;
            let bits: BitVec = (0..size)
                .map(|r| {
                    let a = self.layer(n).map(|b| b[r]).unwrap_or(false);
                    let b = other.layer(n).map(|b| b[r]).unwrap_or(false);
                    f(a, b)
                })
                .collect();
            if bits.any() {
                *out.layer_mut(n)? = bits;
            }
        }
        Ok(out)
    }

    pub fn union(&self, other: &LayeredSet) -> Result<LayeredSet> {
        self.zip_with(other, |a, b| a || b)
    }

    pub fn intersect(&self, other: &LayeredSet) -> Result<LayeredSet> {
        self.zip_with(other, |a, b| a && b)
    }

    pub fn difference(&self, other: &LayeredSet) -> Result<LayeredSet> {
        self.zip_with(other, |a, b| a && !b)
    }

    /// Complement within `F_≤(N)`.
    pub fn complement(&self) -> Result<LayeredSet> {
        let empty = LayeredSet::empty(&self.alphabet, self.horizon)?;
        self.zip_with(&empty, |a, _| !a)
    }

    /// `{ w1·w2 : w1 ∈ self, w2 ∈ other, |w1| + |w2| ≤ cap }`.
    pub fn minkowski_product(&self, other: &LayeredSet, cap: usize) -> Result<LayeredSet> {
        self.alphabet.ensure_same(&other.alphabet)?;
        let mut out = LayeredSet::empty(&self.alphabet, cap)?;
        for m in 1..=self.horizon.min(cap.saturating_sub(1)) {
            if self.count(m) == 0 {
                continue;
            }
            for n in 1..=other.horizon.min(cap - m) {
                if other.count(n) == 0 {
                    continue;
                }
                let shift = self.layer_len(n);
                let lefts: Vec<u64> = self.ranks(m).collect();
                let rights: Vec<u64> = other.ranks(n).collect();
                let layer = out.layer_mut(m + n)?;
                for &x in &lefts {
                    for &y in &rights {
                        layer.set((x * shift + y) as usize, true);
                    }
                }
            }
        }
        Ok(out)
    }

    /// `S(n; ℓ₁,…,ℓₖ)`: members of layer `n` with no prefix in any `S(ℓᵢ)`,
    /// returned as a set supported on layer `n`.
    pub fn prefix_excluded(&self, n: usize, lengths: &[usize]) -> Result<LayeredSet> {
        validate_lengths(n, lengths)?;
        self.check_len(n)?;
        let mut out = LayeredSet::empty(&self.alphabet, n)?;
        let divisors: Vec<(usize, u64)> = lengths
            .iter()
            .map(|&l| (l, self.layer_len(n - l)))
            .collect();
        for r in self.ranks(n) {
            let blocked = divisors
                .iter()
                .any(|&(l, d)| self.contains_rank(l, r / d));
            if !blocked {
                out.insert_rank(n, r)?;
            }
        }
        Ok(out)
    }

    /// The same set viewed at a smaller or larger horizon.
    pub fn with_horizon(&self, horizon: usize) -> Result<LayeredSet> {
        let mut out = LayeredSet::empty(&self.alphabet, horizon)?;
        for n in 1..=horizon.min(self.horizon) {
            out.layers[n - 1] = self.layers[n - 1].clone();
        }
        Ok(out)
    }

    pub fn to_word_list(&self) -> WordList {
        WordList {
            alphabet: self.alphabet.clone(),
            horizon: Some(self.horizon),
            words: self.words(),
        }
    }

    /// Builds a set from a parsed word list. The horizon comes from the file
    /// header, then `default_horizon`, then the longest word.
    pub fn from_word_list(list: &WordList, default_horizon: Option<usize>) -> Result<Self> {
        let longest = list.words.iter().map(Word::len).max().unwrap_or(1);
        let horizon = list.horizon.or(default_horizon).unwrap_or(longest);
        LayeredSet::from_words(&list.alphabet, &list.words, horizon)
    }
}

impl PartialEq for LayeredSet {
    fn eq(&self, other: &Self) -> bool {
        self.alphabet == other.alphabet
            && self.horizon == other.horizon
            && (1..=self.horizon).all(|n| self.ranks(n).eq(other.ranks(n)))
    }
}

impl Eq for LayeredSet {}

impl std::fmt::Debug for LayeredSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("LayeredSet")
            .field("alphabet", &self.alphabet)
            .field("horizon", &self.horizon)
            .field("words", &self.words())
            .finish()
    }
}

impl WordSet for LayeredSet {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn horizon(&self) -> Option<usize> {
        Some(self.horizon)
    }

    fn contains(&self, w: &Word) -> bool {
        w.alphabet() == &self.alphabet
            && w.len() <= self.horizon
            && w.rank().map(|r| self.contains_rank(w.len(), r)).unwrap_or(false)
    }

    fn layer_count(&self, n: usize) -> Result<BigUint> {
        self.check_len(n)?;
        Ok(BigUint::from(self.count(n)))
    }

    fn refined_count(&self, n: usize, lengths: &[usize]) -> Result<BigUint> {
        Ok(BigUint::from(self.prefix_excluded(n, lengths)?.count(n)))
    }
}
