//! Alphabets and words of the free semigroup.
//!
//! A [`Word`] is a nonempty sequence of symbol indices tied to an
//! [`Alphabet`]. The symbol order of the alphabet fixes the lexicographic
//! order on each layer `F(n)`, and [`Word::rank`] / [`Alphabet::unrank`] are
//! the bijection between `F(n)` and `[0, q^n)` that respects it.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported alphabet.
pub const MAX_SYMBOLS: usize = 16;

/// Default cap on the number of words an enumeration may produce.
pub const DEFAULT_ENUM_BUDGET: u64 = 1 << 26;

/// An ordered list of distinct single-character symbols.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Arc<[char]>,
}

impl Alphabet {
    pub fn new(symbols: &str) -> Result<Self> {
        let chars: Vec<char> = symbols.chars().collect();
        if chars.is_empty() {
            return Err(Error::InvalidAlphabet("alphabet must have at least one symbol".into()));
        }
        if chars.len() > MAX_SYMBOLS {
            return Err(Error::InvalidAlphabet(format!(
                "at most {MAX_SYMBOLS} symbols supported, got {}",
                chars.len()
            )));
        }
        for (i, c) in chars.iter().enumerate() {
            if c.is_whitespace() || c.is_control() || *c == '#' || *c == ':' {
                return Err(Error::InvalidAlphabet(format!("symbol {c:?} is not allowed")));
            }
            if chars[..i].contains(c) {
                return Err(Error::InvalidAlphabet(format!("duplicate symbol {c:?}")));
            }
        }
        Ok(Alphabet {
            symbols: chars.into(),
        })
    }

    /// The two-letter alphabet `ab`.
    pub fn binary() -> Self {
        Alphabet::new("ab").expect("static alphabet")
    }

    pub fn size(&self) -> usize {
        self.symbols.len()
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn symbol(&self, index: usize) -> Option<char> {
        self.symbols.get(index).copied()
    }

    pub fn index_of(&self, c: char) -> Option<usize> {
        self.symbols.iter().position(|&s| s == c)
    }

    /// `q^n`, or `None` when it does not fit in a `u64`.
    pub fn layer_size(&self, n: usize) -> Option<u64> {
        layer_size(self.size(), n)
    }

    /// Parses a word written with this alphabet's symbols.
    pub fn word(&self, text: &str) -> Result<Word> {
        let syms = text
            .chars()
            .map(|c| {
                self.index_of(c)
                    .map(|i| i as u8)
                    .ok_or_else(|| Error::UnknownSymbol {
                        symbol: c,
                        alphabet: self.to_string(),
                    })
            })
            .collect::<Result<Vec<u8>>>()?;
        Word::from_indices(self, syms)
    }

    /// All `q^n` words of length `n` in lexicographic order.
    pub fn layer_words(&self, n: usize, budget: u64) -> Result<Vec<Word>> {
        if n == 0 {
            return Err(Error::EmptyWord);
        }
        let size = self
            .layer_size(n)
            .filter(|&s| s <= budget)
            .ok_or(Error::BudgetExceeded {
                needed: (self.size() as u128).saturating_pow(n as u32),
                budget: budget as u128,
            })?;
        (0..size).map(|r| self.unrank(n, r)).collect()
    }

    /// The word of length `n` with lexicographic rank `r`.
    pub fn unrank(&self, n: usize, r: u64) -> Result<Word> {
        if n == 0 {
            return Err(Error::EmptyWord);
        }
        let q = self.size() as u64;
        if let Some(size) = self.layer_size(n) {
            if r >= size {
                return Err(Error::RankOutOfRange {
                    rank: r as u128,
                    q: self.size(),
                    n,
                });
            }
        }
        let mut syms = vec![0u8; n];
        let mut rest = r;
        for slot in syms.iter_mut().rev() {
            *slot = (rest % q) as u8;
            rest /= q;
        }
        Ok(Word {
            alphabet: self.clone(),
            syms,
        })
    }

    fn check_same(&self, other: &Alphabet) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch {
                left: self.to_string(),
                right: other.to_string(),
            })
        }
    }

    pub(crate) fn ensure_same(&self, other: &Alphabet) -> Result<()> {
        self.check_same(other)
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.symbols.iter().try_for_each(|c| write!(f, "{c}"))
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Alphabet({self})")
    }
}

/// `q^n` as a `u64`, if it fits.
pub fn layer_size(q: usize, n: usize) -> Option<u64> {
    (q as u64).checked_pow(u32::try_from(n).ok()?)
}

/// A nonempty word over an alphabet, stored as symbol indices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word {
    alphabet: Alphabet,
    syms: Vec<u8>,
}

impl Word {
    pub fn from_indices(alphabet: &Alphabet, syms: Vec<u8>) -> Result<Self> {
        if syms.is_empty() {
            return Err(Error::EmptyWord);
        }
        if let Some(&bad) = syms.iter().find(|&&s| s as usize >= alphabet.size()) {
            return Err(Error::SymbolIndex {
                index: bad as usize,
                q: alphabet.size(),
            });
        }
        Ok(Word {
            alphabet: alphabet.clone(),
            syms,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn indices(&self) -> &[u8] {
        &self.syms
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.syms.len()
    }

    pub fn concat(&self, other: &Word) -> Result<Word> {
        self.alphabet.check_same(&other.alphabet)?;
        let mut syms = Vec::with_capacity(self.len() + other.len());
        syms.extend_from_slice(&self.syms);
        syms.extend_from_slice(&other.syms);
        Ok(Word {
            alphabet: self.alphabet.clone(),
            syms,
        })
    }

    /// Whether `self` is a proper prefix of `w`: `w = self·y` for a nonempty `y`.
    pub fn is_prefix_of(&self, w: &Word) -> bool {
        self.alphabet == w.alphabet && self.len() < w.len() && w.syms.starts_with(&self.syms)
    }

    /// Whether `self` is a proper suffix of `w`.
    pub fn is_suffix_of(&self, w: &Word) -> bool {
        self.alphabet == w.alphabet && self.len() < w.len() && w.syms.ends_with(&self.syms)
    }

    /// Lexicographic rank within `F(len)`.
    pub fn rank(&self) -> Result<u64> {
        let q = self.alphabet.size() as u64;
        self.syms
            .iter()
            .try_fold(0u64, |acc, &s| acc.checked_mul(q)?.checked_add(s as u64))
            .ok_or(Error::BudgetExceeded {
                needed: (q as u128).saturating_pow(self.len() as u32),
                budget: u64::MAX as u128,
            })
    }

    /// The split `self = x·y` with `|x| = m`, if `0 < m < len`.
    pub fn split_at(&self, m: usize) -> Option<(Word, Word)> {
        if m == 0 || m >= self.len() {
            return None;
        }
        let (l, r) = self.syms.split_at(m);
        Some((
            Word {
                alphabet: self.alphabet.clone(),
                syms: l.to_vec(),
            },
            Word {
                alphabet: self.alphabet.clone(),
                syms: r.to_vec(),
            },
        ))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.syms {
            write!(f, "{}", self.alphabet.symbols[s as usize])?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}", self = self.to_string())
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Shortlex order: length first, then lexicographic.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.syms.cmp(&other.syms))
    }
}

/// Contents of a word-list file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordList {
    pub alphabet: Alphabet,
    /// Optional `horizon:` header.
    pub horizon: Option<usize>,
    pub words: Vec<Word>,
}

impl WordList {
    /// Parses the line-oriented word-list format.
    ///
    /// ```text
    /// alphabet: ab
    /// horizon: 3
    /// # comment
    /// a
    /// bab
    /// ```
    pub fn parse(text: &str) -> Result<Self> {
        let mut alphabet: Option<Alphabet> = None;
        let mut horizon = None;
        let mut words = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = strip_comment(raw);
            let trimmed = line.trim();
            if trimmed.is_empty() {
                continue;
            }
            let indent = line.len() - line.trim_start().len();
            if let Some(rest) = trimmed.strip_prefix("alphabet:") {
                if alphabet.is_some() {
                    return Err(Error::parse(line_no, indent + 1, "duplicate alphabet header"));
                }
                let a = Alphabet::new(rest.trim())
                    .map_err(|e| Error::parse(line_no, indent + 10, e.to_string()))?;
                alphabet = Some(a);
                continue;
            }
            if let Some(rest) = trimmed.strip_prefix("horizon:") {
                let h: usize = rest
                    .trim()
                    .parse()
                    .ok()
                    .filter(|&h| h >= 1)
                    .ok_or_else(|| Error::parse(line_no, indent + 9, "horizon must be a positive integer"))?;
                horizon = Some(h);
                continue;
            }
            let a = alphabet
                .as_ref()
                .ok_or_else(|| Error::parse(line_no, 1, "word before `alphabet:` header"))?;
            let mut syms = Vec::with_capacity(trimmed.len());
            for (col, c) in trimmed.chars().enumerate() {
                let idx = a.index_of(c).ok_or_else(|| {
                    Error::parse(line_no, indent + col + 1, format!("symbol {c:?} not in alphabet {a}"))
                })?;
                syms.push(idx as u8);
            }
            words.push(Word::from_indices(a, syms)?);
        }
        let alphabet = alphabet.ok_or_else(|| Error::parse(1, 1, "missing `alphabet:` header"))?;
        Ok(WordList {
            alphabet,
            horizon,
            words,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("alphabet: {}\n", self.alphabet);
        if let Some(h) = self.horizon {
            out.push_str(&format!("horizon: {h}\n"));
        }
        for w in &self.words {
            out.push_str(&w.to_string());
            out.push('\n');
        }
        out
    }
}

pub(crate) fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ab() -> Alphabet {
        Alphabet::binary()
    }

    #[test]
    fn concat_examples() {
        let a = ab();
        let w = a.word("a").unwrap().concat(&a.word("b").unwrap()).unwrap();
        assert_eq!(w.to_string(), "ab");
        assert_eq!(w.len(), 2);
        let w = a.word("ab").unwrap().concat(&a.word("ba").unwrap()).unwrap();
        assert_eq!(w.to_string(), "abba");
        let (x, y, z) = (a.word("a").unwrap(), a.word("b").unwrap(), a.word("a").unwrap());
        let left = x.concat(&y).unwrap().concat(&z).unwrap();
        let right = x.concat(&y.concat(&z).unwrap()).unwrap();
        assert_eq!(left, right);
        assert_eq!(left.to_string(), "aba");
    }

    #[test]
    fn concat_alphabet_mismatch() {
        let x = ab().word("a").unwrap();
        let y = Alphabet::new("xy").unwrap().word("x").unwrap();
        assert!(matches!(x.concat(&y), Err(Error::AlphabetMismatch { .. })));
    }

    #[test]
    fn prefix_and_suffix() {
        let a = ab();
        let w = |s| a.word(s).unwrap();
        assert!(w("a").is_prefix_of(&w("ab")));
        assert!(!w("b").is_prefix_of(&w("ab")));
        assert!(!w("ab").is_prefix_of(&w("ab")));
        assert!(w("b").is_suffix_of(&w("ab")));
        assert!(!w("a").is_suffix_of(&w("ab")));
        assert!(w("ba").is_suffix_of(&w("aba")));
    }

    #[test]
    fn empty_word_rejected() {
        assert_eq!(ab().word(""), Err(Error::EmptyWord));
        assert_eq!(Word::from_indices(&ab(), vec![]), Err(Error::EmptyWord));
        assert!(Word::from_indices(&ab(), vec![2]).is_err());
    }

    #[test]
    fn layers_in_lex_order() {
        let strs = |n, a: &Alphabet| {
            a.layer_words(n, DEFAULT_ENUM_BUDGET)
                .unwrap()
                .iter()
                .map(|w| w.to_string())
                .collect::<Vec<_>>()
        };
        assert_eq!(strs(1, &ab()), ["a", "b"]);
        assert_eq!(strs(2, &ab()), ["aa", "ab", "ba", "bb"]);
        assert_eq!(strs(2, &Alphabet::new("abc").unwrap()).len(), 9);
        assert!(matches!(
            ab().layer_words(10, 100),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn rank_examples() {
        let a = ab();
        assert_eq!(a.word("aa").unwrap().rank().unwrap(), 0);
        assert_eq!(a.word("bb").unwrap().rank().unwrap(), 3);
        // 5 = 101 in base 2
        assert_eq!(a.unrank(3, 5).unwrap().to_string(), "bab");
        assert!(matches!(a.unrank(3, 8), Err(Error::RankOutOfRange { .. })));
    }

    #[test]
    fn rank_unrank_inverse_small_layers() {
        for q in 1..=3 {
            let a = Alphabet::new(&"abc"[..q]).unwrap();
            for n in 1..=10 {
                let size = a.layer_size(n).unwrap();
                for r in 0..size {
                    let w = a.unrank(n, r).unwrap();
                    assert_eq!(w.rank().unwrap(), r);
                }
            }
        }
    }

    #[test]
    fn unique_factorization_exhaustive() {
        let a = ab();
        let layers: Vec<Vec<Word>> = (1..=10)
            .map(|n| a.layer_words(n, DEFAULT_ENUM_BUDGET).unwrap())
            .collect();
        for total in 2..=10 {
            for w in &layers[total - 1] {
                for m in 1..total {
                    let n = total - m;
                    let hits = layers[m - 1]
                        .iter()
                        .filter(|x| x.is_prefix_of(w))
                        .flat_map(|x| {
                            layers[n - 1]
                                .iter()
                                .filter(move |y| x.concat(y).unwrap() == *w)
                        })
                        .count();
                    assert_eq!(hits, 1, "{w} at split {m}");
                }
            }
        }
    }

    #[test]
    fn word_list_round_trip() {
        let text = "alphabet: ab\nhorizon: 4\n# comment\na\nbab   # trailing\n\nbb\n";
        let list = WordList::parse(text).unwrap();
        assert_eq!(list.horizon, Some(4));
        assert_eq!(list.words.len(), 3);
        let again = WordList::parse(&list.to_text()).unwrap();
        assert_eq!(again, list);
    }

    #[test]
    fn word_list_errors_carry_position() {
        let err = WordList::parse("alphabet: ab\nabc\n").unwrap_err();
        assert_eq!(
            err,
            Error::parse(2, 3, "symbol 'c' not in alphabet ab")
        );
        assert!(matches!(WordList::parse("a\n"), Err(Error::Parse { line: 1, .. })));
    }

    fn arb_word() -> impl Strategy<Value = Word> {
        prop::collection::vec(0u8..3, 1..8)
            .prop_map(|v| Word::from_indices(&Alphabet::new("abc").unwrap(), v).unwrap())
    }

    proptest! {
        #[test]
        fn concat_length_adds(x in arb_word(), y in arb_word()) {
            prop_assert_eq!(x.concat(&y).unwrap().len(), x.len() + y.len());
        }

        #[test]
        fn concat_associative(x in arb_word(), y in arb_word(), z in arb_word()) {
            let l = x.concat(&y).unwrap().concat(&z).unwrap();
            let r = x.concat(&y.concat(&z).unwrap()).unwrap();
            prop_assert_eq!(l, r);
        }
    }
}
