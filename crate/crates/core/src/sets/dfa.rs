//! Complete deterministic automata over a fixed alphabet.
//!
//! A [`Dfa`] denotes the set of *nonempty* words whose run from the start
//! state ends in an accepting state; whether the start state itself accepts
//! is irrelevant. Every algebraic operation returns a minimized automaton in
//! canonical numbering (breadth-first from the start state, symbols in
//! alphabet order), so two constructions of the same language compare equal
//! structurally.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::Zero;

use super::{validate_lengths, LayerCount, LayeredSet, WordSet};
use crate::error::{Error, Result};
use crate::words::{strip_comment, Alphabet, Word};

/// Default cap on the number of states any construction may create.
pub const DEFAULT_STATE_CAP: usize = 100_000;

#[derive(Clone, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Alphabet,
    start: u32,
    accepting: Vec<bool>,
    /// `delta[state * q + symbol]`
    delta: Vec<u32>,
}

impl Dfa {
    /// Builds an automaton from a flat transition table, checking that it is
    /// complete and that every referenced state exists.
    pub fn new(alphabet: &Alphabet, start: u32, accepting: Vec<bool>, delta: Vec<u32>) -> Result<Self> {
        let n = accepting.len();
        let q = alphabet.size();
        if n == 0 {
            return Err(Error::InvalidArgument("automaton needs at least one state".into()));
        }
        if start as usize >= n {
            return Err(Error::InvalidArgument(format!("start state {start} out of range")));
        }
        if delta.len() != n * q {
            return Err(Error::InvalidArgument(format!(
                "transition table has {} entries, expected {}",
                delta.len(),
                n * q
            )));
        }
        if let Some(&bad) = delta.iter().find(|&&t| t as usize >= n) {
            return Err(Error::InvalidArgument(format!("transition target {bad} out of range")));
        }
        Ok(Dfa {
            alphabet: alphabet.clone(),
            start,
            accepting,
            delta,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.accepting.len()
    }

    pub fn start(&self) -> u32 {
        self.start
    }

    pub fn is_accepting(&self, state: u32) -> bool {
        self.accepting[state as usize]
    }

    #[inline]
    pub fn next(&self, state: u32, symbol: u8) -> u32 {
        self.delta[state as usize * self.alphabet.size() + symbol as usize]
    }

    pub fn run(&self, syms: &[u8]) -> u32 {
        syms.iter().fold(self.start, |s, &c| self.next(s, c))
    }

    pub fn accepts(&self, w: &Word) -> bool {
        w.alphabet() == &self.alphabet && self.is_accepting(self.run(w.indices()))
    }

    /// The automaton accepting nothing.
    pub fn empty_language(alphabet: &Alphabet) -> Dfa {
        Dfa {
            alphabet: alphabet.clone(),
            start: 0,
            accepting: vec![false],
            delta: vec![0; alphabet.size()],
        }
    }

    /// The automaton accepting every nonempty word.
    pub fn universal(alphabet: &Alphabet) -> Dfa {
        let q = alphabet.size();
        Dfa {
            alphabet: alphabet.clone(),
            start: 0,
            accepting: vec![false, true],
            delta: vec![1; 2 * q],
        }
    }

    /// Words whose length lies in `lengths` (a finite set).
    pub fn with_lengths(alphabet: &Alphabet, lengths: &[usize]) -> Dfa {
        let top = lengths.iter().copied().max().unwrap_or(0);
        let q = alphabet.size();
        // states 0..=top count symbols read; top + 1 is the sink
        let sink = top + 1;
        let mut accepting = vec![false; top + 2];
        for &l in lengths {
            if l >= 1 {
                accepting[l] = true;
            }
        }
        let mut delta = Vec::with_capacity((top + 2) * q);
        for s in 0..=sink {
            let t = (s + 1).min(sink) as u32;
            delta.extend(std::iter::repeat_n(t, q));
        }
        Dfa {
            alphabet: alphabet.clone(),
            start: 0,
            accepting,
            delta,
        }
        .minimize()
    }

    /// All words of length exactly `n`.
    pub fn layer(alphabet: &Alphabet, n: usize) -> Dfa {
        Dfa::with_lengths(alphabet, &[n])
    }

    /// All words whose length is odd (`odd == true`) or even.
    pub fn length_parity(alphabet: &Alphabet, odd: bool) -> Dfa {
        let q = alphabet.size();
        // 0: even count (start), 1: odd count
        let mut delta = vec![1; q];
        delta.extend(std::iter::repeat_n(0, q));
        Dfa {
            alphabet: alphabet.clone(),
            start: 0,
            accepting: vec![!odd, odd],
            delta,
        }
        .minimize()
    }

    /// The finite language consisting of `words`, built as a trie.
    pub fn from_words<'a>(alphabet: &Alphabet, words: impl IntoIterator<Item = &'a Word>) -> Result<Dfa> {
        let q = alphabet.size();
        // state 0 is the sink, 1 the root
        let mut delta = vec![0u32; 2 * q];
        let mut accepting = vec![false, false];
        for w in words {
            alphabet.ensure_same(w.alphabet())?;
            let mut s = 1usize;
            for &c in w.indices() {
                let slot = s * q + c as usize;
                if delta[slot] == 0 {
                    let fresh = accepting.len();
                    accepting.push(false);
                    delta.extend(std::iter::repeat_n(0, q));
                    delta[slot] = fresh as u32;
                }
                s = delta[slot] as usize;
            }
            accepting[s] = true;
        }
        Ok(Dfa {
            alphabet: alphabet.clone(),
            start: 1,
            accepting,
            delta,
        }
        .minimize())
    }

    /// Membership of an explicit set, as an automaton.
    pub fn from_explicit(set: &LayeredSet) -> Result<Dfa> {
        Dfa::from_words(set.alphabet(), &set.words())
    }

    fn reachable(&self) -> Vec<u32> {
        let q = self.alphabet.size();
        let mut seen = vec![false; self.num_states()];
        let mut order = vec![self.start];
        seen[self.start as usize] = true;
        let mut i = 0;
        while i < order.len() {
            let s = order[i];
            for c in 0..q {
                let t = self.next(s, c as u8);
                if !seen[t as usize] {
                    seen[t as usize] = true;
                    order.push(t);
                }
            }
            i += 1;
        }
        order
    }

    /// Minimal automaton for the same language, canonically numbered.
    pub fn minimize(&self) -> Dfa {
        let q = self.alphabet.size();

        // A start state that accepts could only matter for the empty word,
        // which is never in the language: split it off as a rejecting copy.
        let mut accepting = self.accepting.clone();
        let mut delta = self.delta.clone();
        let mut start = self.start;
        if accepting[start as usize] {
            let fresh = accepting.len() as u32;
            accepting.push(false);
            let row: Vec<u32> = delta[start as usize * q..(start as usize + 1) * q].to_vec();
            delta.extend(row);
            start = fresh;
        }
        let raw = Dfa {
            alphabet: self.alphabet.clone(),
            start,
            accepting,
            delta,
        };

        let order = raw.reachable();
        let mut index = vec![u32::MAX; raw.num_states()];
        for (i, &s) in order.iter().enumerate() {
            index[s as usize] = i as u32;
        }
        let n = order.len();
        let acc: Vec<bool> = order.iter().map(|&s| raw.is_accepting(s)).collect();
        let tr: Vec<u32> = order
            .iter()
            .flat_map(|&s| (0..q).map(move |c| (s, c)))
            .map(|(s, c)| index[raw.next(s, c as u8) as usize])
            .collect();

        // Moore partition refinement.
        let mut class: Vec<u32> = acc.iter().map(|&a| a as u32).collect();
        let mut classes = {
            let mut ids = HashMap::new();
            for c in &mut class {
                let len = ids.len() as u32;
                *c = *ids.entry(*c).or_insert(len);
            }
            ids.len()
        };
        loop {
            let mut ids: HashMap<Vec<u32>, u32> = HashMap::with_capacity(classes * 2);
            let mut next_class = vec![0u32; n];
            let mut sig = Vec::with_capacity(q + 1);
            for s in 0..n {
                sig.clear();
                sig.push(class[s]);
                sig.extend((0..q).map(|c| class[tr[s * q + c] as usize]));
                let len = ids.len() as u32;
                next_class[s] = *ids.entry(sig.clone()).or_insert(len);
            }
            let refined = ids.len();
            class = next_class;
            if refined == classes {
                break;
            }
            classes = refined;
        }

        // Quotient, then renumber breadth-first from the start class.
        let mut rep = vec![usize::MAX; classes];
        for s in 0..n {
            if rep[class[s] as usize] == usize::MAX {
                rep[class[s] as usize] = s;
            }
        }
        let mut canon = vec![u32::MAX; classes];
        let mut queue = VecDeque::new();
        let start_class = class[0] as usize;
        canon[start_class] = 0;
        queue.push_back(start_class);
        let mut bfs = Vec::with_capacity(classes);
        while let Some(k) = queue.pop_front() {
            bfs.push(k);
            let s = rep[k];
            for c in 0..q {
                let t = class[tr[s * q + c] as usize] as usize;
                if canon[t] == u32::MAX {
                    canon[t] = (bfs.len() + queue.len()) as u32;
                    queue.push_back(t);
                }
            }
        }
        let accepting = bfs.iter().map(|&k| acc[rep[k]]).collect();
        let delta = bfs
            .iter()
            .flat_map(|&k| {
                let s = rep[k];
                (0..q).map(move |c| (s, c))
            })
            .map(|(s, c)| canon[class[tr[s * q + c] as usize] as usize])
            .collect();
        Dfa {
            alphabet: self.alphabet.clone(),
            start: 0,
            accepting,
            delta,
        }
    }

    fn product(&self, other: &Dfa, combine: impl Fn(bool, bool) -> bool) -> Result<Dfa> {
        self.alphabet.ensure_same(&other.alphabet)?;
        let q = self.alphabet.size();
        let mut ids: HashMap<(u32, u32), u32> = HashMap::new();
        let mut pairs = vec![(self.start, other.start)];
        ids.insert((self.start, other.start), 0);
        let mut delta = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let (a, b) = pairs[i];
            for c in 0..q as u8 {
                let key = (self.next(a, c), other.next(b, c));
                let len = pairs.len() as u32;
                let id = *ids.entry(key).or_insert_with(|| {
                    pairs.push(key);
                    len
                });
                delta.push(id);
            }
            i += 1;
        }
        let accepting = pairs
            .iter()
            .map(|&(a, b)| combine(self.is_accepting(a), other.is_accepting(b)))
            .collect();
        Ok(Dfa {
            alphabet: self.alphabet.clone(),
            start: 0,
            accepting,
            delta,
        }
        .minimize())
    }

    pub fn union(&self, other: &Dfa) -> Result<Dfa> {
        self.product(other, |a, b| a || b)
    }

    pub fn intersect(&self, other: &Dfa) -> Result<Dfa> {
        self.product(other, |a, b| a && b)
    }

    pub fn difference(&self, other: &Dfa) -> Result<Dfa> {
        self.product(other, |a, b| a && !b)
    }

    /// Complement relative to the nonempty words.
    pub fn complement(&self) -> Dfa {
        Dfa {
            alphabet: self.alphabet.clone(),
            start: self.start,
            accepting: self.accepting.iter().map(|a| !a).collect(),
            delta: self.delta.clone(),
        }
        .minimize()
    }

    /// `{ x·y : x ∈ L(self), y ∈ L(other) }` via subset construction.
    ///
    /// A subset state is `(p, R, pending)`: `p` is the run of `self`, `R` the
    /// states of `other` reached after reading at least one of its symbols,
    /// and `pending` records that the prefix read so far lies in `L(self)`,
    /// so a fresh run of `other` may begin at the next symbol.
    pub fn concat(&self, other: &Dfa, cap: usize) -> Result<Dfa> {
        self.alphabet.ensure_same(&other.alphabet)?;
        let q = self.alphabet.size();
        type Key = (u32, Vec<u32>, bool);
        let mut ids: HashMap<Key, u32> = HashMap::new();
        let init: Key = (self.start, Vec::new(), false);
        ids.insert(init.clone(), 0);
        let mut states = vec![init];
        let mut delta = Vec::new();
        let mut i = 0;
        while i < states.len() {
            let (p, set, pending) = states[i].clone();
            for c in 0..q as u8 {
                let p2 = self.next(p, c);
                let mut set2: Vec<u32> = set.iter().map(|&r| other.next(r, c)).collect();
                if pending {
                    set2.push(other.next(other.start, c));
                }
                set2.sort_unstable();
                set2.dedup();
                let key = (p2, set2, self.is_accepting(p2));
                let id = match ids.get(&key) {
                    Some(&id) => id,
                    None => {
                        let id = states.len() as u32;
                        if states.len() >= cap {
                            return Err(Error::StateBudget { cap });
                        }
                        ids.insert(key.clone(), id);
                        states.push(key);
                        id
                    }
                };
                delta.push(id);
            }
            i += 1;
        }
        let accepting = states
            .iter()
            .map(|(_, set, _)| set.iter().any(|&r| other.is_accepting(r)))
            .collect();
        Ok(Dfa {
            alphabet: self.alphabet.clone(),
            start: 0,
            accepting,
            delta,
        }
        .minimize())
    }

    /// `L ∩ F(n)`.
    pub fn length_slice(&self, n: usize) -> Result<Dfa> {
        if n == 0 {
            return Err(Error::EmptyWord);
        }
        self.intersect(&Dfa::layer(&self.alphabet, n))
    }

    /// A shortest accepted word, least in lexicographic order among the
    /// shortest; `None` when the language is empty.
    pub fn shortest_word(&self) -> Option<Word> {
        let q = self.alphabet.size();
        let mut parent: Vec<Option<(u32, u8)>> = vec![None; self.num_states()];
        let mut seen = vec![false; self.num_states()];
        let mut queue = VecDeque::new();
        // Virtual root: the start state is only "reached" again after reading.
        for c in 0..q as u8 {
            let t = self.next(self.start, c);
            if !seen[t as usize] {
                seen[t as usize] = true;
                parent[t as usize] = Some((u32::MAX, c));
                queue.push_back(t);
            }
        }
        while let Some(s) = queue.pop_front() {
            if self.is_accepting(s) {
                let mut syms = Vec::new();
                let mut cur = s;
                loop {
                    let (prev, c) = parent[cur as usize].expect("visited");
                    syms.push(c);
                    if prev == u32::MAX {
                        break;
                    }
                    cur = prev;
                }
                syms.reverse();
                return Some(Word::from_indices(&self.alphabet, syms).expect("nonempty path"));
            }
            for c in 0..q as u8 {
                let t = self.next(s, c);
                if !seen[t as usize] {
                    seen[t as usize] = true;
                    parent[t as usize] = Some((s, c));
                    queue.push_back(t);
                }
            }
        }
        None
    }

    pub fn is_empty(&self) -> bool {
        self.shortest_word().is_none()
    }

    /// Exact numbers of accepted words of lengths `1..=h`, by iterating the
    /// per-state count vector along the transitions.
    pub fn layer_counts(&self, h: usize) -> Vec<BigUint> {
        let q = self.alphabet.size();
        let mut counts = vec![BigUint::zero(); self.num_states()];
        counts[self.start as usize] = BigUint::from(1u8);
        let mut out = Vec::with_capacity(h);
        for _ in 0..h {
            let mut next = vec![BigUint::zero(); self.num_states()];
            for (s, cnt) in counts.iter().enumerate() {
                if cnt.is_zero() {
                    continue;
                }
                for c in 0..q {
                    next[self.delta[s * q + c] as usize] += cnt;
                }
            }
            counts = next;
            let accepted = counts
                .iter()
                .zip(&self.accepting)
                .filter(|(_, &a)| a)
                .fold(BigUint::zero(), |acc, (c, _)| acc + c);
            out.push(accepted);
        }
        out
    }

    pub fn layer_count(&self, n: usize) -> Result<LayerCount> {
        if n == 0 {
            return Err(Error::EmptyWord);
        }
        let count = self.layer_counts(n).pop().expect("n >= 1");
        Ok(LayerCount::new(self.alphabet.size(), n, count))
    }

    /// Explicit membership of `L ∩ F_≤(horizon)`.
    pub fn truncate(&self, horizon: usize, budget: u64) -> Result<LayeredSet> {
        let mut set = LayeredSet::empty(&self.alphabet, horizon)?;
        let q = self.alphabet.size();
        let total: u128 = (1..=horizon).map(|n| (q as u128).pow(n as u32)).sum();
        if total > budget as u128 {
            return Err(Error::BudgetExceeded {
                needed: total,
                budget: budget as u128,
            });
        }
        let mut states = vec![self.start];
        for n in 1..=horizon {
            let next: Vec<u32> = states
                .iter()
                .flat_map(|&s| (0..q as u8).map(move |c| (s, c)))
                .map(|(s, c)| self.next(s, c))
                .collect();
            for (r, &s) in next.iter().enumerate() {
                if self.is_accepting(s) {
                    set.insert_rank(n, r as u64)?;
                }
            }
            states = next;
        }
        Ok(set)
    }

    /// `S(n; ℓ₁,…,ℓₖ) = S(n) ∖ ⋃ᵢ S(ℓᵢ)·F(n−ℓᵢ)` as an automaton.
    pub fn prefix_excluded(&self, n: usize, lengths: &[usize], cap: usize) -> Result<Dfa> {
        validate_lengths(n, lengths)?;
        let mut blocked = Dfa::empty_language(&self.alphabet);
        for &l in lengths {
            let heads = self.length_slice(l)?;
            let tails = Dfa::layer(&self.alphabet, n - l);
            blocked = blocked.union(&heads.concat(&tails, cap)?)?;
        }
        self.length_slice(n)?.difference(&blocked)
    }

    /// Whether both automata denote the same set of nonempty words.
    pub fn same_language(&self, other: &Dfa) -> bool {
        self.alphabet == other.alphabet && self.minimize() == other.minimize()
    }

    /// Structural isomorphism of the parts reachable from the start states.
    pub fn is_isomorphic(&self, other: &Dfa) -> bool {
        if self.alphabet != other.alphabet {
            return false;
        }
        let q = self.alphabet.size();
        let mut fwd = vec![u32::MAX; self.num_states()];
        let mut bwd = vec![u32::MAX; other.num_states()];
        let mut queue = VecDeque::from([(self.start, other.start)]);
        fwd[self.start as usize] = other.start;
        bwd[other.start as usize] = self.start;
        while let Some((a, b)) = queue.pop_front() {
            if self.is_accepting(a) != other.is_accepting(b) {
                return false;
            }
            for c in 0..q as u8 {
                let (ta, tb) = (self.next(a, c), other.next(b, c));
                match (fwd[ta as usize], bwd[tb as usize]) {
                    (u32::MAX, u32::MAX) => {
                        fwd[ta as usize] = tb;
                        bwd[tb as usize] = ta;
                        queue.push_back((ta, tb));
                    }
                    (x, y) if x == tb && y == ta => {}
                    _ => return false,
                }
            }
        }
        true
    }

    /// Serializes to the line-oriented text format.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "alphabet: {}", self.alphabet);
        let _ = writeln!(out, "states: {}", self.num_states());
        let _ = writeln!(out, "start: {}", self.start);
        out.push_str("accept:");
        for (s, _) in self.accepting.iter().enumerate().filter(|(_, &a)| a) {
            let _ = write!(out, " {s}");
        }
        out.push('\n');
        let q = self.alphabet.size();
        for s in 0..self.num_states() {
            for c in 0..q {
                let _ = writeln!(
                    out,
                    "trans: {s} {} {}",
                    self.alphabet.symbols()[c],
                    self.delta[s * q + c]
                );
            }
        }
        out
    }

    /// Parses the text format. Every transition must be present.
    pub fn parse(text: &str) -> Result<Dfa> {
        let mut alphabet: Option<Alphabet> = None;
        let mut states: Option<usize> = None;
        let mut start: Option<(u32, usize)> = None;
        let mut accept: Option<(Vec<u32>, usize)> = None;
        let mut delta: Vec<Option<u32>> = Vec::new();
        let mut last_line = 0;

        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            last_line = line_no;
            let line = strip_comment(raw);
            if line.trim().is_empty() {
                continue;
            }
            let indent = line.len() - line.trim_start().len();
            let body = line.trim();
            let (key, rest) = body
                .split_once(':')
                .ok_or_else(|| Error::parse(line_no, indent + 1, "expected `key: value`"))?;
            let value_col = indent + key.len() + 2;
            let fields = tokens(rest, value_col);
            let number = |tok: &(usize, &str), what: &str| -> Result<usize> {
                tok.1
                    .parse::<usize>()
                    .map_err(|_| Error::parse(line_no, tok.0, format!("invalid {what} {:?}", tok.1)))
            };
            match key.trim() {
                "alphabet" => {
                    if alphabet.is_some() {
                        return Err(Error::parse(line_no, indent + 1, "duplicate alphabet line"));
                    }
                    let (col, sym) = single(&fields, line_no, value_col, "alphabet")?;
                    alphabet = Some(Alphabet::new(sym).map_err(|e| Error::parse(line_no, col, e.to_string()))?);
                }
                "states" => {
                    let tok = single(&fields, line_no, value_col, "state count")?;
                    let n = number(&(tok.0, tok.1), "state count")?;
                    if n == 0 {
                        return Err(Error::parse(line_no, tok.0, "state count must be positive"));
                    }
                    let q = alphabet
                        .as_ref()
                        .ok_or_else(|| Error::parse(line_no, 1, "`states:` before `alphabet:`"))?
                        .size();
                    states = Some(n);
                    delta = vec![None; n * q];
                }
                "start" => {
                    let tok = single(&fields, line_no, value_col, "start state")?;
                    start = Some((number(&(tok.0, tok.1), "start state")? as u32, tok.0));
                }
                "accept" => {
                    let ids = fields
                        .iter()
                        .map(|t| number(t, "state id").map(|v| v as u32))
                        .collect::<Result<Vec<u32>>>()?;
                    accept = Some((ids, line_no));
                }
                "trans" => {
                    let (a, n) = match (&alphabet, states) {
                        (Some(a), Some(n)) => (a, n),
                        _ => return Err(Error::parse(line_no, 1, "`trans:` before `alphabet:` and `states:`")),
                    };
                    if fields.len() != 3 {
                        return Err(Error::parse(line_no, value_col, "expected `trans: <from> <symbol> <to>`"));
                    }
                    let from = number(&fields[0], "state id")?;
                    let to = number(&fields[2], "state id")?;
                    let mut chars = fields[1].1.chars();
                    let sym = match (chars.next(), chars.next()) {
                        (Some(c), None) => a.index_of(c),
                        _ => None,
                    }
                    .ok_or_else(|| Error::parse(line_no, fields[1].0, format!("unknown symbol {:?}", fields[1].1)))?;
                    if from >= n {
                        return Err(Error::parse(line_no, fields[0].0, format!("state {from} out of range")));
                    }
                    if to >= n {
                        return Err(Error::parse(line_no, fields[2].0, format!("state {to} out of range")));
                    }
                    let slot = &mut delta[from * a.size() + sym];
                    if slot.is_some() {
                        return Err(Error::parse(line_no, value_col, "duplicate transition"));
                    }
                    *slot = Some(to as u32);
                }
                other => {
                    return Err(Error::parse(line_no, indent + 1, format!("unknown key {other:?}")));
                }
            }
        }

        let end = last_line.max(1);
        let alphabet = alphabet.ok_or_else(|| Error::parse(end, 1, "missing `alphabet:` line"))?;
        let n = states.ok_or_else(|| Error::parse(end, 1, "missing `states:` line"))?;
        let (start, start_col) = start.ok_or_else(|| Error::parse(end, 1, "missing `start:` line"))?;
        if start as usize >= n {
            return Err(Error::parse(end, start_col, format!("start state {start} out of range")));
        }
        let (ids, accept_line) = accept.ok_or_else(|| Error::parse(end, 1, "missing `accept:` line"))?;
        let mut accepting = vec![false; n];
        for id in ids {
            if id as usize >= n {
                return Err(Error::parse(accept_line, 1, format!("accepting state {id} out of range")));
            }
            accepting[id as usize] = true;
        }
        let q = alphabet.size();
        let delta = delta
            .into_iter()
            .enumerate()
            .map(|(i, t)| {
                t.ok_or_else(|| {
                    Error::parse(
                        end,
                        1,
                        format!(
                            "incomplete automaton: no transition from state {} on {:?}",
                            i / q,
                            alphabet.symbols()[i % q]
                        ),
                    )
                })
            })
            .collect::<Result<Vec<u32>>>()?;
        Dfa::new(&alphabet, start, accepting, delta)
    }
}

fn tokens(rest: &str, base_col: usize) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut offset = 0;
    for piece in rest.split(' ') {
        if !piece.is_empty() {
            out.push((base_col + offset, piece));
        }
        offset += piece.len() + 1;
    }
    out
}

fn single<'a>(fields: &[(usize, &'a str)], line: usize, col: usize, what: &str) -> Result<(usize, &'a str)> {
    match fields {
        [one] => Ok(*one),
        _ => Err(Error::parse(line, col, format!("expected a single {what}"))),
    }
}

impl std::fmt::Debug for Dfa {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl WordSet for Dfa {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn horizon(&self) -> Option<usize> {
        None
    }

    fn contains(&self, w: &Word) -> bool {
        self.accepts(w)
    }

    fn layer_count(&self, n: usize) -> Result<BigUint> {
        Ok(Dfa::layer_count(self, n)?.count)
    }

    fn layer_counts(&self, h: usize) -> Result<Vec<BigUint>> {
        Ok(Dfa::layer_counts(self, h))
    }

    fn refined_count(&self, n: usize, lengths: &[usize]) -> Result<BigUint> {
        Dfa::layer_count(&self.prefix_excluded(n, lengths, DEFAULT_STATE_CAP)?, n).map(|c| c.count)
    }

    fn is_regular(&self) -> bool {
        true
    }
}
