//! Exact maximum-density product-free subsets of the ball `F≤(N)`.
//!
//! Words are decided in shortlex order, include-branch first. Since every
//! product is longer than both factors, all words a decision can block are
//! still undecided, so propagation is a counter per word. The bound counts,
//! per layer, the included words plus the undecided words nothing blocks
//! yet. Leaves replace the incumbent only on strict improvement, so the
//! witness is the first optimum in branching order.

use std::str::FromStr;

use num_bigint::BigUint;
use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::report;
use crate::sets::LayeredSet;
use crate::words::Alphabet;

/// Largest ball the search will index.
pub const MAX_ITEMS: usize = 1 << 12;

pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Objective {
    /// `Σ d(n) / N`
    #[default]
    Mean,
    /// `Σ d(n)`
    Total,
}

impl FromStr for Objective {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mean" => Ok(Objective::Mean),
            "total" => Ok(Objective::Total),
            _ => Err(Error::InvalidArgument(format!("unknown objective '{s}' (expected mean or total)"))),
        }
    }
}

/// The ball `F≤(N)` with its factorization tables.
#[derive(Debug, Clone)]
pub struct SearchProblem {
    alphabet: Alphabet,
    horizon: usize,
    offsets: Vec<usize>,
    lens: Vec<usize>,
    /// `q^(N−n)` for each length `n`: scores are integers.
    weights: Vec<u128>,
    /// For `z`: every `(x, y)` with `x·y = z`.
    splits: Vec<Vec<(u32, u32)>>,
    /// For `w`: every `(y, z)` with `w·y = z`.
    as_left: Vec<Vec<(u32, u32)>>,
    /// For `w`: every `(x, z)` with `x·w = z`.
    as_right: Vec<Vec<(u32, u32)>>,
}

impl SearchProblem {
    pub fn new(alphabet: &Alphabet, horizon: usize) -> Result<Self> {
        if horizon == 0 {
            return Err(Error::InvalidArgument("horizon must be at least 1".into()));
        }
        let q = alphabet.size() as u128;
        let mut offsets = vec![0usize; horizon + 2];
        let mut total: u128 = 0;
        for n in 1..=horizon {
            offsets[n] = total as usize;
            total = total.saturating_add(q.saturating_pow(n as u32));
            if total > MAX_ITEMS as u128 {
                return Err(Error::BudgetExceeded {
                    needed: total,
                    budget: MAX_ITEMS as u128,
                });
            }
        }
        offsets[horizon + 1] = total as usize;
        let m = total as usize;
        let size = |n: usize| offsets[n + 1] - offsets[n];
        let mut lens = Vec::with_capacity(m);
        for n in 1..=horizon {
            lens.extend(std::iter::repeat_n(n, size(n)));
        }
        let weights = (0..=horizon).map(|n| q.pow((horizon - n) as u32)).collect();
        let mut splits = vec![Vec::new(); m];
        let mut as_left = vec![Vec::new(); m];
        let mut as_right = vec![Vec::new(); m];
        for zl in 2..=horizon {
            for zr in 0..size(zl) {
                let z = (offsets[zl] + zr) as u32;
                for xl in 1..zl {
                    let base = size(zl - xl);
                    let x = (offsets[xl] + zr / base) as u32;
                    let y = (offsets[zl - xl] + zr % base) as u32;
                    splits[z as usize].push((x, y));
                    as_left[x as usize].push((y, z));
                    as_right[y as usize].push((x, z));
                }
            }
        }
        Ok(SearchProblem {
            alphabet: alphabet.clone(),
            horizon,
            offsets,
            lens,
            weights,
            splits,
            as_left,
            as_right,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    /// Number of words in the ball.
    pub fn items(&self) -> usize {
        self.lens.len()
    }

    fn value(&self, score: u128, objective: Objective) -> BigRational {
        let q = BigUint::from(self.alphabet.size());
        let mut den = q.pow(self.horizon as u32);
        if objective == Objective::Mean {
            den *= self.horizon;
        }
        BigRational::new(BigUint::from(score).into(), den.into())
    }

    fn to_set(&self, included: &[bool]) -> LayeredSet {
        let mut set = LayeredSet::empty(&self.alphabet, self.horizon).expect("validated horizon");
        for (i, _) in included.iter().enumerate().filter(|(_, &b)| b) {
            let n = self.lens[i];
            set.insert_rank(n, (i - self.offsets[n]) as u64).expect("in range");
        }
        set
    }
}

const UNDECIDED: u8 = 0;
const IN: u8 = 1;
const OUT: u8 = 2;

struct State<'a> {
    p: &'a SearchProblem,
    status: Vec<u8>,
    blocked: Vec<u32>,
    included: Vec<u64>,
    /// Undecided words with no block, per length.
    open: Vec<u64>,
}

impl<'a> State<'a> {
    fn new(p: &'a SearchProblem) -> Self {
        let mut open = vec![0u64; p.horizon + 1];
        for &n in &p.lens {
            open[n] += 1;
        }
        State {
            p,
            status: vec![UNDECIDED; p.items()],
            blocked: vec![0; p.items()],
            included: vec![0; p.horizon + 1],
            open,
        }
    }

    fn block(&mut self, z: u32, delta: i32) {
        let z = z as usize;
        let before = self.blocked[z];
        self.blocked[z] = (before as i32 + delta) as u32;
        debug_assert_eq!(self.status[z], UNDECIDED);
        let n = self.p.lens[z];
        match (before, self.blocked[z]) {
            (0, _) => self.open[n] -= 1,
            (_, 0) => self.open[n] += 1,
            _ => {}
        }
    }

    fn propagate(&mut self, w: usize, delta: i32) {
        for k in 0..self.p.as_left[w].len() {
            let (y, z) = self.p.as_left[w][k];
            if self.status[y as usize] == IN {
                self.block(z, delta);
            }
        }
        for k in 0..self.p.as_right[w].len() {
            let (x, z) = self.p.as_right[w][k];
            // x = w was counted above as y = w
            if x as usize != w && self.status[x as usize] == IN {
                self.block(z, delta);
            }
        }
    }

    fn include(&mut self, w: usize) {
        debug_assert_eq!(self.blocked[w], 0);
        self.status[w] = IN;
        self.open[self.p.lens[w]] -= 1;
        self.included[self.p.lens[w]] += 1;
        self.propagate(w, 1);
    }

    fn uninclude(&mut self, w: usize) {
        self.propagate(w, -1);
        self.status[w] = UNDECIDED;
        self.open[self.p.lens[w]] += 1;
        self.included[self.p.lens[w]] -= 1;
    }

    fn exclude(&mut self, w: usize) {
        self.status[w] = OUT;
        if self.blocked[w] == 0 {
            self.open[self.p.lens[w]] -= 1;
        }
    }

    fn unexclude(&mut self, w: usize) {
        self.status[w] = UNDECIDED;
        if self.blocked[w] == 0 {
            self.open[self.p.lens[w]] += 1;
        }
    }

    fn score(&self) -> u128 {
        (1..=self.p.horizon)
            .map(|n| self.included[n] as u128 * self.p.weights[n])
            .sum()
    }

    fn bound(&self) -> u128 {
        (1..=self.p.horizon)
            .map(|n| (self.included[n] + self.open[n]) as u128 * self.p.weights[n])
            .sum()
    }

    /// Replays membership decisions for the first words in branching order.
    fn replay(&mut self, decisions: &[bool]) -> Result<()> {
        if decisions.len() > self.p.items() {
            return Err(Error::InvalidArgument("more decisions than words in the ball".into()));
        }
        for (w, &d) in decisions.iter().enumerate() {
            if d {
                if self.blocked[w] > 0 {
                    let (x, y) = self.p.splits[w]
                        .iter()
                        .find(|(x, y)| self.status[*x as usize] == IN && self.status[*y as usize] == IN)
                        .copied()
                        .unwrap_or((0, 0));
                    return Err(Error::Precondition(format!(
                        "word {w} is the product of included words {x} and {y}"
                    )));
                }
                self.include(w);
            } else {
                self.exclude(w);
            }
        }
        Ok(())
    }
}

/// Admissible bound on the best completion of a partial assignment:
/// `decisions[i]` is the membership of the `i`-th word in shortlex order.
pub fn upper_bound(problem: &SearchProblem, decisions: &[bool], objective: Objective) -> Result<BigRational> {
    let mut state = State::new(problem);
    state.replay(decisions)?;
    Ok(problem.value(state.bound(), objective))
}

#[derive(Debug, Clone)]
pub struct SearchResult {
    pub horizon: usize,
    pub objective: Objective,
    pub value: BigRational,
    pub best: LayeredSet,
    /// Search nodes visited.
    pub nodes: u64,
    /// The search finished within budget, so `value` is the optimum.
    pub proof: bool,
}

/// The deterministic part of a result, for JSON output.
#[derive(Debug, Clone, Serialize)]
pub struct SearchSummary {
    pub alphabet: String,
    pub horizon: usize,
    pub objective: Objective,
    #[serde(serialize_with = "report::rational")]
    pub value: BigRational,
    pub proof: bool,
    pub layer_counts: Vec<u64>,
}

impl SearchResult {
    pub fn summary(&self) -> SearchSummary {
        SearchSummary {
            alphabet: self.best.alphabet().to_string(),
            horizon: self.horizon,
            objective: self.objective,
            value: self.value.clone(),
            proof: self.proof,
            layer_counts: (1..=self.horizon).map(|n| self.best.count(n)).collect(),
        }
    }
}

struct Search<'a> {
    state: State<'a>,
    budget: u64,
    nodes: u64,
    aborted: bool,
    best_score: Option<u128>,
    best: Vec<bool>,
}

impl Search<'_> {
    fn descend(&mut self, w: usize) {
        if self.nodes >= self.budget {
            self.aborted = true;
            return;
        }
        self.nodes += 1;
        if w == self.state.p.items() {
            let score = self.state.score();
            if self.best_score.is_none_or(|b| score > b) {
                self.best_score = Some(score);
                self.best = self.state.status.iter().map(|&s| s == IN).collect();
            }
            return;
        }
        if self.best_score.is_some_and(|b| self.state.bound() <= b) {
            return;
        }
        if self.state.blocked[w] == 0 {
            self.state.include(w);
            self.descend(w + 1);
            self.state.uninclude(w);
            if self.aborted {
                return;
            }
        }
        self.state.exclude(w);
        self.descend(w + 1);
        self.state.unexclude(w);
    }
}

/// Branch and bound over all product-free subsets of `F≤(N)`. Beyond
/// `budget` nodes the best set found so far is returned with `proof` unset.
pub fn max_productfree(alphabet: &Alphabet, horizon: usize, objective: Objective, budget: u64) -> Result<SearchResult> {
    let problem = SearchProblem::new(alphabet, horizon)?;
    let mut search = Search {
        state: State::new(&problem),
        budget,
        nodes: 0,
        aborted: false,
        best_score: None,
        best: vec![false; problem.items()],
    };
    search.descend(0);
    let score = search.best_score.unwrap_or(0);
    Ok(SearchResult {
        horizon,
        objective,
        value: problem.value(score, objective),
        best: problem.to_set(&search.best),
        nodes: search.nodes,
        proof: !search.aborted,
    })
}

/// The objective of an explicit set at its horizon.
pub fn objective_value(set: &LayeredSet, objective: Objective) -> BigRational {
    let n = set.horizon();
    let q = BigUint::from(set.alphabet().size());
    let top = q.pow(n as u32);
    let score: BigUint = (1..=n)
        .map(|k| BigUint::from(set.count(k)) * q.pow((n - k) as u32))
        .sum();
    let den = match objective {
        Objective::Mean => top * n,
        Objective::Total => top,
    };
    BigRational::new(score.into(), den.into())
}
