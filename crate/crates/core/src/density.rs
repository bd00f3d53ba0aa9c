//! Exact layer densities and the limit densities built from them.
//!
//! Every word of length `n` carries weight `q^-n`, so each layer has total
//! weight one and `d(n) = |S(n)| / q^n`. Upper asymptotic and upper Banach
//! densities are limsups and cannot be read off a finite profile in general;
//! they are reported as finite-horizon estimates, and as exact values only
//! when the profile comes from an automaton and is detected to be
//! eventually periodic.

use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::report;
use crate::sets::{LayerCount, WordSet};

/// Default profile horizon for regular sets.
pub const DEFAULT_REGULAR_HORIZON: usize = 64;

/// Default minimum window length for Banach estimates.
pub const DEFAULT_MIN_WINDOW: usize = 8;

pub(crate) fn ratio(count: &BigUint, total: &BigUint) -> BigRational {
    BigRational::new(BigInt::from(count.clone()), BigInt::from(total.clone()))
}

/// `d(1), …, d(H)` with the underlying counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityProfile {
    counts: Vec<LayerCount>,
    d: Vec<BigRational>,
    regular: bool,
}

impl DensityProfile {
    /// Builds a profile from raw counts `|S(1)|, …, |S(H)|`.
    pub fn from_counts(q: usize, counts: Vec<BigUint>, regular: bool) -> Self {
        let counts: Vec<LayerCount> = counts
            .into_iter()
            .enumerate()
            .map(|(i, c)| LayerCount::new(q, i + 1, c))
            .collect();
        let d = counts.iter().map(|c| ratio(&c.count, &c.total)).collect();
        DensityProfile { counts, d, regular }
    }

    pub fn horizon(&self) -> usize {
        self.d.len()
    }

    /// `d(n)` for `1 ≤ n ≤ H`.
    pub fn d(&self, n: usize) -> &BigRational {
        &self.d[n - 1]
    }

    pub fn densities(&self) -> &[BigRational] {
        &self.d
    }

    pub fn counts(&self) -> &[LayerCount] {
        &self.counts
    }

    /// Whether the profile was computed from an automaton.
    pub fn is_regular(&self) -> bool {
        self.regular
    }

    /// `Σ_{n=m}^{n'} d(n)`.
    pub fn window_sum(&self, w: &WindowSpec) -> BigRational {
        self.d[w.start - 1..w.end]
            .iter()
            .fold(BigRational::zero(), |acc, x| acc + x)
    }

    pub fn window_mean(&self, w: &WindowSpec) -> BigRational {
        self.window_sum(w) / BigRational::from_integer(BigInt::from(w.len()))
    }

    /// CSV with header `n,count,total,density_num,density_den`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,count,total,density_num,density_den\n");
        for (c, d) in self.counts.iter().zip(&self.d) {
            let _ = writeln!(out, "{},{},{},{},{}", c.n, c.count, c.total, d.numer(), d.denom());
        }
        out
    }

    fn prefix_sums(&self) -> Vec<BigRational> {
        let mut sums = Vec::with_capacity(self.d.len() + 1);
        sums.push(BigRational::zero());
        for x in &self.d {
            let next = sums.last().expect("nonempty") + x;
            sums.push(next);
        }
        sums
    }
}

/// `S(n) / q^n` for `n = 1..=h`.
pub fn profile<S: WordSet + ?Sized>(set: &S, h: usize) -> Result<DensityProfile> {
    if h == 0 {
        return Err(Error::InvalidArgument("profile horizon must be at least 1".into()));
    }
    if let Some(limit) = set.horizon() {
        if h > limit {
            return Err(Error::BeyondHorizon { len: h, horizon: limit });
        }
    }
    let counts = set.layer_counts(h)?;
    Ok(DensityProfile::from_counts(set.alphabet().size(), counts, set.is_regular()))
}

/// `d(n; ℓ₁,…,ℓₖ) = |S(n; ℓ₁,…,ℓₖ)| / q^n`. An empty list gives `d(n)`.
pub fn refined_density<S: WordSet + ?Sized>(set: &S, n: usize, lengths: &[usize]) -> Result<BigRational> {
    let count = if lengths.is_empty() {
        crate::sets::validate_lengths(n, lengths)?;
        set.layer_count(n)?
    } else {
        set.refined_count(n, lengths)?
    };
    let total = BigUint::from(set.alphabet().size()).pow(n as u32);
    Ok(ratio(&count, &total))
}

/// `|S ∩ F_≤(n)| / |F_≤(n)|`: density under the counting measure on balls.
pub fn ball_density<S: WordSet + ?Sized>(set: &S, n: usize) -> Result<BigRational> {
    if n == 0 {
        return Err(Error::EmptyWord);
    }
    if let Some(limit) = set.horizon() {
        if n > limit {
            return Err(Error::BeyondHorizon { len: n, horizon: limit });
        }
    }
    let counts = set.layer_counts(n)?;
    let q = BigUint::from(set.alphabet().size());
    let members = counts.iter().fold(BigUint::zero(), |acc, c| acc + c);
    let ball = (1..=n).fold(BigUint::zero(), |acc, i| acc + q.pow(i as u32));
    Ok(ratio(&members, &ball))
}

/// A window `[start, end]` of lengths, both ends inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WindowSpec {
    pub start: usize,
    pub end: usize,
}

impl WindowSpec {
    pub fn new(start: usize, end: usize) -> Result<Self> {
        if start == 0 || end < start {
            return Err(Error::InvalidArgument(format!("invalid window [{start}, {end}]")));
        }
        Ok(WindowSpec { start, end })
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.end - self.start + 1
    }
}

/// Result of period detection on a profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PeriodReport {
    pub preperiod: usize,
    pub period: usize,
    pub holds: bool,
}

/// Finds the smallest period `p ≤ H/3`, and for it the smallest `n₀`, with
/// `d(n + p) = d(n)` for all `n₀ ≤ n ≤ H − p`. The periodic stretch must
/// cover at least three periods so that two full periods are checked.
pub fn detect_period(profile: &DensityProfile) -> PeriodReport {
    let h = profile.horizon();
    let none = PeriodReport {
        preperiod: 0,
        period: 0,
        holds: false,
    };
    if h < 4 {
        return none;
    }
    let d = profile.densities();
    for p in 1..=h / 3 {
        // walk back from the end while d(n) = d(n + p)
        let mut n0 = h - p + 1;
        while n0 > 1 && d[n0 - 2] == d[n0 - 2 + p] {
            n0 -= 1;
        }
        if h + 1 - n0 >= 3 * p {
            return PeriodReport {
                preperiod: n0,
                period: p,
                holds: true,
            };
        }
    }
    none
}

/// A finite-horizon limsup estimate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LimitEstimate {
    /// The exact limit when `exact`, otherwise the finite-horizon estimate.
    #[serde(serialize_with = "report::rational")]
    pub value: BigRational,
    pub exact: bool,
    /// Largest window mean observed within the horizon.
    #[serde(serialize_with = "report::rational")]
    pub estimate: BigRational,
    /// First window attaining `estimate`.
    pub window: WindowSpec,
    pub horizon: usize,
    pub period: PeriodReport,
}

fn period_mean(profile: &DensityProfile, period: &PeriodReport) -> BigRational {
    let start = profile.horizon() + 1 - period.period;
    profile.window_mean(&WindowSpec {
        start,
        end: profile.horizon(),
    })
}

fn finish(profile: &DensityProfile, estimate: BigRational, window: WindowSpec) -> LimitEstimate {
    let period = detect_period(profile);
    let exact = profile.is_regular() && period.holds;
    let value = if exact {
        period_mean(profile, &period)
    } else {
        estimate.clone()
    };
    LimitEstimate {
        value,
        exact,
        estimate,
        window,
        horizon: profile.horizon(),
        period,
    }
}

/// Upper asymptotic density: the largest prefix average `Σ_{i≤n} d(i) / n`
/// for `n ≤ H`, or the period mean for eventually periodic regular profiles.
pub fn upper_asymptotic(profile: &DensityProfile) -> LimitEstimate {
    let sums = profile.prefix_sums();
    let mut best = (BigRational::zero(), WindowSpec { start: 1, end: 1 });
    for n in 1..=profile.horizon() {
        let mean = &sums[n] / BigRational::from_integer(BigInt::from(n));
        if n == 1 || mean > best.0 {
            best = (mean, WindowSpec { start: 1, end: n });
        }
    }
    finish(profile, best.0, best.1)
}

/// Upper Banach density: the largest mean over windows of length at least
/// `min_window` inside `[1, H]`, or the period mean for eventually periodic
/// regular profiles.
pub fn upper_banach(profile: &DensityProfile, min_window: usize) -> Result<LimitEstimate> {
    let h = profile.horizon();
    if min_window == 0 || min_window > h {
        return Err(Error::InvalidArgument(format!(
            "minimum window {min_window} must lie in [1, {h}]"
        )));
    }
    let sums = profile.prefix_sums();
    let mut best: Option<(BigRational, WindowSpec)> = None;
    for start in 1..=h + 1 - min_window {
        for end in start + min_window - 1..=h {
            let mean = (&sums[end] - &sums[start - 1]) / BigRational::from_integer(BigInt::from(end - start + 1));
            if best.as_ref().is_none_or(|(b, _)| mean > *b) {
                best = Some((mean, WindowSpec { start, end }));
            }
        }
    }
    let (estimate, window) = best.expect("at least one window");
    Ok(finish(profile, estimate, window))
}

/// `1/2` as an exact rational.
pub fn half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sets::{Dfa, LayeredSet};
    use crate::words::Alphabet;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn odd_a() -> Dfa {
        let a = Alphabet::binary();
        // parity of the number of a's
        Dfa::new(&a, 0, vec![false, true], vec![1, 0, 0, 1]).unwrap()
    }

    #[test]
    fn odd_a_profile_is_half() {
        let p = profile(&odd_a(), 64).unwrap();
        assert!(p.densities().iter().all(|d| *d == half()));
        assert_eq!(p.counts()[9].count, BigUint::from(512u32));
    }

    #[test]
    fn odd_length_profile_alternates() {
        let odd = Dfa::length_parity(&Alphabet::binary(), true);
        let p = profile(&odd, 6).unwrap();
        let expect: Vec<BigRational> = [1, 0, 1, 0, 1, 0].iter().map(|&x| rat(x, 1)).collect();
        assert_eq!(p.densities(), &expect[..]);
    }

    #[test]
    fn empty_profile_is_zero() {
        let p = profile(&Dfa::empty_language(&Alphabet::binary()), 10).unwrap();
        assert!(p.densities().iter().all(Zero::is_zero));
    }

    #[test]
    fn explicit_profile_respects_horizon() {
        let s = LayeredSet::empty(&Alphabet::binary(), 4).unwrap();
        assert!(matches!(profile(&s, 5), Err(Error::BeyondHorizon { .. })));
    }

    #[test]
    fn refined_density_examples() {
        let a = Alphabet::binary();
        let odd = Dfa::length_parity(&a, true);
        assert!(refined_density(&odd, 3, &[1]).unwrap().is_zero());

        let mut s = LayeredSet::from_words(&a, [&a.word("a").unwrap()], 3).unwrap();
        s.fill_layer(3).unwrap();
        assert_eq!(refined_density(&s, 3, &[1]).unwrap(), half());
        assert_eq!(refined_density(&s, 3, &[]).unwrap(), rat(1, 1));
        let d = Dfa::from_explicit(&s).unwrap();
        assert_eq!(refined_density(&d, 3, &[1]).unwrap(), half());
    }

    #[test]
    fn asymptotic_examples() {
        let a = Alphabet::binary();
        let odd = profile(&Dfa::length_parity(&a, true), 64).unwrap();
        let est = upper_asymptotic(&odd);
        assert!(est.exact);
        assert_eq!(est.value, half());
        assert_eq!(est.period.period, 2);

        let full = profile(&Dfa::universal(&a), 64).unwrap();
        let est = upper_asymptotic(&full);
        assert!(est.exact);
        assert_eq!(est.value, rat(1, 1));

        let f1 = LayeredSet::full_layers(&a, 8, [1]).unwrap();
        let est = upper_asymptotic(&profile(&f1, 8).unwrap());
        assert!(!est.exact);
        assert_eq!(est.value, rat(1, 1));
        assert_eq!(est.window, WindowSpec { start: 1, end: 1 });
    }

    #[test]
    fn banach_examples() {
        let a = Alphabet::binary();
        for d in [odd_a(), Dfa::length_parity(&a, true)] {
            let est = upper_banach(&profile(&d, 64).unwrap(), 8).unwrap();
            assert!(est.exact);
            assert_eq!(est.value, half());
        }
        let est = upper_banach(&profile(&Dfa::universal(&a), 64).unwrap(), 8).unwrap();
        assert_eq!(est.value, rat(1, 1));
        assert!(upper_banach(&profile(&odd_a(), 8).unwrap(), 9).is_err());
    }

    #[test]
    fn ball_density_examples() {
        let a = Alphabet::binary();
        assert_eq!(ball_density(&Dfa::universal(&a), 7).unwrap(), rat(1, 1));
        for n in 1..=12 {
            let layer = Dfa::layer(&a, n);
            assert!(ball_density(&layer, n).unwrap() >= half());
        }
    }

    #[test]
    fn period_examples() {
        let a = Alphabet::binary();
        let odd = profile(&Dfa::length_parity(&a, true), 16).unwrap();
        assert_eq!(
            detect_period(&odd),
            PeriodReport { preperiod: 1, period: 2, holds: true }
        );
        assert_eq!(
            detect_period(&profile(&odd_a(), 16).unwrap()),
            PeriodReport { preperiod: 1, period: 1, holds: true }
        );
        // densities 1, 1/4, 3/8, 1/16, ... never repeat
        let counts = [2u32, 1, 3, 1, 5, 9, 17, 3, 7, 100, 11, 13]
            .iter()
            .map(|&c| BigUint::from(c))
            .collect();
        let p = DensityProfile::from_counts(2, counts, false);
        assert!(!detect_period(&p).holds);
        assert!(!detect_period(&DensityProfile::from_counts(2, vec![BigUint::zero(); 3], true)).holds);
    }

    #[test]
    fn csv_rows_are_exact() {
        let csv = profile(&odd_a(), 3).unwrap().to_csv();
        assert_eq!(
            csv,
            "n,count,total,density_num,density_den\n1,1,2,1,2\n2,2,4,1,2\n3,4,8,1,2\n"
        );
    }
}
