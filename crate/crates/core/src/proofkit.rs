//! Finite-horizon machinery behind the `1/2` bound on the Banach density of
//! product-free sets.
//!
//! * [`proposition_check`] evaluates the chained inequality
//!   `Σ tᵢ·d(n−ℓᵢ) + d(n) ≤ Σ tᵢ + d(n; ℓ₁…ℓₖ) ≤ 1`, where
//!   `tᵢ = d(ℓᵢ; ℓ₁…ℓᵢ₋₁)`, which every product-free set satisfies.
//! * [`extract_lsequence`] greedily builds lengths `ℓ₁ < ℓ₂ < …` whose
//!   refined densities accumulate to at least `1 − 2^-k`, scanning windows
//!   of high mean as the contradiction argument does.
//! * [`window_bound_certificate`] turns such a sequence into the bound
//!   `2ᵏ/(2ᵏ⁺¹−1) + 2(ℓₖ+1)/|I|` on the mean density over a window `I`.
//! * [`phi_level_set`] and [`simple_bound_estimate`] cover the weaker bound
//!   obtained from the pairwise inequality alone, where the golden-ratio
//!   conjugate `φ = (√5−1)/2` appears. `φ` is never approximated: it is
//!   carried as an element of `ℚ(√5)`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::density::{half, profile, refined_density, upper_asymptotic, DensityProfile, WindowSpec};
use crate::error::{Error, Result};
use crate::report::{self, rational_string};
use crate::sets::{validate_lengths, WordSet};

/// An element `a + b√5` of `ℚ(√5)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Surd {
    pub rational: BigRational,
    pub sqrt5: BigRational,
}

impl Surd {
    pub fn new(rational: BigRational, sqrt5: BigRational) -> Self {
        Surd { rational, sqrt5 }
    }

    pub fn from_rational(r: BigRational) -> Self {
        Surd::new(r, BigRational::zero())
    }

    /// `φ = (√5 − 1)/2`, the positive root of `x² + x = 1`.
    pub fn phi() -> Self {
        Surd::new(-half(), half())
    }

    /// `(1 + φ)/2 = (1 + √5)/4`.
    pub fn simple_bound() -> Self {
        let quarter = BigRational::new(BigInt::one(), BigInt::from(4));
        Surd::new(quarter.clone(), quarter)
    }

    pub fn signum(&self) -> Ordering {
        let (a, b) = (&self.rational, &self.sqrt5);
        let sa = a.cmp(&BigRational::zero());
        let sb = b.cmp(&BigRational::zero());
        match (sa, sb) {
            (s, Ordering::Equal) => s,
            (Ordering::Equal, s) => s,
            (x, y) if x == y => x,
            // opposite signs: compare a² with 5b²
            (Ordering::Greater, _) => (a * a).cmp(&(b * b * BigRational::from_integer(5.into()))),
            (Ordering::Less, _) => (b * b * BigRational::from_integer(5.into())).cmp(&(a * a)),
        }
    }

    pub fn approx(&self) -> f64 {
        report::approx(&self.rational) + report::approx(&self.sqrt5) * 5f64.sqrt()
    }
}

impl Add for Surd {
    type Output = Surd;
    fn add(self, o: Surd) -> Surd {
        Surd::new(self.rational + o.rational, self.sqrt5 + o.sqrt5)
    }
}

impl Sub for Surd {
    type Output = Surd;
    fn sub(self, o: Surd) -> Surd {
        Surd::new(self.rational - o.rational, self.sqrt5 - o.sqrt5)
    }
}

impl Neg for Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        Surd::new(-self.rational, -self.sqrt5)
    }
}

impl Mul for Surd {
    type Output = Surd;
    fn mul(self, o: Surd) -> Surd {
        let five = BigRational::from_integer(5.into());
        Surd::new(
            &self.rational * &o.rational + five * &self.sqrt5 * &o.sqrt5,
            &self.rational * &o.sqrt5 + &self.sqrt5 * &o.rational,
        )
    }
}

impl PartialOrd for Surd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Surd {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.clone() - other.clone()).signum()
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*sqrt5", rational_string(&self.rational), rational_string(&self.sqrt5))
    }
}

impl fmt::Debug for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Surd({self})")
    }
}

impl Serialize for Surd {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Surd", 2)?;
        st.serialize_field("rational", &rational_string(&self.rational))?;
        st.serialize_field("sqrt5", &rational_string(&self.sqrt5))?;
        st.end()
    }
}

/// Exact comparison of a nonnegative rational against `φ`: for `d ≥ 0`,
/// `d > φ ⇔ (2d + 1)² > 5`.
#[derive(Debug, Clone, Copy, Default)]
pub struct PhiGate;

impl PhiGate {
    pub fn exceeds(&self, d: &BigRational) -> bool {
        if d.is_negative() {
            return false;
        }
        let t = d * BigRational::from_integer(2.into()) + BigRational::one();
        t.clone() * t > BigRational::from_integer(5.into())
    }

    /// `d` compared with `φ`; never `Equal` since `φ` is irrational.
    pub fn compare(&self, d: &BigRational) -> Ordering {
        if self.exceeds(d) {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }
}

/// The chained inequality for one `(ℓ₁…ℓₖ, n)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropositionReport {
    pub n: usize,
    pub lengths: Vec<usize>,
    /// `Σ tᵢ·d(n−ℓᵢ) + d(n)`
    #[serde(serialize_with = "report::rational")]
    pub lhs: BigRational,
    /// `Σ tᵢ + d(n; ℓ₁…ℓₖ)`
    #[serde(serialize_with = "report::rational")]
    pub mid: BigRational,
    /// `tᵢ = d(ℓᵢ; ℓ₁…ℓᵢ₋₁)`
    #[serde(serialize_with = "report::rationals")]
    pub terms: Vec<BigRational>,
    pub ok: bool,
}

/// Refined terms `d(ℓ₁), d(ℓ₂; ℓ₁), …, d(ℓₖ; ℓ₁…ℓₖ₋₁)`.
pub fn refined_terms<S: WordSet + ?Sized>(set: &S, lengths: &[usize]) -> Result<Vec<BigRational>> {
    (0..lengths.len())
        .map(|i| refined_density(set, lengths[i], &lengths[..i]))
        .collect()
}

pub fn proposition_check<S: WordSet + ?Sized>(set: &S, lengths: &[usize], n: usize) -> Result<PropositionReport> {
    validate_lengths(n, lengths)?;
    let terms = refined_terms(set, lengths)?;
    let d = |m: usize| refined_density(set, m, &[]);
    let mut lhs = d(n)?;
    for (t, &l) in terms.iter().zip(lengths) {
        lhs += t * d(n - l)?;
    }
    let mid = terms.iter().fold(refined_density(set, n, lengths)?, |acc, t| acc + t);
    let ok = lhs <= mid && mid <= BigRational::one();
    Ok(PropositionReport {
        n,
        lengths: lengths.to_vec(),
        lhs,
        mid,
        terms,
        ok,
    })
}

/// An increasing length sequence with its refined densities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LSequence {
    pub lengths: Vec<usize>,
    #[serde(serialize_with = "report::rationals")]
    pub terms: Vec<BigRational>,
    #[serde(serialize_with = "report::rationals")]
    pub cumulative: Vec<BigRational>,
}

impl LSequence {
    pub fn empty() -> Self {
        LSequence {
            lengths: Vec::new(),
            terms: Vec::new(),
            cumulative: Vec::new(),
        }
    }

    /// Builds the sequence for `lengths`, computing its terms from `set`.
    pub fn for_set<S: WordSet + ?Sized>(set: &S, lengths: &[usize]) -> Result<Self> {
        if let Some(&last) = lengths.last() {
            validate_lengths(last + 1, lengths)?;
        }
        let mut seq = LSequence::empty();
        for (l, t) in lengths.iter().zip(refined_terms(set, lengths)?) {
            seq.push(*l, t);
        }
        Ok(seq)
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.lengths.len()
    }

    pub fn last_length(&self) -> Option<usize> {
        self.lengths.last().copied()
    }

    pub fn total(&self) -> BigRational {
        self.cumulative.last().cloned().unwrap_or_else(BigRational::zero)
    }

    fn push(&mut self, length: usize, term: BigRational) {
        let total = self.total() + &term;
        self.lengths.push(length);
        self.terms.push(term);
        self.cumulative.push(total);
    }

    /// Whether the accumulated density reaches `1 − 2^-k`.
    pub fn meets_target(&self) -> bool {
        self.total() >= stage_target(self.len())
    }
}

/// `1 − 2^-k`.
pub fn stage_target(k: usize) -> BigRational {
    let pow = BigInt::one() << k;
    BigRational::one() - BigRational::new(BigInt::one(), pow)
}

/// How windows are scanned during extraction: starts increase, and for each
/// start the length doubles from `max(min_len, ⌊(ℓₖ+1)/ε⌋ + 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WindowPolicy {
    pub min_len: usize,
}

impl Default for WindowPolicy {
    fn default() -> Self {
        WindowPolicy { min_len: 8 }
    }
}

/// One window inspected during extraction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WindowRecord {
    /// Index of the term being sought (1-based).
    pub stage: usize,
    pub window: WindowSpec,
    #[serde(serialize_with = "report::rational")]
    pub mean: BigRational,
    /// Mean exceeds `1/2 + ε`.
    pub exceeds: bool,
    #[serde(serialize_with = "report::rational")]
    pub target: BigRational,
    pub chosen: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Exhaustion {
    /// No length has `d(n) ≥ 1/2`.
    NoFirstTerm,
    /// No admissible window has mean above `1/2 + ε`.
    NoWindow,
    /// Windows of high mean exist but none holds a length reaching the target.
    NoCandidate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Extraction {
    pub sequence: LSequence,
    pub trace: Vec<WindowRecord>,
    /// Why the next term could not be found within the horizon. Failing to
    /// extend is evidence that `d*(S) ≤ 1/2 + ε` at this horizon, not proof.
    pub stopped: Exhaustion,
    pub stopped_at_stage: usize,
    pub horizon: usize,
    #[serde(serialize_with = "report::rational")]
    pub epsilon: BigRational,
    pub policy: WindowPolicy,
}

/// Greedy construction of the length sequence within `[1, H]`.
pub fn extract_lsequence<S: WordSet + ?Sized>(
    set: &S,
    epsilon: &BigRational,
    horizon: usize,
    policy: WindowPolicy,
) -> Result<Extraction> {
    if !epsilon.is_positive() {
        return Err(Error::InvalidArgument("epsilon must be positive".into()));
    }
    if policy.min_len == 0 {
        return Err(Error::InvalidArgument("window minimum must be positive".into()));
    }
    let prof = profile(set, horizon)?;
    let threshold = half() + epsilon;
    let mut seq = LSequence::empty();
    let mut trace = Vec::new();
    let done = |seq: LSequence, trace, stopped, stage| Extraction {
        sequence: seq,
        trace,
        stopped,
        stopped_at_stage: stage,
        horizon,
        epsilon: epsilon.clone(),
        policy,
    };

    let whole = WindowSpec { start: 1, end: horizon };
    let first = (1..=horizon).find(|&n| *prof.d(n) >= half());
    let mean = prof.window_mean(&whole);
    trace.push(WindowRecord {
        stage: 1,
        window: whole,
        exceeds: mean > threshold,
        mean,
        target: stage_target(1),
        chosen: first,
    });
    let Some(l1) = first else {
        return Ok(done(seq, trace, Exhaustion::NoFirstTerm, 1));
    };
    seq.push(l1, prof.d(l1).clone());

    loop {
        let k = seq.len();
        let last = seq.last_length().expect("nonempty");
        let target = stage_target(k + 1);
        // |I| must exceed (ℓₖ + 1)/ε
        let forced = (BigRational::from_integer(BigInt::from(last + 1)) / epsilon)
            .floor()
            .to_integer();
        let forced: usize = usize::try_from(forced + 1).unwrap_or(usize::MAX);
        let base_len = policy.min_len.max(forced);
        let mut saw_window = false;
        let mut found = None;

        'scan: for start in last + 1..=horizon {
            let mut len = base_len;
            while len <= horizon + 1 - start {
                let window = WindowSpec {
                    start,
                    end: start + len - 1,
                };
                let mean = prof.window_mean(&window);
                let exceeds = mean > threshold;
                let mut chosen = None;
                if exceeds {
                    saw_window = true;
                    for n in window.start..=window.end {
                        let t = refined_density(set, n, &seq.lengths)?;
                        if seq.total() + &t >= target {
                            chosen = Some((n, t));
                            break;
                        }
                    }
                }
                trace.push(WindowRecord {
                    stage: k + 1,
                    window,
                    mean,
                    exceeds,
                    target: target.clone(),
                    chosen: chosen.as_ref().map(|(n, _)| *n),
                });
                if chosen.is_some() {
                    found = chosen;
                    break 'scan;
                }
                len = match len.checked_mul(2) {
                    Some(l) => l,
                    None => break,
                };
            }
        }

        match found {
            Some((n, t)) => seq.push(n, t),
            None => {
                let why = if saw_window {
                    Exhaustion::NoCandidate
                } else {
                    Exhaustion::NoWindow
                };
                return Ok(done(seq, trace, why, k + 1));
            }
        }
    }
}

/// The window bound derived from a length sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WindowCertificate {
    pub window: WindowSpec,
    pub k: usize,
    pub last_length: usize,
    /// `2ᵏ/(2ᵏ⁺¹−1) + 2(ℓₖ+1)/|I|`
    #[serde(serialize_with = "report::rational")]
    pub bound: BigRational,
    #[serde(serialize_with = "report::rational")]
    pub mean: BigRational,
    /// `mean ≤ bound`; guaranteed for product-free sets.
    pub holds: bool,
}

/// `2ᵏ/(2ᵏ⁺¹−1) + 2(ℓₖ+1)/|I|`.
pub fn window_bound(k: usize, last_length: usize, window_len: usize) -> BigRational {
    let pow = BigInt::one() << k;
    let main = BigRational::new(pow.clone(), (pow << 1usize) - BigInt::one());
    main + BigRational::new(BigInt::from(2 * (last_length + 1)), BigInt::from(window_len))
}

pub fn window_bound_certificate(
    profile: &DensityProfile,
    window: WindowSpec,
    seq: &LSequence,
) -> Result<WindowCertificate> {
    let k = seq.len();
    let last = seq
        .last_length()
        .ok_or_else(|| Error::Precondition("the length sequence is empty".into()))?;
    if !seq.meets_target() {
        return Err(Error::Precondition(format!(
            "cumulative density {} is below 1 - 1/2^{k}",
            rational_string(&seq.total())
        )));
    }
    if window.start <= last {
        return Err(Error::Precondition(format!(
            "window must start after the last length {last}"
        )));
    }
    if window.end > profile.horizon() {
        return Err(Error::BeyondHorizon {
            len: window.end,
            horizon: profile.horizon(),
        });
    }
    let bound = window_bound(k, last, window.len());
    let mean = profile.window_mean(&window);
    Ok(WindowCertificate {
        window,
        k,
        last_length: last,
        holds: mean <= bound,
        bound,
        mean,
    })
}

/// Every window `I ⊆ [ℓₖ+1, H]` with `|I| ≥ min_len` checked against its bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WindowSweep {
    pub checked: usize,
    pub violations: Vec<WindowCertificate>,
}

pub fn sweep_windows(profile: &DensityProfile, seq: &LSequence, min_len: usize) -> Result<WindowSweep> {
    let last = seq
        .last_length()
        .ok_or_else(|| Error::Precondition("the length sequence is empty".into()))?;
    let h = profile.horizon();
    let min_len = min_len.max(1);
    let mut sweep = WindowSweep {
        checked: 0,
        violations: Vec::new(),
    };
    for start in last + 1..=h {
        for end in start + min_len - 1..=h {
            let cert = window_bound_certificate(profile, WindowSpec { start, end }, seq)?;
            sweep.checked += 1;
            if !cert.holds {
                sweep.violations.push(cert);
            }
        }
    }
    Ok(sweep)
}

/// `{ n ≤ H : d(n) > φ }` and whether it is sum-free.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PhiLevelSet {
    pub members: Vec<usize>,
    pub sum_free: bool,
    /// A violating `(a, b, a + b)`, least `a + b` first.
    pub violation: Option<(usize, usize, usize)>,
}

pub fn phi_level_set(profile: &DensityProfile) -> PhiLevelSet {
    let gate = PhiGate;
    let h = profile.horizon();
    let mut in_set = vec![false; h + 1];
    let members: Vec<usize> = (1..=h).filter(|&n| gate.exceeds(profile.d(n))).collect();
    for &m in &members {
        in_set[m] = true;
    }
    let violation = members.iter().find_map(|&c| {
        (1..=c / 2)
            .find(|&a| in_set[a] && in_set[c - a])
            .map(|a| (a, c - a, c))
    });
    PhiLevelSet {
        members,
        sum_free: violation.is_none(),
        violation,
    }
}

/// The finite-horizon form of the simple bound `d̄(S) ≤ (1 + φ)/2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimpleBound {
    /// Largest prefix average of the profile.
    #[serde(serialize_with = "report::rational")]
    pub raw: BigRational,
    /// Largest value of `(tₙ + φ(n − tₙ))/n` over `n ≤ H`, where `tₙ` counts
    /// the lengths up to `n` with density above `φ`; every prefix average
    /// is at most this when those lengths are sum-free.
    pub implied: Surd,
    /// `(1 + φ)/2`.
    pub limit: Surd,
    pub level_set_sum_free: bool,
    /// `raw ≤ implied`.
    pub consistent: bool,
}

pub fn simple_bound_estimate(profile: &DensityProfile) -> SimpleBound {
    let level = phi_level_set(profile);
    let raw = upper_asymptotic(profile).estimate;
    let phi = Surd::phi();
    let mut above = 0usize;
    let mut implied: Option<Surd> = None;
    for n in 1..=profile.horizon() {
        if level.members.binary_search(&n).is_ok() {
            above += 1;
        }
        let rest = BigRational::from_integer(BigInt::from(n - above));
        let value = Surd::from_rational(BigRational::from_integer(BigInt::from(above)))
            + phi.clone() * Surd::from_rational(rest);
        let value = value * Surd::from_rational(BigRational::new(BigInt::one(), BigInt::from(n)));
        if implied.as_ref().is_none_or(|b| value > *b) {
            implied = Some(value);
        }
    }
    let implied = implied.unwrap_or_else(|| Surd::from_rational(BigRational::zero()));
    SimpleBound {
        consistent: Surd::from_rational(raw.clone()) <= implied,
        raw,
        implied,
        limit: Surd::simple_bound(),
        level_set_sum_free: level.sum_free,
    }
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
        Dfa::new(&Alphabet::binary(), 0, vec![false, true], vec![1, 0, 0, 1]).unwrap()
    }

    #[test]
    fn surd_identities() {
        let phi = Surd::phi();
        assert_eq!(phi.clone() * phi.clone() + phi.clone(), Surd::from_rational(rat(1, 1)));
        let bound = (Surd::from_rational(rat(1, 1)) + phi.clone()) * Surd::from_rational(rat(1, 2));
        assert_eq!(bound, Surd::simple_bound());
        assert!((bound.approx() - 0.809).abs() < 1e-3);
        assert!(phi > Surd::from_rational(rat(618, 1000)));
        assert!(phi < Surd::from_rational(rat(619, 1000)));
    }

    #[test]
    fn phi_gate_examples() {
        // (2·5/8 + 1)² = 81/16 > 80/16
        assert!(PhiGate.exceeds(&rat(5, 8)));
        assert!(!PhiGate.exceeds(&rat(9, 16)));
        assert!(!PhiGate.exceeds(&rat(1, 2)));
        assert!(!PhiGate.exceeds(&rat(-3, 1)));
        assert_eq!(PhiGate.compare(&rat(1, 1)), Ordering::Greater);
    }

    #[test]
    fn phi_gate_agrees_with_surd_ordering() {
        for den in 1..60i64 {
            for num in 0..=den {
                let d = rat(num, den);
                let via_surd = Surd::from_rational(d.clone()) > Surd::phi();
                assert_eq!(PhiGate.exceeds(&d), via_surd, "{num}/{den}");
            }
        }
    }

    #[test]
    fn proposition_examples() {
        let a = Alphabet::binary();
        let odd = Dfa::length_parity(&a, true);
        let r = proposition_check(&odd, &[1], 3).unwrap();
        assert_eq!((r.lhs.clone(), r.mid.clone()), (rat(1, 1), rat(1, 1)));
        assert!(r.ok);

        let r = proposition_check(&odd_a(), &[1], 3).unwrap();
        assert_eq!(r.lhs, rat(3, 4));
        assert_eq!(r.mid, rat(3, 4));
        assert!(r.ok);

        let r = proposition_check(&Dfa::universal(&a), &[1], 2).unwrap();
        assert_eq!(r.lhs, rat(2, 1));
        assert!(!r.ok);

        assert!(proposition_check(&odd, &[2, 1], 3).is_err());
    }

    #[test]
    fn extraction_on_odd_length_set() {
        let odd = Dfa::length_parity(&Alphabet::binary(), true);
        let ex = extract_lsequence(&odd, &rat(1, 10), 64, WindowPolicy::default()).unwrap();
        assert_eq!(ex.sequence.lengths, [1]);
        assert_eq!(ex.sequence.total(), rat(1, 1));
        assert!(ex.sequence.meets_target());
        assert_eq!(ex.stopped, Exhaustion::NoWindow);
        assert!(ex.trace.iter().skip(1).all(|w| !w.exceeds && w.window.len() > 20));
    }

    #[test]
    fn extraction_on_odd_a() {
        let ex = extract_lsequence(&odd_a(), &rat(1, 10), 64, WindowPolicy::default()).unwrap();
        assert_eq!(ex.sequence.lengths, [1]);
        assert_eq!(ex.sequence.terms, [rat(1, 2)]);
        assert_eq!(ex.stopped, Exhaustion::NoWindow);
        assert!(ex.trace.iter().skip(1).all(|w| w.mean == rat(1, 2)));
    }

    #[test]
    fn extraction_without_first_term() {
        let a = Alphabet::binary();
        let sparse = Dfa::from_words(&a, [&a.word("ab").unwrap()]).unwrap();
        let ex = extract_lsequence(&sparse, &rat(1, 10), 16, WindowPolicy::default()).unwrap();
        assert!(ex.sequence.lengths.is_empty());
        assert_eq!(ex.stopped, Exhaustion::NoFirstTerm);
    }

    #[test]
    fn extraction_on_dense_non_product_free_set() {
        // d(1) = 1 already meets every target, so each stage takes the first
        // length of its window with a zero refined term until windows no
        // longer fit; the certificate then fails, as it must
        let full = Dfa::universal(&Alphabet::binary());
        let ex = extract_lsequence(&full, &rat(1, 10), 40, WindowPolicy::default()).unwrap();
        assert_eq!(ex.sequence.lengths, [1, 2, 3]);
        assert_eq!(ex.sequence.terms, [rat(1, 1), rat(0, 1), rat(0, 1)]);
        assert_eq!(ex.stopped, Exhaustion::NoWindow);
        let prof = profile(&full, 40).unwrap();
        let cert = window_bound_certificate(&prof, WindowSpec::new(4, 40).unwrap(), &ex.sequence).unwrap();
        assert!(!cert.holds);
    }

    #[test]
    fn sweep_examples() {
        let a = Alphabet::binary();
        let odd = Dfa::length_parity(&a, true);
        let prof = profile(&odd, 64).unwrap();
        let seq = LSequence::for_set(&odd, &[1]).unwrap();
        let sweep = sweep_windows(&prof, &seq, 16).unwrap();
        // starts 2..=49, each with 64 - start - 14 admissible ends
        assert_eq!(sweep.checked, (2..=49).map(|s| 64 - s - 14).sum::<usize>());
        assert!(sweep.violations.is_empty());

        let full = Dfa::universal(&a);
        let seq = LSequence::for_set(&full, &[1, 2]).unwrap();
        let sweep = sweep_windows(&profile(&full, 64).unwrap(), &seq, 16).unwrap();
        assert!(!sweep.violations.is_empty());
    }

    #[test]
    fn window_bound_examples() {
        // k = 1, ℓ₁ = 1, |I| = 100: 2/3 + 4/100
        assert_eq!(window_bound(1, 1, 100), rat(2, 3) + rat(4, 100));
        let odd = Dfa::length_parity(&Alphabet::binary(), true);
        let prof = profile(&odd, 101).unwrap();
        let seq = LSequence::for_set(&odd, &[1]).unwrap();
        let cert = window_bound_certificate(&prof, WindowSpec::new(2, 101).unwrap(), &seq).unwrap();
        assert_eq!(cert.mean, rat(1, 2));
        assert_eq!(cert.bound, rat(53, 75));
        assert!(cert.holds);

        // the main term decreases to 1/2
        let mut prev = window_bound(1, 0, 1 << 20);
        for k in 2..40 {
            let next = window_bound(k, 0, 1 << 20);
            assert!(next < prev);
            prev = next;
        }
        assert!(prev - rat(1, 2) < rat(1, 1000));
    }

    #[test]
    fn window_bound_preconditions() {
        let prof = profile(&odd_a(), 20).unwrap();
        let short = LSequence::for_set(&odd_a(), &[1, 2]).unwrap();
        // 1/2 + d(2;1) = 1/2 + 1/4 = 3/4 = 1 - 1/4
        assert!(short.meets_target());
        assert!(window_bound_certificate(&prof, WindowSpec::new(2, 10).unwrap(), &short).is_err());
        assert!(window_bound_certificate(&prof, WindowSpec::new(3, 30).unwrap(), &short).is_err());
        let a = Alphabet::binary();
        let sparse = Dfa::from_words(&a, [&a.word("ab").unwrap()]).unwrap();
        // d(2) = 1/4 < 1 - 1/2
        let weak = LSequence::for_set(&sparse, &[2]).unwrap();
        assert!(!weak.meets_target());
        assert!(window_bound_certificate(&prof, WindowSpec::new(4, 10).unwrap(), &weak).is_err());
        assert!(window_bound_certificate(&prof, WindowSpec::new(1, 10).unwrap(), &LSequence::empty()).is_err());
    }

    #[test]
    fn level_set_examples() {
        let a = Alphabet::binary();
        let odd = profile(&Dfa::length_parity(&a, true), 12).unwrap();
        let lv = phi_level_set(&odd);
        assert_eq!(lv.members, [1, 3, 5, 7, 9, 11]);
        assert!(lv.sum_free);

        let lv = phi_level_set(&profile(&odd_a(), 12).unwrap());
        assert!(lv.members.is_empty());
        assert!(lv.sum_free);

        let full = profile(&Dfa::universal(&a), 4).unwrap();
        let lv = phi_level_set(&full);
        assert_eq!(lv.violation, Some((1, 1, 2)));
    }

    #[test]
    fn simple_bound_examples() {
        let odd = profile(&Dfa::length_parity(&Alphabet::binary(), true), 64).unwrap();
        let b = simple_bound_estimate(&odd);
        assert_eq!(b.limit, Surd::simple_bound());
        assert!(b.consistent);
        assert!(b.level_set_sum_free);
        // the raw prefix maximum is d(1) = 1; its limit is 1/2
        assert_eq!(b.raw, rat(1, 1));
        assert!(Surd::from_rational(rat(1, 2)) < b.limit);
        let explicit = LayeredSet::full_layers(&Alphabet::binary(), 4, [3, 4]).unwrap();
        let b = simple_bound_estimate(&profile(&explicit, 4).unwrap());
        assert!(b.consistent);
    }
}
