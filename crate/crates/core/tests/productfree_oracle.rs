mod common;

use common::*;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use prodfree::constructions::{greedy_random_productfree, Schedule};
use prodfree::density::{profile, refined_density, upper_asymptotic, upper_banach, WindowSpec};
use prodfree::productfree::{check_explicit, check_regular, pairwise_inequality, Verdict};
use prodfree::sets::{DEFAULT_BIT_BUDGET, DEFAULT_STATE_CAP};
use prodfree::{Alphabet, WordSet};

#[test]
fn explicit_check_matches_double_loop() {
    let a = Alphabet::binary();
    let mut seen = [0usize; 2];
    for seed in 0..100 {
        // sparse sets so that both verdicts occur
        let p = [0.02, 0.05, 0.1, 0.3][seed as usize % 4];
        let strings = random_subset("ab", 8, p, seed);
        let set = from_strings(&a, 8, &strings);
        let verdict = check_explicit(&set);
        let naive = naive_product_free(&strings);
        assert_eq!(verdict.is_product_free(), naive, "seed {seed}");
        seen[naive as usize] += 1;
        if let Verdict::Witness(w) = verdict {
            assert!(w.is_factorization());
            for x in [&w.x, &w.y, &w.z] {
                assert!(strings.contains(&x.to_string()));
            }
        }
    }
    assert!(seen[0] > 0 && seen[1] > 0, "{seen:?}");
}

#[test]
fn regular_verdicts_agree_with_truncations() {
    let a = Alphabet::binary();
    for seed in 0..40 {
        let d = random_regular(&a, seed);
        let verdict = check_regular(&d, DEFAULT_STATE_CAP).unwrap();
        if let Some(w) = verdict.witness() {
            assert!(w.is_factorization());
            assert!(d.accepts(&w.x) && d.accepts(&w.y) && d.accepts(&w.z));
        }
        // the shortest witness shows up in exactly the truncations that reach it
        let first_bad = verdict.witness().map_or(usize::MAX, |w| w.z.len());
        for n in 1..=12 {
            let t = d.truncate(n, DEFAULT_BIT_BUDGET).unwrap();
            assert_eq!(check_explicit(&t).is_product_free(), n < first_bad, "seed {seed} n {n}");
        }
    }
}

#[test]
fn product_free_sets_satisfy_pairwise_inequality() {
    let a = Alphabet::binary();
    for seed in 0..30 {
        let s = greedy_random_productfree(&a, 10, seed, &Schedule::Uniform).unwrap();
        let prof = profile(&s, 10).unwrap();
        assert!(pairwise_inequality(&prof).iter().all(|e| !e.violated), "seed {seed}");
    }
    for seed in 0..40 {
        let d = random_regular(&a, seed);
        if check_regular(&d, DEFAULT_STATE_CAP).unwrap().is_product_free() {
            let prof = profile(&d, 40).unwrap();
            assert!(pairwise_inequality(&prof).iter().all(|e| !e.violated));
        }
    }
}

#[test]
fn banach_estimate_dominates_asymptotic_estimate() {
    let a = Alphabet::binary();
    for seed in 0..30 {
        let d = random_regular(&a, seed);
        let prof = profile(&d, 48).unwrap();
        let asym = upper_asymptotic(&prof);
        let banach = upper_banach(&prof, 1).unwrap();
        assert!(banach.estimate >= asym.estimate);
        if banach.exact && asym.exact {
            assert_eq!(banach.value, asym.value);
        }
        // window means never exceed the largest layer density
        let top = prof.densities().iter().max().unwrap().clone();
        assert!(banach.estimate <= top);
    }
}

#[test]
fn regular_profiles_are_detected_periodic() {
    let a = Alphabet::binary();
    for seed in 0..30 {
        let d = random_regular(&a, seed);
        let prof = profile(&d, 64).unwrap();
        let e = upper_banach(&prof, 8).unwrap();
        assert!(e.exact, "seed {seed}");
        let p = e.period.period;
        let tail = WindowSpec::new(64 - p + 1, 64).unwrap();
        assert_eq!(e.value, prof.window_mean(&tail));
    }
}

proptest! {
    #[test]
    fn refined_density_never_exceeds_layer_density(seed in 0u64..500, n in 2usize..9, mask in 1u32..128) {
        let a = Alphabet::binary();
        let s = from_strings(&a, 8, &random_subset("ab", 8, 0.5, seed));
        let lengths: Vec<usize> = (1..n).filter(|l| mask >> (l - 1) & 1 == 1).collect();
        let r = refined_density(&s, n, &lengths).unwrap();
        let d = refined_density(&s, n, &[]).unwrap();
        prop_assert!(r <= d);
        // no member of S(ℓ) at any listed length: nothing is removed
        let bare = s.difference(&prodfree::LayeredSet::full_layers(&a, 8, lengths.clone()).unwrap()).unwrap();
        prop_assert_eq!(refined_density(&bare, n, &lengths).unwrap(), refined_density(&bare, n, &[]).unwrap());
    }

    #[test]
    fn density_sums_do_not_depend_on_order(seed in 0u64..500) {
        let a = Alphabet::binary();
        let d = random_regular(&a, seed);
        let prof = profile(&d, 24).unwrap();
        let forward = prof.densities().iter().fold(BigRational::zero(), |acc, x| acc + x);
        let backward = prof.densities().iter().rev().fold(BigRational::zero(), |acc, x| acc + x);
        prop_assert_eq!(&forward, &backward);
        prop_assert_eq!(prof.window_sum(&WindowSpec::new(1, 24).unwrap()), forward);
        prop_assert!(prof.densities().iter().all(|x| *x <= BigRational::one()));
    }
}

#[test]
fn refined_counts_agree_between_representations() {
    let a = Alphabet::binary();
    for seed in 0..10 {
        let d = random_regular(&a, seed);
        let t = d.truncate(10, DEFAULT_BIT_BUDGET).unwrap();
        for (n, ls) in [(5, vec![1]), (7, vec![2, 3]), (10, vec![1, 4, 9])] {
            assert_eq!(d.refined_count(n, &ls).unwrap(), t.refined_count(n, &ls).unwrap());
        }
    }
}
