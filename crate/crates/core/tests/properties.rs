use std::collections::HashMap;

use abelian_normal::cases::sort_interior_runs;
use abelian_normal::counting::{count_each_exact, permutation_sum};
use abelian_normal::digits::{champernowne_digit, sort_runs};
use abelian_normal::experiments::run_relation_check;
use abelian_normal::weight::{
    binary_series_terms, binary_tail_bound, binary_word_count, pure_weight, weight_binary,
    weight_mixed,
};
use abelian_normal::word::is_binary;
use abelian_normal::{count_abelian, distinct_permutations, DigitStream, Word};
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

fn word(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0u8..10, 1..=max_len).prop_map(|d| Word::new(d).unwrap())
}

fn binary_word(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0u8..2, 1..=max_len).prop_map(|d| Word::new(d).unwrap())
}

/// Digits skewed towards 0 and 1 so that runs are long and frequent.
fn runny_digits(max_len: usize) -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(prop_oneof![3 => 0u8..2, 1 => 2u8..10], 1..=max_len)
}

fn runs_of(d: &[u8]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < d.len() {
        if is_binary(d[i]) {
            let s = i;
            while i < d.len() && is_binary(d[i]) {
                i += 1;
            }
            out.push((s, i));
        } else {
            i += 1;
        }
    }
    out
}

fn naive_count(digits: &[u8], pat: &[u8], abelian: bool) -> u64 {
    let mut key = pat.to_vec();
    key.sort_unstable();
    digits
        .windows(pat.len())
        .filter(|w| {
            if abelian {
                let mut s = w.to_vec();
                s.sort_unstable();
                s == key
            } else {
                *w == pat
            }
        })
        .count() as u64
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn sorting_permutes_each_run_and_fixes_the_rest(d in runny_digits(80)) {
        let sorted = sort_runs(&d);
        prop_assert_eq!(sorted.len(), d.len());
        for (i, (&a, &b)) in d.iter().zip(&sorted).enumerate() {
            prop_assert_eq!(is_binary(a), is_binary(b), "position {}", i);
            if !is_binary(a) {
                prop_assert_eq!(a, b);
            }
        }
        for (s, e) in runs_of(&d) {
            let mut orig = d[s..e].to_vec();
            orig.sort_unstable();
            prop_assert_eq!(&orig[..], &sorted[s..e]);
        }
        prop_assert_eq!(sort_runs(&sorted), sorted);
    }

    #[test]
    fn runs_partition_the_binary_positions(d in runny_digits(80)) {
        let s = DigitStream::literal(&Word::new(d.clone()).unwrap());
        let runs = s.binary_runs(d.len() as u64);
        let mut covered = vec![false; d.len()];
        for r in &runs {
            prop_assert_eq!(r.zeros + r.ones, r.len);
            for p in r.start..=r.end() {
                let i = (p - 1) as usize;
                prop_assert!(is_binary(d[i]));
                prop_assert!(!covered[i]);
                covered[i] = true;
            }
            if r.start > 1 {
                prop_assert!(!is_binary(d[(r.start - 2) as usize]));
            }
            if (r.end() as usize) < d.len() {
                prop_assert!(!is_binary(d[r.end() as usize]));
            }
        }
        for (i, &c) in covered.iter().enumerate() {
            prop_assert_eq!(c, is_binary(d[i]));
        }
    }

    #[test]
    fn random_access_matches_the_stream(p in 1u64..1_000_000) {
        prop_assert_eq!(DigitStream::C10.digit(p), Some(champernowne_digit(p)));
        let from_c = DigitStream::C10.digits_from(p).take(12).collect::<Vec<_>>();
        let from_d = DigitStream::D10.digits_from(p).take(12).collect::<Vec<_>>();
        let start = p.saturating_sub(40).max(1);
        let c_ctx = DigitStream::C10.window(start, p - start + 60).unwrap();
        let d_ctx = DigitStream::D10.window(start, p - start + 60).unwrap();
        let off = (p - start) as usize;
        prop_assert_eq!(&from_c[..], &c_ctx.digits()[off..off + 12]);
        prop_assert_eq!(&from_d[..], &d_ctx.digits()[off..off + 12]);
        prop_assert_eq!(DigitStream::D10.digit(p), Some(from_d[0]));
    }

    #[test]
    fn abelian_count_is_the_permutation_sum(e in word(5), n in 1u64..5_000) {
        for s in [DigitStream::C10, DigitStream::D10] {
            prop_assert_eq!(count_abelian(&s, &e, n).unwrap(), permutation_sum(&s, &e, n).unwrap());
        }
    }

    #[test]
    fn sliding_counts_match_a_rescan(e in word(4), n in 1u64..3_000) {
        for s in [DigitStream::C10, DigitStream::D10] {
            let prefix = s.prefix(n).unwrap();
            let d = prefix.digits();
            prop_assert_eq!(
                abelian_normal::count_exact(&s, &e, n).unwrap(),
                naive_count(d, e.digits(), false)
            );
            prop_assert_eq!(count_abelian(&s, &e, n).unwrap(), naive_count(d, e.digits(), true));
        }
    }

    #[test]
    fn pure_weight_is_permutation_invariant(e in word(8)) {
        let base = pure_weight(&e);
        prop_assert_eq!(base.value as usize, distinct_permutations(&e).len());
        let mut rev = e.digits().to_vec();
        rev.reverse();
        prop_assert_eq!(pure_weight(&Word::new(rev).unwrap()), base);
    }

    #[test]
    fn binary_weight_depends_only_on_counts(b in binary_word(8)) {
        let base = weight_binary(&b, 1e-12).unwrap();
        for p in distinct_permutations(&b) {
            prop_assert_eq!(&weight_binary(&p, 1e-12).unwrap(), &base);
        }
    }

    #[test]
    fn run_relations_hold_on_literal_streams(d in runny_digits(40), start in 1u64..40, len in 2usize..12) {
        let len = len.min(d.len());
        prop_assume!(len >= 1 && start as usize + len - 1 <= d.len());
        let window = &d[start as usize - 1..start as usize - 1 + len];
        prop_assume!(window.iter().any(|&x| !is_binary(x)));
        let s = DigitStream::literal(&Word::new(d.clone()).unwrap());
        let check = run_relation_check(&s, &s.sigma(), start, len).unwrap();
        prop_assert!(check.holds(), "{:?}", check);
    }

    #[test]
    fn run_relations_hold_on_c10(start in 1u64..2_000_000, len in 2usize..20) {
        let window = DigitStream::C10.window(start, len as u64).unwrap();
        prop_assume!(window.has_nonbinary());
        let check = run_relation_check(&DigitStream::C10, &DigitStream::D10, start, len).unwrap();
        prop_assert!(check.holds(), "{:?}", check);
    }
}

#[test]
fn binary_word_count_matches_enumeration() {
    for k in 0..=16u64 {
        let mut tally: HashMap<(u64, u64), u64> = HashMap::new();
        for bits in 0u64..1 << k {
            let ones = bits.count_ones() as u64;
            *tally.entry((k - ones, ones)).or_default() += 1;
        }
        for z in 0..=k {
            for o in 0..=k - z {
                let brute: u64 = tally
                    .iter()
                    .filter(|(&(bz, bo), _)| bz >= z && bo >= o)
                    .map(|(_, &c)| c)
                    .sum();
                assert_eq!(
                    binary_word_count(k, z, o),
                    brute.into(),
                    "k={k} z={z} o={o}"
                );
            }
        }
    }
}

#[test]
fn partial_sums_increase_within_the_tail_bound() {
    for (z, o) in [(1, 1), (0, 2), (2, 0), (3, 2), (0, 5)] {
        let mut sum = BigRational::zero();
        let mut prev_bound = binary_tail_bound(z + o);
        for (k, term) in binary_series_terms(z, o).take(40) {
            assert!(term >= BigRational::zero());
            assert!(term < prev_bound, "z={z} o={o} k={k}");
            sum += term;
            prev_bound = binary_tail_bound(k + 1);
        }
        assert!(sum > BigRational::zero());
    }
}

/// Every occurrence in D10 of a word framed by non-binary digits comes from
/// exactly one word in C10 with the same image, so the counts add up.
#[test]
fn framed_occurrences_correspond() {
    let n = 200_000;
    for pat in ["4102", "3019", "20112", "5100117", "2013", "71002"] {
        let pi: Word = pat.parse().unwrap();
        let tau = sort_interior_runs(&pi);
        let preimages: Vec<Word> = distinct_permutations(&pi)
            .into_iter()
            .filter(|p| sort_interior_runs(p) == tau)
            .collect();
        let in_c: u64 = count_each_exact(&DigitStream::C10, &preimages, n)
            .unwrap()
            .iter()
            .sum();
        let in_d = abelian_normal::count_exact(&DigitStream::D10, &tau, n).unwrap();
        assert_eq!(in_d, in_c, "{pat} -> {tau}");
    }
    // Distinct words can share an image, so the map is not injective.
    assert_eq!(
        sort_interior_runs(&"4102".parse().unwrap()),
        sort_interior_runs(&"4012".parse().unwrap())
    );
}

#[test]
fn mixed_estimates_settle() {
    let w: Word = "4501140".parse().unwrap();
    let correction = |n: u64| weight_mixed(&w, n).unwrap().value - pure_weight(&w).value;
    let gaps: Vec<f64> = [100_000, 1_000_000, 10_000_000]
        .iter()
        .map(|&n| (correction(n) - correction(2 * n)).abs())
        .collect();
    assert!(gaps[2] < gaps[0], "{gaps:?}");
    assert!(gaps[2] <= gaps[1], "{gaps:?}");
}
