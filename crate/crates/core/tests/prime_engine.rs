mod common;

use num_rational::BigRational;
use proptest::prelude::*;
use twinsieve::prime_engine::{
    count_twin_primes, odd_primes_up_to, power_sum, sieve_primes, sieve_primes_with,
    sieve_unsegmented, SieveConfig,
};

#[test]
fn pi_of_one_million() {
    assert_eq!(sieve_primes(1_000_000).unwrap().len(), 78_498);
}

#[test]
fn table_membership_matches_trial_division() {
    let t = sieve_primes(1_000_000).unwrap();
    for n in (0..1_000_000).step_by(7).chain(999_900..=1_000_003) {
        assert_eq!(t.contains(n), n <= 1_000_000 && common::is_prime_trial(n), "{n}");
    }
}

#[test]
fn segmented_equals_unsegmented_to_ten_million() {
    let whole = sieve_unsegmented(10_000_000).unwrap();
    for bytes in [8, 4096, 32 * 1024, 1 << 20] {
        let cfg = SieveConfig { segment_bytes: bytes, ..SieveConfig::default() };
        assert_eq!(sieve_primes_with(10_000_000, &cfg).unwrap(), whole, "segment {bytes}");
    }
}

#[test]
fn twin_counts_at_powers_of_ten() {
    assert_eq!(count_twin_primes(10_000).unwrap(), 205);
    assert_eq!(count_twin_primes(1_000_000).unwrap(), 8169);
}

#[test]
fn odd_primes_listing() {
    assert!(odd_primes_up_to(2).unwrap().is_empty());
    assert_eq!(odd_primes_up_to(10).unwrap(), vec![3, 5, 7]);
    assert_eq!(odd_primes_up_to(31).unwrap(), common::odd_primes_trial(31));
}

#[test]
fn odd_prime_zeta_two_converges() {
    let target = common::PRIME_ZETA_2 - 0.25;
    let mut last_gap = f64::INFINITY;
    for z in [1_000u64, 100_000, 10_000_000] {
        let s = power_sum::<f64>(2, z).unwrap().value;
        let gap = target - s;
        // tail Σ_{p>z} p^-2 is below 1/(z ln z)
        assert!(gap > 0.0 && gap < 1.0 / (z as f64 * (z as f64).ln()), "z={z} gap={gap}");
        assert!(gap < last_gap);
        last_gap = gap;
    }
}

#[test]
fn float_power_sums_track_exact_values() {
    for z in [10u64, 97, 1_000, 10_000] {
        for k in 1..=6 {
            let exact = power_sum::<BigRational>(k, z).unwrap().value;
            let exact = num_traits::ToPrimitive::to_f64(&exact).unwrap();
            let float = power_sum::<f64>(k, z).unwrap().value;
            assert!(((float - exact) / exact).abs() <= 1e-12, "k={k} z={z}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn twin_count_is_monotone(a in 2u64..200_000, b in 2u64..200_000) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        prop_assert!(count_twin_primes(lo).unwrap() <= count_twin_primes(hi).unwrap());
    }

    #[test]
    fn segment_size_does_not_matter(limit in 0u64..300_000, words in 1usize..512) {
        let cfg = SieveConfig { segment_bytes: words * 8, ..SieveConfig::default() };
        prop_assert_eq!(sieve_primes_with(limit, &cfg).unwrap(), sieve_unsegmented(limit).unwrap());
    }

    #[test]
    fn table_is_strictly_increasing(limit in 0u64..100_000) {
        let v = sieve_primes(limit).unwrap().to_vec();
        prop_assert!(v.windows(2).all(|w| w[0] < w[1]));
        if limit >= 2 {
            prop_assert_eq!(v[0], 2);
        }
    }

    #[test]
    fn power_sum_monotonicity(z in 3u64..1_500, k in 1u32..6) {
        let here = power_sum::<BigRational>(k, z).unwrap().value;
        let next_k = power_sum::<BigRational>(k + 1, z).unwrap().value;
        prop_assert!(next_k < here);
        let primes = odd_primes_up_to(2 * z).unwrap();
        if let Some(&p) = primes.iter().find(|&&p| p > z) {
            prop_assert!(power_sum::<BigRational>(k, p).unwrap().value > here);
        }
    }
}
