mod common;

use num_rational::BigRational;
use proptest::prelude::*;
use twinsieve::prime_engine::odd_primes_up_to;
use twinsieve::symmetric_series::{
    check_identities, esp_direct, esp_newton, esp_recursive, leading_order_f, MEISSEL_MERTENS,
};
use twinsieve::Scalar;

#[test]
fn values_to_31_match_subset_enumeration() {
    let s = esp_direct::<f64>(31, 4).unwrap();
    // enumeration over the 10 odd primes <= 31
    let want = [1.0, 1.065_696_836_388_161, 0.469_829_278_443_237_7, 0.113_809_835_552_379_8, 0.016_903_222_852_130_95];
    for (t, (&got, &w)) in s.values().iter().zip(&want).enumerate() {
        assert!((got - w).abs() < 1e-15, "t={t}: {got} vs {w}");
        let exact = common::esp_by_subsets(31, t);
        assert_eq!(esp_direct::<BigRational>(31, 4).unwrap().values()[t], exact);
    }
    assert_eq!(
        esp_recursive::<BigRational>(3, 31).unwrap(),
        esp_direct::<BigRational>(31, 3).unwrap().values()[3]
    );
}

#[test]
fn routes_agree_exactly_up_to_one_thousand() {
    for z in [3u64, 4, 30, 97, 211, 500, 1000] {
        let direct = esp_direct::<BigRational>(z, 8).unwrap();
        let newton = esp_newton::<BigRational>(z, 8).unwrap();
        assert_eq!(direct.values(), newton.values(), "z={z}");
        for t in 0..=8 {
            assert_eq!(esp_recursive::<BigRational>(t, z).unwrap(), direct.values()[t], "z={z} t={t}");
        }
    }
}

#[test]
fn float_tracks_rational_to_ten_thousand() {
    for z in [50u64, 1_000, 10_000] {
        let exact = esp_direct::<BigRational>(z, 8).unwrap();
        let float = esp_direct::<f64>(z, 8).unwrap();
        for (e, f) in exact.values().iter().zip(float.values()) {
            let e = e.to_f64();
            assert!(((f - e) / e).abs() <= 1e-12, "z={z}: {f} vs {e}");
        }
    }
}

#[test]
fn first_order_asymptotic_improves_with_z() {
    let gap = |z: u64| {
        let f1 = esp_direct::<f64>(z, 1).unwrap().values()[1];
        (f1 - leading_order_f(1, z as f64).unwrap()).abs()
    };
    assert!(gap(1_000_000) < gap(1_000));
}

#[test]
fn mertens_literal_is_consistent_with_prime_sums() {
    // Σ_{p<=z} 1/p − ln ln z → M with error O(1/ln z); slow but visible.
    let z = 10_000_000u64;
    let s: f64 = 0.5 + esp_direct::<f64>(z, 1).unwrap().values()[1];
    let m = s - (z as f64).ln().ln();
    assert!((m - MEISSEL_MERTENS).abs() < 1e-3, "{m}");
}

#[test]
fn float_identity_report_at_hundred() {
    let r = check_identities::<f64>(100, 6, 1e-12).unwrap();
    assert!(r.passed());
    for c in &r.checks {
        assert!(c.max_residual <= 1e-12, "{c:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn zero_tail_iff_past_prime_count(z in 0u64..120, t_max in 0usize..40) {
        let n = odd_primes_up_to(z).unwrap().len();
        let s = esp_direct::<BigRational>(z, t_max).unwrap();
        prop_assert_eq!(s.values()[0].to_f64(), 1.0);
        for (t, v) in s.values().iter().enumerate() {
            prop_assert_eq!(v.is_zero(), t > n);
            prop_assert!(v.to_f64() >= 0.0);
        }
    }

    #[test]
    fn three_routes_agree(z in 0u64..400, t in 0usize..8) {
        let direct = esp_direct::<BigRational>(z, t).unwrap();
        let newton = esp_newton::<BigRational>(z, t).unwrap();
        prop_assert_eq!(direct.values(), newton.values());
        prop_assert_eq!(&esp_recursive::<BigRational>(t, z).unwrap(), &direct.values()[t]);
    }
}
