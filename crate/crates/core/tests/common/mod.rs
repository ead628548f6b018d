//! Independent oracles. Nothing here calls into the crate under test.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub fn is_prime_trial(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// `counts[x]` = number of primes `p <= x` with `p + 2` prime, by trial division.
pub fn twin_counts_trial(max_x: u64) -> Vec<u64> {
    let prime: Vec<bool> = (0..=max_x + 2).map(is_prime_trial).collect();
    let mut counts = Vec::with_capacity(max_x as usize + 1);
    let mut c = 0;
    for x in 0..=max_x as usize {
        if prime[x] && prime[x + 2] {
            c += 1;
        }
        counts.push(c);
    }
    counts
}

pub fn odd_primes_trial(z: u64) -> Vec<u64> {
    (3..=z).filter(|&n| is_prime_trial(n)).collect()
}

/// `f(t; z)` by summing `1 / (p_1 ... p_t)` over every `t`-subset.
pub fn esp_by_subsets(z: u64, t: usize) -> BigRational {
    fn walk(primes: &[u64], t: usize, prod: BigInt, out: &mut BigRational) {
        if t == 0 {
            *out += BigRational::new(BigInt::one(), prod);
            return;
        }
        for (i, &p) in primes.iter().enumerate() {
            walk(&primes[i + 1..], t - 1, &prod * p, out);
        }
    }
    let primes = odd_primes_trial(z);
    let mut total = BigRational::zero();
    walk(&primes, t, BigInt::one(), &mut total);
    total
}

/// `2 Π (1 - 1/(p-1)^2)` over odd primes `<= cutoff`, plain product.
pub fn hl_product_trial(cutoff: u64) -> f64 {
    2.0 * odd_primes_trial(cutoff)
        .iter()
        .map(|&p| 1.0 - 1.0 / ((p - 1) as f64).powi(2))
        .product::<f64>()
}

/// Prime zeta `P(2)`, to double precision (mpmath `primezeta(2)`).
pub const PRIME_ZETA_2: f64 = 0.452_247_420_041_065_5;

/// `2C₂` to double precision.
pub const TWIN_PRIME_CONSTANT_2C2: f64 = 1.320_323_631_693_739;
