//! Prime generation, exact twin-prime counts and odd-prime power sums.
//!
//! Primes come from an odd-only segmented sieve of Eratosthenes. Bit `i` of a
//! [`PrimeTable`] stands for the odd number `2i + 1`; the prime 2 is tracked
//! separately.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

const WORD_BITS: u64 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SieveConfig {
    /// Segment length in bytes of bitmap. Rounded to whole 64-bit words.
    pub segment_bytes: usize,
    /// Largest limit the sieve will accept.
    pub cap: u64,
}

impl SieveConfig {
    pub const DEFAULT_SEGMENT_BYTES: usize = 32 * 1024;
    pub const DEFAULT_CAP: u64 = 10_000_000_000;

    fn segment_words(&self) -> usize {
        (self.segment_bytes / 8).max(1)
    }

    fn check(&self, limit: u64) -> Result<()> {
        if limit > self.cap {
            Err(Error::ResourceLimit {
                limit,
                cap: self.cap,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for SieveConfig {
    fn default() -> Self {
        Self {
            segment_bytes: Self::DEFAULT_SEGMENT_BYTES,
            cap: Self::DEFAULT_CAP,
        }
    }
}

/// Immutable set of all primes up to an inclusive bound.
#[derive(Clone, PartialEq, Eq)]
pub struct PrimeTable {
    limit: u64,
    // bit i <=> 2i+1 is prime, for 2i+1 <= limit
    odd_bits: Vec<u64>,
    len: usize,
}

impl std::fmt::Debug for PrimeTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PrimeTable")
            .field("limit", &self.limit)
            .field("len", &self.len)
            .finish()
    }
}

impl PrimeTable {
    fn from_bits(limit: u64, odd_bits: Vec<u64>) -> Self {
        let odd = odd_bits.iter().map(|w| w.count_ones() as usize).sum::<usize>();
        let len = odd + usize::from(limit >= 2);
        Self {
            limit,
            odd_bits,
            len,
        }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn contains(&self, n: u64) -> bool {
        if n > self.limit {
            return false;
        }
        if n == 2 {
            return true;
        }
        n % 2 == 1 && self.odd_bit(n / 2)
    }

    fn odd_bit(&self, i: u64) -> bool {
        let w = (i / WORD_BITS) as usize;
        w < self.odd_bits.len() && self.odd_bits[w] >> (i % WORD_BITS) & 1 == 1
    }

    /// Primes in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        let two = (self.limit >= 2).then_some(2);
        two.into_iter().chain(self.odd_primes())
    }

    /// Odd primes in ascending order.
    pub fn odd_primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.odd_bits.iter().enumerate().flat_map(|(wi, &word)| {
            let base = wi as u64 * WORD_BITS;
            BitIter(word).map(move |b| 2 * (base + b) + 1)
        })
    }

    pub fn to_vec(&self) -> Vec<u64> {
        self.iter().collect()
    }

    /// Number of primes `p <= n`.
    pub fn count_up_to(&self, n: u64) -> usize {
        let n = n.min(self.limit);
        if n < 2 {
            return 0;
        }
        // odd indices 1..=(n-1)/2
        let last = (n - 1) / 2;
        let full = (last / WORD_BITS) as usize;
        let mut count: usize = self.odd_bits[..full]
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum();
        let rem = last % WORD_BITS;
        let mask = if rem == 63 { u64::MAX } else { (1u64 << (rem + 1)) - 1 };
        count += (self.odd_bits[full] & mask).count_ones() as usize;
        count + 1
    }

    /// Number of twin pairs `(p, p + 2)` with `p <= x`. Requires `x + 2 <= limit`.
    fn twin_count(&self, x: u64) -> u64 {
        debug_assert!(x + 2 <= self.limit);
        if x < 3 {
            return 0;
        }
        // p = 2i+1 and p+2 = 2(i+1)+1, so a twin is bit i and bit i+1 both set.
        let last = (x - 1) / 2;
        let words = &self.odd_bits;
        let mut total = 0u64;
        let full = (last / WORD_BITS) as usize;
        for (wi, &w) in words.iter().enumerate().take(full + 1) {
            let next = words.get(wi + 1).map_or(0, |n| n & 1);
            let mut pairs = w & ((w >> 1) | (next << 63));
            if wi == full {
                let rem = last % WORD_BITS;
                if rem < 63 {
                    pairs &= (1u64 << (rem + 1)) - 1;
                }
            }
            total += u64::from(pairs.count_ones());
        }
        total
    }
}

struct BitIter(u64);

impl Iterator for BitIter {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.0 == 0 {
            return None;
        }
        let b = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(u64::from(b))
    }
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

fn word_count(limit: u64) -> usize {
    // highest odd index is (limit - 1) / 2
    if limit < 1 {
        0
    } else {
        ((limit - 1) / 2 / WORD_BITS + 1) as usize
    }
}

fn mask_tail(bits: &mut [u64], limit: u64) {
    if bits.is_empty() {
        return;
    }
    let last = (limit - 1) / 2;
    let rem = last % WORD_BITS;
    if rem < 63 {
        let w = bits.len() - 1;
        bits[w] &= (1u64 << (rem + 1)) - 1;
    }
}

/// Odd-only sieve over the whole range in one pass.
pub fn sieve_unsegmented(limit: u64) -> Result<PrimeTable> {
    SieveConfig::default().check(limit)?;
    let mut bits = vec![u64::MAX; word_count(limit)];
    if bits.is_empty() {
        return Ok(PrimeTable::from_bits(limit, bits));
    }
    bits[0] &= !1; // 1 is not prime
    let total = (limit - 1) / 2 + 1;
    let mut p = 3u64;
    while p * p <= limit {
        if bits[(p / 2 / WORD_BITS) as usize] >> (p / 2 % WORD_BITS) & 1 == 1 {
            let mut i = p * p / 2;
            while i < total {
                bits[(i / WORD_BITS) as usize] &= !(1u64 << (i % WORD_BITS));
                i += p;
            }
        }
        p += 2;
    }
    mask_tail(&mut bits, limit);
    Ok(PrimeTable::from_bits(limit, bits))
}

/// All primes `<= limit` with the default segment size and cap.
pub fn sieve_primes(limit: u64) -> Result<PrimeTable> {
    sieve_primes_with(limit, &SieveConfig::default())
}

pub fn sieve_primes_with(limit: u64, config: &SieveConfig) -> Result<PrimeTable> {
    config.check(limit)?;
    let mut bits = vec![u64::MAX; word_count(limit)];
    if bits.is_empty() {
        return Ok(PrimeTable::from_bits(limit, bits));
    }
    let base: Vec<u64> = sieve_unsegmented(isqrt(limit))?.odd_primes().collect();
    let seg_words = config.segment_words();

    let sieve_segment = |(seg, chunk): (usize, &mut [u64])| {
        let lo = (seg * seg_words) as u64 * WORD_BITS;
        let hi = lo + chunk.len() as u64 * WORD_BITS;
        for &p in &base {
            // first odd multiple of p that is >= max(p*p, 2*lo+1)
            let start = (p * p).max(2 * lo + 1);
            let mut m = start.div_ceil(p) * p;
            if m % 2 == 0 {
                m += p;
            }
            let mut i = m / 2;
            if i >= hi {
                continue;
            }
            while i < hi {
                let r = i - lo;
                chunk[(r / WORD_BITS) as usize] &= !(1u64 << (r % WORD_BITS));
                i += p;
            }
        }
    };

    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        bits.par_chunks_mut(seg_words)
            .enumerate()
            .for_each(sieve_segment);
    }
    #[cfg(not(feature = "parallel"))]
    bits.chunks_mut(seg_words).enumerate().for_each(sieve_segment);

    bits[0] &= !1;
    mask_tail(&mut bits, limit);
    Ok(PrimeTable::from_bits(limit, bits))
}

/// Number of primes `p <= x` for which `p + 2` is also prime.
///
/// The partner `p + 2` may exceed `x`. The stricter convention (both members
/// `<= x`) differs only when `x - 1` and `x + 1` are both prime, which cannot
/// happen at `x = 10^k` since `10^k - 1` is a multiple of 9.
pub fn count_twin_primes(x: u64) -> Result<u64> {
    count_twin_primes_with(x, &SieveConfig::default())
}

pub fn count_twin_primes_with(x: u64, config: &SieveConfig) -> Result<u64> {
    if x < 2 {
        return Err(Error::Domain(format!(
            "twin prime count needs x >= 2, got {x}"
        )));
    }
    let limit = x.checked_add(2).ok_or(Error::ResourceLimit {
        limit: u64::MAX,
        cap: config.cap,
    })?;
    let table = sieve_primes_with(limit, config)?;
    Ok(table.twin_count(x))
}

/// Odd primes `3 <= p <= z`, ascending.
pub fn odd_primes_up_to(z: u64) -> Result<Vec<u64>> {
    Ok(sieve_primes(z)?.odd_primes().collect())
}

/// `S_k(z)`, the sum of `p^-k` over odd primes `p <= z`.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSum<S> {
    pub k: u32,
    pub z: u64,
    pub value: S,
}

pub fn power_sum<S: Scalar>(k: u32, z: u64) -> Result<PowerSum<S>> {
    let primes = odd_primes_up_to(z)?;
    power_sum_over(k, z, &primes)
}

/// Power sum over a caller-supplied list of odd primes `<= z`.
pub fn power_sum_over<S: Scalar>(k: u32, z: u64, odd_primes: &[u64]) -> Result<PowerSum<S>> {
    if k == 0 {
        return Err(Error::Domain("power sum exponent must be >= 1".into()));
    }
    let terms: Vec<S> = odd_primes.iter().map(|&p| S::recip_pow(p, k)).collect();
    Ok(PowerSum {
        k,
        z,
        value: tree_sum(&terms),
    })
}

/// Pairwise summation. Keeps rational denominators balanced and float
/// rounding error logarithmic in the term count.
pub(crate) fn tree_sum<S: Scalar>(terms: &[S]) -> S {
    match terms.len() {
        0 => S::zero(),
        1 => terms[0].clone(),
        n if n <= 8 => S::sum(terms),
        n => {
            let (a, b) = terms.split_at(n / 2);
            tree_sum(a).add(&tree_sum(b))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn is_prime_trial(n: u64) -> bool {
        if n < 2 {
            return false;
        }
        let mut d = 2;
        while d * d <= n {
            if n.is_multiple_of(d) {
                return false;
            }
            d += 1;
        }
        true
    }

    #[test]
    fn tiny_limits() {
        assert!(sieve_primes(0).unwrap().is_empty());
        assert!(sieve_primes(1).unwrap().is_empty());
        assert_eq!(sieve_primes(2).unwrap().to_vec(), vec![2]);
        assert_eq!(sieve_primes(3).unwrap().to_vec(), vec![2, 3]);
        assert_eq!(sieve_primes(4).unwrap().to_vec(), vec![2, 3]);
    }

    #[test]
    fn primes_to_31() {
        let t = sieve_primes(31).unwrap();
        assert_eq!(t.to_vec(), vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31]);
        assert_eq!(t.len(), 11);
        assert_eq!(odd_primes_up_to(31).unwrap().len(), 10);
    }

    #[test]
    fn matches_trial_division_across_segments() {
        let cfg = SieveConfig {
            segment_bytes: 8,
            cap: SieveConfig::DEFAULT_CAP,
        };
        for limit in [63, 64, 65, 127, 128, 129, 1000, 5003] {
            let t = sieve_primes_with(limit, &cfg).unwrap();
            let want: Vec<u64> = (0..=limit).filter(|&n| is_prime_trial(n)).collect();
            assert_eq!(t.to_vec(), want, "limit {limit}");
            for n in 0..=limit + 3 {
                assert_eq!(t.contains(n), n <= limit && is_prime_trial(n));
            }
        }
    }

    #[test]
    fn count_up_to_matches_iteration() {
        let t = sieve_primes(2000).unwrap();
        for n in 0..=2000 {
            assert_eq!(t.count_up_to(n), t.iter().filter(|&p| p <= n).count());
        }
    }

    #[test]
    fn cap_is_enforced() {
        let cfg = SieveConfig {
            segment_bytes: 64,
            cap: 1000,
        };
        assert_eq!(
            sieve_primes_with(1001, &cfg),
            Err(Error::ResourceLimit {
                limit: 1001,
                cap: 1000
            })
        );
        assert!(matches!(
            count_twin_primes_with(999, &cfg),
            Err(Error::ResourceLimit { limit: 1001, .. })
        ));
    }

    #[test]
    fn small_twin_counts() {
        assert_eq!(count_twin_primes(2).unwrap(), 0);
        assert_eq!(count_twin_primes(3).unwrap(), 1);
        assert_eq!(count_twin_primes(20).unwrap(), 4);
        assert_eq!(count_twin_primes(100).unwrap(), 8);
        assert!(count_twin_primes(1).is_err());
    }

    #[test]
    fn power_sum_small() {
        let s: PowerSum<BigRational> = power_sum(1, 2).unwrap();
        assert_eq!(s.value, BigRational::from_integer(0.into()));
        let s: PowerSum<BigRational> = power_sum(1, 10).unwrap();
        assert_eq!(s.value, BigRational::new(71.into(), 105.into()));
        assert!(power_sum::<f64>(0, 10).is_err());
    }
}
