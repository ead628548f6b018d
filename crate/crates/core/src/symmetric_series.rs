//! Elementary symmetric polynomials of odd-prime reciprocals.
//!
//! `f(t; z)` is the degree-`t` elementary symmetric polynomial in the
//! variables `{1/p : p odd prime, p <= z}`, with `f(0; z) = 1`. Three
//! independent routes compute it:
//!
//! * [`esp_direct`]: one pass over the primes, updating degrees high to low.
//! * [`esp_via_newton`]: Newton's identities from the power sums `S_k(z)`.
//! * [`esp_recursive`]: the recursion `f(t; z) = sum_p (1/p) f(t-1; p-1)`.
//!
//! All three are generic over [`Scalar`] and agree exactly under the rational
//! backend. For rationals the direct route works on integer numerators over
//! the common denominator `Π p` and reduces once per degree at the end.

use std::collections::HashMap;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::prime_engine::{odd_primes_up_to, power_sum_over, PowerSum};
use crate::scalar::{Backend, Scalar};

/// Meissel–Mertens constant, `lim (sum_{p<=z} 1/p - ln ln z)`.
pub const MEISSEL_MERTENS: f64 = 0.261_497_212_847_642_78;

/// Odd-prime variant: dropping `p = 2` removes exactly `1/2` from the sum.
pub const MEISSEL_MERTENS_ODD: f64 = MEISSEL_MERTENS - 0.5;

#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricSeries<S> {
    z: u64,
    values: Vec<S>,
}

impl<S: Scalar> SymmetricSeries<S> {
    pub fn z(&self) -> u64 {
        self.z
    }

    pub fn t_max(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    /// `f(t; z)`; zero past `t_max` is not implied, so this is `None` there.
    pub fn get(&self, t: usize) -> Option<&S> {
        self.values.get(t)
    }

    pub fn backend(&self) -> Backend {
        S::BACKEND
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.values.iter().map(Scalar::to_f64).collect()
    }

    pub fn into_values(self) -> Vec<S> {
        self.values
    }
}

/// Warning text when an exact evaluation is likely to be very slow.
pub fn resource_warning(z: u64, t_max: usize, backend: Backend) -> Option<String> {
    (backend == Backend::ExactRational && z > 10_000 && t_max > 12).then(|| {
        format!(
            "exact rational evaluation with z = {z}, t_max = {t_max} grows very large denominators"
        )
    })
}

pub fn esp_direct<S: Scalar>(z: u64, t_max: usize) -> Result<SymmetricSeries<S>> {
    let primes = odd_primes_up_to(z)?;
    Ok(esp_direct_over(z, &primes, t_max))
}

/// Single-pass dynamic program over `odd_primes`, which must be the odd primes `<= z`.
pub fn esp_direct_over<S: Scalar>(z: u64, odd_primes: &[u64], t_max: usize) -> SymmetricSeries<S> {
    if let Some(values) = S::esp_of_reciprocals(odd_primes, t_max) {
        return SymmetricSeries { z, values };
    }
    let mut acc: Vec<S::Acc> = (0..=t_max).map(|_| S::acc(S::zero())).collect();
    let mut values = vec![S::zero(); t_max + 1];
    acc[0] = S::acc(S::one());
    values[0] = S::one();

    for (seen, &p) in odd_primes.iter().enumerate() {
        let r = S::recip_pow(p, 1);
        let top = t_max.min(seen + 1);
        for t in (1..=top).rev() {
            let term = r.mul(&values[t - 1]);
            S::acc_add(&mut acc[t], &term);
            values[t] = S::acc_value(&acc[t]);
        }
    }
    SymmetricSeries { z, values }
}

/// Newton's identities: `t e_t = sum_{i=1..t} (-1)^(i-1) e_(t-i) S_i`.
///
/// `power_sums[i]` must be `S_(i+1)` and all must share one `z`.
pub fn esp_via_newton<S: Scalar>(
    power_sums: &[PowerSum<S>],
    t_max: usize,
) -> Result<SymmetricSeries<S>> {
    if power_sums.len() < t_max {
        return Err(Error::Contract(format!(
            "need power sums S_1..S_{t_max}, got {}",
            power_sums.len()
        )));
    }
    let z = power_sums.first().map_or(0, |s| s.z);
    for (i, s) in power_sums.iter().take(t_max).enumerate() {
        if s.k as usize != i + 1 {
            return Err(Error::Contract(format!(
                "power sum at position {i} has k = {}, expected {}",
                s.k,
                i + 1
            )));
        }
        if s.z != z {
            return Err(Error::Contract(format!(
                "power sums disagree on z: {} vs {}",
                s.z, z
            )));
        }
    }

    let mut values: Vec<S> = Vec::with_capacity(t_max + 1);
    values.push(S::one());
    for t in 1..=t_max {
        let mut acc = S::acc(S::zero());
        for i in 1..=t {
            let term = values[t - i].mul(&power_sums[i - 1].value);
            let term = if i % 2 == 1 { term } else { S::zero().sub(&term) };
            S::acc_add(&mut acc, &term);
        }
        let e = S::acc_value(&acc)
            .checked_div(&S::from_i64(t as i64))
            .expect("t >= 1");
        values.push(e);
    }
    Ok(SymmetricSeries { z, values })
}

/// Power sums `S_1(z) .. S_t_max(z)` followed by Newton's identities.
pub fn esp_newton<S: Scalar>(z: u64, t_max: usize) -> Result<SymmetricSeries<S>> {
    let primes = odd_primes_up_to(z)?;
    esp_newton_over(z, &primes, t_max)
}

pub fn esp_newton_over<S: Scalar>(
    z: u64,
    odd_primes: &[u64],
    t_max: usize,
) -> Result<SymmetricSeries<S>> {
    let sums = (1..=t_max as u32)
        .map(|k| power_sum_over(k, z, odd_primes))
        .collect::<Result<Vec<_>>>()?;
    let mut series = esp_via_newton(&sums, t_max)?;
    series.z = z;
    Ok(series)
}

/// `f(t; z)` via `f(t; z) = sum_{odd p <= z} (1/p) f(t-1; p-1)`.
pub fn esp_recursive<S: Scalar>(t: usize, z: u64) -> Result<S> {
    let primes = odd_primes_up_to(z)?;
    Ok(esp_recursive_over(t, &primes))
}

pub fn esp_recursive_over<S: Scalar>(t: usize, odd_primes: &[u64]) -> S {
    let recips: Vec<S> = odd_primes.iter().map(|&p| S::recip_pow(p, 1)).collect();
    let mut memo = HashMap::new();
    recurse(t, recips.len(), &recips, &mut memo)
}

// f(t; p_n - 1) where p_n is the n-th odd prime (0-based), i.e. over the
// first n reciprocals.
fn recurse<S: Scalar>(
    t: usize,
    n: usize,
    recips: &[S],
    memo: &mut HashMap<(usize, usize), S>,
) -> S {
    if t == 0 {
        return S::one();
    }
    if t > n {
        return S::zero();
    }
    if let Some(v) = memo.get(&(t, n)) {
        return v.clone();
    }
    let mut acc = S::acc(S::zero());
    for i in (t - 1)..n {
        let inner = recurse(t - 1, i, recips, memo);
        S::acc_add(&mut acc, &recips[i].mul(&inner));
    }
    let v = S::acc_value(&acc);
    memo.insert((t, n), v.clone());
    v
}

/// Quantities entering the leading-order asymptotic of `f(t; z)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticContext {
    /// `ln ln z`
    pub log_log_z: f64,
    pub mertens: f64,
    pub mertens_odd: f64,
}

impl AsymptoticContext {
    pub fn new(z: f64) -> Result<Self> {
        if z.is_nan() || z <= std::f64::consts::E {
            return Err(Error::Domain(format!("ln ln z needs z > e, got {z}")));
        }
        Ok(Self {
            log_log_z: z.ln().ln(),
            mertens: MEISSEL_MERTENS,
            mertens_odd: MEISSEL_MERTENS_ODD,
        })
    }

    /// `(L(z) + M')^t / t!`
    pub fn leading_order_f(&self, t: u32) -> f64 {
        let base = self.log_log_z + self.mertens_odd;
        (1..=t).fold(1.0, |acc, k| acc * base / f64::from(k))
    }
}

pub fn leading_order_f(t: u32, z: f64) -> Result<f64> {
    Ok(AsymptoticContext::new(z)?.leading_order_f(t))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub name: String,
    pub max_residual: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub z: u64,
    pub t_max: usize,
    pub backend: Backend,
    pub tolerance: f64,
    pub odd_prime_count: usize,
    pub values: Vec<f64>,
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn max_abs_diff<S: Scalar>(a: &[S], b: &[S]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.sub(y).abs().to_f64())
        .fold(0.0, f64::max)
}

/// Runs every identity at one `(z, t_max)`. Failures are report contents.
pub fn check_identities<S: Scalar>(
    z: u64,
    t_max: usize,
    tolerance: f64,
) -> Result<IdentityReport> {
    let primes = odd_primes_up_to(z)?;
    let n = primes.len();
    let degree = t_max.max(2);

    let direct = esp_direct_over::<S>(z, &primes, degree);
    let sums = (1..=degree as u32)
        .map(|k| power_sum_over::<S>(k, z, &primes))
        .collect::<Result<Vec<_>>>()?;
    let newton = esp_via_newton(&sums, degree)?;
    let recursive: Vec<S> = (0..=degree)
        .map(|t| esp_recursive_over(t, &primes))
        .collect();

    let mut checks = Vec::new();
    let mut push = |name: &str, residual: f64| {
        checks.push(IdentityCheck {
            name: name.to_string(),
            max_residual: residual,
            passed: residual <= tolerance,
        })
    };

    // 2 f(2) = S_1^2 - S_2
    let s1 = &sums[0].value;
    let lhs = direct.values[2].mul_i64(2);
    let rhs = s1.mul(s1).sub(&sums[1].value);
    push("degree2_power_sums", lhs.sub(&rhs).abs().to_f64());

    let head = &direct.values[..=t_max];
    push("direct_vs_newton", max_abs_diff(head, &newton.values[..=t_max]));
    push("direct_vs_recursive", max_abs_diff(head, &recursive[..=t_max]));

    let tail = head
        .iter()
        .skip(n + 1)
        .map(|v| v.abs().to_f64())
        .fold(0.0, f64::max);
    let head_nonzero = head.iter().take(n + 1).all(|v| !v.is_zero());
    push(
        "zero_tail",
        if head_nonzero { tail } else { f64::INFINITY },
    );

    Ok(IdentityReport {
        z,
        t_max,
        backend: S::BACKEND,
        tolerance,
        odd_prime_count: n,
        values: direct.to_f64()[..=t_max].to_vec(),
        checks,
    })
}

pub fn check_identities_with(
    z: u64,
    t_max: usize,
    tolerance: f64,
    backend: Backend,
) -> Result<IdentityReport> {
    match backend {
        Backend::ExactRational => check_identities::<BigRational>(z, t_max, tolerance),
        Backend::CompensatedFloat => check_identities::<f64>(z, t_max, tolerance),
    }
}

/// `f(0..=t_max; z)` as floats, computed with the chosen backend.
pub fn esp_values(z: u64, t_max: usize, backend: Backend) -> Result<Vec<f64>> {
    Ok(match backend {
        Backend::ExactRational => esp_direct::<BigRational>(z, t_max)?.to_f64(),
        Backend::CompensatedFloat => esp_direct::<f64>(z, t_max)?.to_f64(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn empty_variable_set() {
        let s = esp_direct::<BigRational>(2, 4).unwrap();
        assert_eq!(s.values(), &[q(1, 1), q(0, 1), q(0, 1), q(0, 1), q(0, 1)]);
        assert_eq!(esp_recursive::<BigRational>(0, 2).unwrap(), q(1, 1));
    }

    #[test]
    fn hand_expansion_to_ten() {
        let s = esp_direct::<BigRational>(10, 3).unwrap();
        assert_eq!(s.values(), &[q(1, 1), q(71, 105), q(1, 7), q(1, 105)]);
        assert_eq!(s.backend(), Backend::ExactRational);
        assert_eq!(esp_recursive::<BigRational>(2, 10).unwrap(), q(1, 7));
    }

    #[test]
    fn newton_degree_two_by_hand() {
        let s1 = PowerSum { k: 1, z: 10, value: q(71, 105) };
        let s2 = PowerSum { k: 2, z: 10, value: q(1, 9) + q(1, 25) + q(1, 49) };
        let s = esp_via_newton(&[s1, s2], 2).unwrap();
        assert_eq!(s.values()[2], q(1, 7));
        let empty: [PowerSum<BigRational>; 0] = [];
        assert_eq!(esp_via_newton(&empty, 0).unwrap().values(), &[q(1, 1)]);
    }

    #[test]
    fn newton_rejects_mismatched_inputs() {
        let a = PowerSum { k: 1, z: 10, value: 0.5 };
        let b = PowerSum { k: 2, z: 11, value: 0.1 };
        assert!(matches!(
            esp_via_newton(&[a.clone(), b], 2),
            Err(Error::Contract(_))
        ));
        assert!(matches!(esp_via_newton(std::slice::from_ref(&a), 2), Err(Error::Contract(_))));
        let wrong_k = PowerSum { k: 3, z: 10, value: 0.1 };
        assert!(matches!(esp_via_newton(&[a, wrong_k], 2), Err(Error::Contract(_))));
    }

    #[test]
    fn leading_order() {
        assert_eq!(leading_order_f(0, 10.0).unwrap(), 1.0);
        let f1 = leading_order_f(1, 1e6).unwrap();
        assert!((f1 - 2.387).abs() < 1e-3, "{f1}");
        let f2 = leading_order_f(2, 1e6).unwrap();
        assert!((f2 - f1 * f1 / 2.0).abs() < 1e-12);
        assert!(matches!(leading_order_f(1, std::f64::consts::E), Err(Error::Domain(_))));
        assert!(leading_order_f(1, 1.0).is_err());
    }

    #[test]
    fn odd_mertens_is_offset_by_half() {
        let ctx = AsymptoticContext::new(100.0).unwrap();
        assert_eq!(ctx.mertens_odd, ctx.mertens - 0.5);
        assert!((ctx.mertens_odd + 0.238_502_787).abs() < 1e-9);
    }

    #[test]
    fn identity_report_exact() {
        let r = check_identities::<BigRational>(10, 3, 0.0).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(r.checks.iter().all(|c| c.max_residual == 0.0));
        let r = check_identities::<BigRational>(2, 4, 0.0).unwrap();
        assert!(r.passed());
        assert_eq!(r.values, vec![1.0, 0.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn identity_report_float() {
        let r = check_identities::<f64>(100, 6, 1e-12).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn identity_report_flags_failures() {
        // A negative tolerance cannot be met even by exact zeros.
        let r = check_identities::<BigRational>(10, 3, -1.0).unwrap();
        assert!(!r.passed());
    }

    #[test]
    fn warning_only_for_large_exact_runs() {
        assert!(resource_warning(20_000, 13, Backend::ExactRational).is_some());
        assert!(resource_warning(20_000, 13, Backend::CompensatedFloat).is_none());
        assert!(resource_warning(10_000, 13, Backend::ExactRational).is_none());
    }
}
