//! Arithmetic backends.
//!
//! Every series routine is generic over [`Scalar`], so the same code path
//! runs in exact rational arithmetic or in compensated `f64` arithmetic.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Backend {
    ExactRational,
    CompensatedFloat,
}

impl Backend {
    /// Largest sieving limit for which the automatic choice stays exact.
    pub const EXACT_AUTO_LIMIT: u64 = 1_000;

    pub fn auto_for(z: u64) -> Self {
        if z <= Self::EXACT_AUTO_LIMIT {
            Backend::ExactRational
        } else {
            Backend::CompensatedFloat
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Backend::ExactRational => "exact-rational",
            Backend::CompensatedFloat => "compensated-float",
        }
    }
}

impl std::fmt::Display for Backend {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Backend {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact-rational" | "exact" | "rational" => Ok(Backend::ExactRational),
            "compensated-float" | "float" => Ok(Backend::CompensatedFloat),
            other => Err(format!("unknown backend `{other}`")),
        }
    }
}

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    pub fn new(value: f64) -> Self {
        Self {
            sum: value,
            comp: 0.0,
        }
    }

    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.comp += (self.sum - t) + value;
        } else {
            self.comp += (value - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl std::iter::FromIterator<f64> for NeumaierSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = NeumaierSum::default();
        for v in iter {
            acc.add(v);
        }
        acc
    }
}

/// A field element the series routines can compute with.
pub trait Scalar: Clone + Debug + PartialEq + Send + Sync + 'static {
    /// Running-sum type; compensated for floats, the value itself for exact types.
    type Acc: Clone + Debug;

    const BACKEND: Backend;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    /// `1 / n^k`.
    fn recip_pow(n: u64, k: u32) -> Self;

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    /// `None` when `rhs` is zero.
    fn checked_div(&self, rhs: &Self) -> Option<Self>;

    fn is_zero(&self) -> bool;
    fn abs(&self) -> Self;
    fn to_f64(&self) -> f64;

    fn acc(init: Self) -> Self::Acc;
    fn acc_add(acc: &mut Self::Acc, value: &Self);
    fn acc_value(acc: &Self::Acc) -> Self;

    /// Elementary symmetric polynomials of `{1/p}` over `primes`, degrees
    /// `0..=t_max`, for types with a faster route than the generic update.
    fn esp_of_reciprocals(_primes: &[u64], _t_max: usize) -> Option<Vec<Self>> {
        None
    }

    fn mul_i64(&self, n: i64) -> Self {
        self.mul(&Self::from_i64(n))
    }

    fn sum<'a, I: IntoIterator<Item = &'a Self>>(iter: I) -> Self {
        let mut acc = Self::acc(Self::zero());
        for v in iter {
            Self::acc_add(&mut acc, v);
        }
        Self::acc_value(&acc)
    }
}

impl Scalar for BigRational {
    type Acc = BigRational;

    const BACKEND: Backend = Backend::ExactRational;

    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn recip_pow(n: u64, k: u32) -> Self {
        BigRational::new(BigInt::one(), num_traits::pow(BigInt::from(n), k as usize))
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn checked_div(&self, rhs: &Self) -> Option<Self> {
        (!Zero::is_zero(rhs)).then(|| self / rhs)
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn abs(&self) -> Self {
        Signed::abs(self)
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn acc(init: Self) -> Self::Acc {
        init
    }

    fn acc_add(acc: &mut Self::Acc, value: &Self) {
        *acc += value;
    }

    fn acc_value(acc: &Self::Acc) -> Self {
        acc.clone()
    }

    // Over the common denominator P = Π p, f(t) = E_t / P with integer E_t
    // obeying E_t <- p E_t + E_(t-1) as each prime is added.
    fn esp_of_reciprocals(primes: &[u64], t_max: usize) -> Option<Vec<Self>> {
        let mut numer: Vec<BigInt> = vec![BigInt::zero(); t_max + 1];
        numer[0] = BigInt::one();
        for (seen, &p) in primes.iter().enumerate() {
            let top = t_max.min(seen + 1);
            for t in (1..=top).rev() {
                let carried = numer[t - 1].clone();
                numer[t] *= p;
                numer[t] += carried;
            }
            numer[0] *= p;
        }
        let denom = numer[0].clone();
        Some(
            numer
                .into_iter()
                .map(|n| BigRational::new(n, denom.clone()))
                .collect(),
        )
    }
}

impl Scalar for f64 {
    type Acc = NeumaierSum;

    const BACKEND: Backend = Backend::CompensatedFloat;

    fn zero() -> Self {
        0.0
    }

    fn one() -> Self {
        1.0
    }

    fn from_i64(n: i64) -> Self {
        n as f64
    }

    fn recip_pow(n: u64, k: u32) -> Self {
        (n as f64).powi(-(k as i32))
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn checked_div(&self, rhs: &Self) -> Option<Self> {
        (*rhs != 0.0).then(|| self / rhs)
    }

    fn is_zero(&self) -> bool {
        *self == 0.0
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn acc(init: Self) -> Self::Acc {
        NeumaierSum::new(init)
    }

    fn acc_add(acc: &mut Self::Acc, value: &Self) {
        acc.add(*value);
    }

    fn acc_value(acc: &Self::Acc) -> Self {
        acc.value()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn neumaier_recovers_lost_low_bits() {
        let acc: NeumaierSum = [1.0, 1e100, 1.0, -1e100].into_iter().collect();
        assert_eq!(acc.value(), 2.0);
        let naive: f64 = [1.0, 1e100, 1.0, -1e100].iter().sum();
        assert_eq!(naive, 0.0);
    }

    #[test]
    fn recip_pow_matches_across_backends() {
        let exact = <BigRational as Scalar>::recip_pow(7, 3);
        assert_eq!(exact, BigRational::new(1.into(), 343.into()));
        assert!((Scalar::to_f64(&exact) - <f64 as Scalar>::recip_pow(7, 3)).abs() < 1e-18);
    }

    #[test]
    fn division_by_zero_is_none() {
        assert!(<BigRational as Scalar>::one()
            .checked_div(&<BigRational as Scalar>::zero())
            .is_none());
        assert!(1.0f64.checked_div(&0.0).is_none());
    }

    #[test]
    fn backend_auto_threshold() {
        assert_eq!(Backend::auto_for(1_000), Backend::ExactRational);
        assert_eq!(Backend::auto_for(1_001), Backend::CompensatedFloat);
        assert_eq!("float".parse::<Backend>(), Ok(Backend::CompensatedFloat));
    }
}
