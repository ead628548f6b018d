//! Correction factors and twin-prime predictors.
//!
//! The sieve model predicts `π₂(x) ≈ D(z) · x / ln² x` with
//!
//! ```text
//! D(z) = 2 · Π_{3<=p<=z} (1 - 2/p) / (1 - 1/p)^2
//! ```
//!
//! Expanding numerator and denominator in `f(t; z)` gives
//! `N = Σ (-2)^t f(t; z)` and `D = Σ (-1)^t f(t; z)`; truncating both at
//! `t_max` yields `D_approx(z, t_max) = 2 N / D^2`.

mod hardy_littlewood;
mod logint;

pub use hardy_littlewood::{hl_constant, HLConstant, DEFAULT_HL_CUTOFF};
pub use logint::{exp_integral_ei, li, li2_integral, li2_quadrature, li2_via_li};

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::prime_engine::odd_primes_up_to;
use crate::scalar::{Backend, Scalar};
use crate::symmetric_series::{esp_direct_over, SymmetricSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CorrectionMode {
    ExactProduct,
    TruncatedSeries { t_max: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorrectionFactor<S> {
    pub z: u64,
    pub mode: CorrectionMode,
    pub numerator: S,
    pub denominator: S,
    pub value: S,
}

impl<S: Scalar> CorrectionFactor<S> {
    fn from_parts(z: u64, mode: CorrectionMode, numerator: S, denominator: S) -> Result<Self> {
        let t_max = match mode {
            CorrectionMode::TruncatedSeries { t_max } => t_max,
            CorrectionMode::ExactProduct => 0,
        };
        let value = numerator
            .mul_i64(2)
            .checked_div(&denominator.mul(&denominator))
            .ok_or(Error::Singularity { z, t_max })?;
        Ok(Self {
            z,
            mode,
            numerator,
            denominator,
            value,
        })
    }

    pub fn to_f64(&self) -> CorrectionFactor<f64> {
        CorrectionFactor {
            z: self.z,
            mode: self.mode,
            numerator: self.numerator.to_f64(),
            denominator: self.denominator.to_f64(),
            value: self.value.to_f64(),
        }
    }
}

/// `D(z)` as the finite product over odd primes `<= z`; 2 when there are none.
pub fn correction_exact<S: Scalar>(z: u64) -> Result<CorrectionFactor<S>> {
    let primes = odd_primes_up_to(z)?;
    Ok(correction_exact_over(z, &primes))
}

pub fn correction_exact_over<S: Scalar>(z: u64, odd_primes: &[u64]) -> CorrectionFactor<S> {
    let mut numerator = S::one();
    let mut denominator = S::one();
    for &p in odd_primes {
        let r = S::recip_pow(p, 1);
        numerator = numerator.mul(&S::one().sub(&r.mul_i64(2)));
        denominator = denominator.mul(&S::one().sub(&r));
    }
    CorrectionFactor::from_parts(z, CorrectionMode::ExactProduct, numerator, denominator)
        .expect("odd primes never make 1 - 1/p vanish")
}

/// `D_approx` from the first `t_max + 1` entries of an already computed series.
pub fn correction_from_series<S: Scalar>(
    series: &SymmetricSeries<S>,
    t_max: usize,
) -> Result<CorrectionFactor<S>> {
    if t_max > series.t_max() {
        return Err(Error::Contract(format!(
            "series holds degrees up to {}, asked for {t_max}",
            series.t_max()
        )));
    }
    let mut num = S::acc(S::zero());
    let mut den = S::acc(S::zero());
    let mut two_pow = S::one();
    for (t, f) in series.values()[..=t_max].iter().enumerate() {
        let (a, b) = (two_pow.mul(f), f.clone());
        if t % 2 == 0 {
            S::acc_add(&mut num, &a);
            S::acc_add(&mut den, &b);
        } else {
            S::acc_add(&mut num, &S::zero().sub(&a));
            S::acc_add(&mut den, &S::zero().sub(&b));
        }
        two_pow = two_pow.mul_i64(2);
    }
    CorrectionFactor::from_parts(
        series.z(),
        CorrectionMode::TruncatedSeries { t_max },
        S::acc_value(&num),
        S::acc_value(&den),
    )
}

pub fn correction_series<S: Scalar>(z: u64, t_max: usize) -> Result<CorrectionFactor<S>> {
    let primes = odd_primes_up_to(z)?;
    correction_from_series(&esp_direct_over::<S>(z, &primes, t_max), t_max)
}

/// Series correction evaluated with a runtime-selected backend.
pub fn correction_series_with(
    z: u64,
    t_max: usize,
    backend: Backend,
) -> Result<CorrectionFactor<f64>> {
    match backend {
        Backend::ExactRational => Ok(correction_series::<BigRational>(z, t_max)?.to_f64()),
        Backend::CompensatedFloat => correction_series::<f64>(z, t_max),
    }
}

/// Truncated correction at every `t` in `t_values` from one series evaluation.
pub fn correction_sweep_with(
    z: u64,
    t_values: &[usize],
    backend: Backend,
) -> Result<Vec<Result<CorrectionFactor<f64>>>> {
    let top = t_values.iter().copied().max().unwrap_or(0);
    let primes = odd_primes_up_to(z)?;
    fn run<S: Scalar>(z: u64, primes: &[u64], top: usize, ts: &[usize]) -> Vec<Result<CorrectionFactor<f64>>> {
        let series = esp_direct_over::<S>(z, primes, top);
        ts.iter()
            .map(|&t| correction_from_series(&series, t).map(|c| c.to_f64()))
            .collect()
    }
    Ok(match backend {
        Backend::ExactRational => run::<BigRational>(z, &primes, top, t_values),
        Backend::CompensatedFloat => run::<f64>(z, &primes, top, t_values),
    })
}

/// `z = ⌊x^θ⌋`.
///
/// A power landing within `1e-9` (relative) of an integer is taken to be that
/// integer, so `10000^(1/4)` gives 10 even when `powf` rounds just below.
pub fn sieving_limit(x: u64, theta: f64) -> Result<u64> {
    if !(theta > 0.0 && theta < 1.0) {
        return Err(Error::Config(format!("theta must lie in (0, 1), got {theta}")));
    }
    let r = (x as f64).powf(theta);
    let nearest = r.round();
    if (r - nearest).abs() <= 1e-9 * nearest.max(1.0) {
        Ok(nearest as u64)
    } else {
        Ok(r.floor() as u64)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HlMode {
    /// `2C₂ · x / ln² x`
    Plain,
    /// `2C₂ · ∫_2^x dt / ln² t`
    Integral,
}

impl std::str::FromStr for HlMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "plain" => Ok(HlMode::Plain),
            "integral" => Ok(HlMode::Integral),
            other => Err(format!("unknown HL mode `{other}`")),
        }
    }
}

impl std::fmt::Display for HlMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            HlMode::Plain => "plain",
            HlMode::Integral => "integral",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ThisWork,
    HlPlain,
    HlIntegral,
}

/// Parameters that produced a prediction.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct PredictionConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_max: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub backend: Option<Backend>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hl_cutoff: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Prediction {
    pub x: u64,
    pub method: Method,
    /// Multiplier in front of the density term: `D_approx` or `2C₂`.
    pub factor: f64,
    pub raw: f64,
    pub rounded: u64,
    pub config: PredictionConfig,
}

fn x_over_log2(x: u64) -> f64 {
    let xf = x as f64;
    let l = xf.ln();
    xf / (l * l)
}

/// `D_approx(⌊x^θ⌋, t_max) · x / ln² x`. `backend = None` picks by `z`.
pub fn predict_this_work(
    x: u64,
    theta: f64,
    t_max: usize,
    backend: Option<Backend>,
) -> Result<Prediction> {
    if x < 10 {
        return Err(Error::Domain(format!("prediction needs x >= 10, got {x}")));
    }
    let z = sieving_limit(x, theta)?;
    let backend = backend.unwrap_or_else(|| Backend::auto_for(z));
    let factor = correction_series_with(z, t_max, backend)?;
    Ok(this_work_from_factor(x, theta, backend, &factor))
}

pub(crate) fn this_work_from_factor(
    x: u64,
    theta: f64,
    backend: Backend,
    factor: &CorrectionFactor<f64>,
) -> Prediction {
    let t_max = match factor.mode {
        CorrectionMode::TruncatedSeries { t_max } => Some(t_max),
        CorrectionMode::ExactProduct => None,
    };
    let raw = factor.value * x_over_log2(x);
    Prediction {
        x,
        method: Method::ThisWork,
        factor: factor.value,
        raw,
        rounded: round_count(raw),
        config: PredictionConfig {
            theta: Some(theta),
            z: Some(factor.z),
            t_max,
            backend: Some(backend),
            hl_cutoff: None,
        },
    }
}

fn round_count(raw: f64) -> u64 {
    if raw.is_finite() && raw > 0.0 {
        raw.round() as u64
    } else {
        0
    }
}

pub fn predict_hl(x: u64, mode: HlMode, constant: &HLConstant) -> Result<Prediction> {
    if x < 3 {
        return Err(Error::Domain(format!("HL prediction needs x >= 3, got {x}")));
    }
    let (method, density) = match mode {
        HlMode::Plain => (Method::HlPlain, x_over_log2(x)),
        HlMode::Integral => (Method::HlIntegral, li2_integral(x as f64)?),
    };
    let raw = constant.value * density;
    Ok(Prediction {
        x,
        method,
        factor: constant.value,
        raw,
        rounded: round_count(raw),
        config: PredictionConfig {
            hl_cutoff: Some(constant.cutoff),
            ..PredictionConfig::default()
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn empty_product_is_two() {
        let c = correction_exact::<BigRational>(2).unwrap();
        assert_eq!(c.value, BigRational::from_integer(BigInt::from(2)));
        let s = correction_series::<f64>(2, 4).unwrap();
        assert_eq!(s.value, 2.0);
    }

    #[test]
    fn exact_product_to_ten() {
        // 2 · (1/7) · (105/48)^2 = 175/128
        let c = correction_exact::<BigRational>(10).unwrap();
        assert_eq!(c.value, BigRational::new(175.into(), 128.into()));
        assert_eq!(c.numerator, BigRational::new(1.into(), 7.into()));
        assert_eq!(c.denominator, BigRational::new(16.into(), 35.into()));
    }

    #[test]
    fn complete_series_equals_product() {
        let series = correction_series::<BigRational>(10, 4).unwrap();
        assert_eq!(series.value, correction_exact::<BigRational>(10).unwrap().value);
        assert_eq!(series.mode, CorrectionMode::TruncatedSeries { t_max: 4 });
    }

    #[test]
    fn singular_denominator() {
        // z = 3: D = 1 - 1/3 at t_max >= 1; at t_max = 0 both sums are 1.
        assert!(correction_series::<f64>(3, 0).is_ok());
        let err = CorrectionFactor::<f64>::from_parts(
            7,
            CorrectionMode::TruncatedSeries { t_max: 2 },
            1.0,
            0.0,
        )
        .unwrap_err();
        assert_eq!(err, Error::Singularity { z: 7, t_max: 2 });
    }

    #[test]
    fn series_longer_than_available() {
        let s = esp_direct_over::<f64>(10, &[3, 5, 7], 2);
        assert!(matches!(correction_from_series(&s, 3), Err(Error::Contract(_))));
    }

    #[test]
    fn sieving_limits() {
        assert_eq!(sieving_limit(10_000, 0.25).unwrap(), 10);
        assert_eq!(sieving_limit(100_000, 0.25).unwrap(), 17);
        assert_eq!(sieving_limit(1_000_000, 0.25).unwrap(), 31);
        assert_eq!(sieving_limit(10_000_000, 0.25).unwrap(), 56);
        assert_eq!(sieving_limit(1_000_000, 0.5).unwrap(), 1000);
        assert_eq!(sieving_limit(1_000_000, 0.1).unwrap(), 3);
        assert_eq!(sieving_limit(100, 0.25).unwrap(), 3);
        for bad in [0.0, 1.0, -0.5, f64::NAN] {
            assert!(matches!(sieving_limit(100, bad), Err(Error::Config(_))));
        }
    }

    #[test]
    fn hl_plain_at_one_million() {
        let c = HLConstant { cutoff: 0, value: 1.320_324 };
        let p = predict_hl(1_000_000, HlMode::Plain, &c).unwrap();
        // 1.320324 · 10^6 / ln²(10^6) = 6917.46
        assert_eq!(p.rounded, 6917);
        assert!(predict_hl(2, HlMode::Plain, &c).is_err());
    }

    #[test]
    fn this_work_records_config() {
        let p = predict_this_work(10_000, 0.25, 4, None).unwrap();
        assert_eq!(p.rounded, 161);
        assert_eq!(p.config.z, Some(10));
        assert_eq!(p.config.backend, Some(Backend::ExactRational));
        assert_eq!(p.config.t_max, Some(4));
        assert!(predict_this_work(9, 0.25, 4, None).is_err());
    }
}
