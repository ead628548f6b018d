//! Table reproduction and parameter sweeps.

mod render;
pub mod reference;

pub use render::{
    render_constants, render_identities, render_table, render_theta_sweep,
    render_truncation_sweep, OutputFormat,
};

use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::prime_engine::{count_twin_primes, odd_primes_up_to, power_sum_over, sieve_primes};
use crate::scalar::Backend;
use crate::sieve_model::{
    correction_exact_over, correction_sweep_with, hl_constant, predict_hl, sieving_limit,
    this_work_from_factor, HLConstant, HlMode, DEFAULT_HL_CUTOFF,
};
use crate::symmetric_series::{MEISSEL_MERTENS, MEISSEL_MERTENS_ODD};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BackendChoice {
    /// Exact for `z <= 1000`, compensated float above.
    #[default]
    Auto,
    ExactRational,
    CompensatedFloat,
}

impl BackendChoice {
    pub fn resolve(self, z: u64) -> Backend {
        match self {
            BackendChoice::Auto => Backend::auto_for(z),
            BackendChoice::ExactRational => Backend::ExactRational,
            BackendChoice::CompensatedFloat => Backend::CompensatedFloat,
        }
    }
}

impl std::str::FromStr for BackendChoice {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        if s == "auto" {
            return Ok(BackendChoice::Auto);
        }
        Ok(match s.parse::<Backend>()? {
            Backend::ExactRational => BackendChoice::ExactRational,
            Backend::CompensatedFloat => BackendChoice::CompensatedFloat,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelConfig {
    pub x_values: Vec<u64>,
    pub theta: f64,
    pub t_max: usize,
    pub backend: BackendChoice,
    pub hl_mode: HlMode,
    pub hl_cutoff: u64,
    pub output_format: OutputFormat,
}

impl Default for ModelConfig {
    fn default() -> Self {
        Self {
            x_values: vec![10_000, 100_000, 1_000_000, 10_000_000],
            theta: 0.25,
            t_max: 4,
            backend: BackendChoice::Auto,
            hl_mode: HlMode::Integral,
            hl_cutoff: DEFAULT_HL_CUTOFF,
            output_format: OutputFormat::Pretty,
        }
    }
}

impl ModelConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.theta > 0.0 && self.theta < 1.0) {
            return Err(Error::Config(format!(
                "theta must lie in (0, 1), got {}",
                self.theta
            )));
        }
        if self.x_values.is_empty() {
            return Err(Error::Config("no x values given".into()));
        }
        if let Some(x) = self.x_values.iter().find(|&&x| x < 10) {
            return Err(Error::Config(format!("x must be >= 10, got {x}")));
        }
        if self.hl_cutoff < 3 {
            return Err(Error::Config(format!(
                "hl cutoff must be >= 3, got {}",
                self.hl_cutoff
            )));
        }
        Ok(())
    }
}

/// Signed relative error in percent.
pub fn relative_error_pct(prediction: u64, truth: u64) -> f64 {
    100.0 * (prediction as f64 - truth as f64) / truth as f64
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub x: u64,
    pub z: u64,
    pub pi2_true: u64,
    pub hl_pred: u64,
    pub hl_rel_err_pct: f64,
    pub tw_pred: u64,
    pub tw_rel_err_pct: f64,
    pub d_approx: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hl_flag: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableOutput {
    pub config: ModelConfig,
    pub rows: Vec<TableRow>,
}

impl TableOutput {
    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Contract(e.to_string()))
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Config(format!("malformed table JSON: {e}")))
    }
}

fn hl_flag(x: u64, hl_pred: u64, constant: &HLConstant) -> Result<Option<String>> {
    let Some(published) = reference::published_row(x) else {
        return Ok(None);
    };
    if published.hl == hl_pred {
        return Ok(None);
    }
    let integral = predict_hl(x, HlMode::Integral, constant)?.rounded;
    let plain = predict_hl(x, HlMode::Plain, constant)?.rounded;
    let verdict = if integral != published.hl && plain != published.hl {
        "matches neither HL mode"
    } else {
        "matches only the other HL mode"
    };
    Ok(Some(format!(
        "reference HL value {} not reproduced (integral {integral}, plain {plain}); {verdict}",
        published.hl
    )))
}

fn table_row(x: u64, config: &ModelConfig, constant: &HLConstant) -> Result<TableRow> {
    let pi2_true = count_twin_primes(x)?;
    let z = sieving_limit(x, config.theta)?;
    let backend = config.backend.resolve(z);
    let factor = correction_sweep_with(z, &[config.t_max], backend)?
        .pop()
        .expect("one truncation requested")?;
    let tw = this_work_from_factor(x, config.theta, backend, &factor);
    let hl = predict_hl(x, config.hl_mode, constant)?;
    Ok(TableRow {
        x,
        z,
        pi2_true,
        hl_pred: hl.rounded,
        hl_rel_err_pct: relative_error_pct(hl.rounded, pi2_true),
        tw_pred: tw.rounded,
        tw_rel_err_pct: relative_error_pct(tw.rounded, pi2_true),
        d_approx: factor.value,
        hl_flag: hl_flag(x, hl.rounded, constant)?,
    })
}

/// One row per distinct `x`, ascending.
pub fn run_table(config: &ModelConfig) -> Result<Vec<TableRow>> {
    config.validate()?;
    let constant = hl_constant(config.hl_cutoff)?;
    let mut xs = config.x_values.clone();
    xs.sort_unstable();
    xs.dedup();

    let row = |&x: &u64| table_row(x, config, &constant).map_err(|e| e.at_x(x));
    #[cfg(feature = "parallel")]
    let rows = {
        use rayon::prelude::*;
        xs.par_iter().map(row).collect::<Result<Vec<_>>>()
    };
    #[cfg(not(feature = "parallel"))]
    let rows = xs.iter().map(row).collect::<Result<Vec<_>>>();
    rows
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TruncationRow {
    pub t_max: usize,
    pub d_approx: f64,
    pub numerator: f64,
    pub denominator: f64,
    pub raw: f64,
    pub prediction: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TruncationSweep {
    pub x: u64,
    pub theta: f64,
    pub z: u64,
    pub backend: Backend,
    pub odd_prime_count: usize,
    /// `D(z)` from the finite product, the limit of the sweep.
    pub d_exact: f64,
    pub rows: Vec<TruncationRow>,
}

pub fn truncation_sweep(
    x: u64,
    t_range: RangeInclusive<usize>,
    config: &ModelConfig,
) -> Result<TruncationSweep> {
    if t_range.is_empty() {
        return Err(Error::Config(format!(
            "empty truncation range {}..={}",
            t_range.start(),
            t_range.end()
        )));
    }
    if x < 10 {
        return Err(Error::Config(format!("x must be >= 10, got {x}")));
    }
    let z = sieving_limit(x, config.theta)?;
    let backend = config.backend.resolve(z);
    let primes = odd_primes_up_to(z)?;
    let ts: Vec<usize> = t_range.collect();
    let factors = correction_sweep_with(z, &ts, backend)?;
    let rows = ts
        .iter()
        .zip(factors)
        .map(|(&t, factor)| {
            let factor = factor?;
            let p = this_work_from_factor(x, config.theta, backend, &factor);
            Ok(TruncationRow {
                t_max: t,
                d_approx: factor.value,
                numerator: factor.numerator,
                denominator: factor.denominator,
                raw: p.raw,
                prediction: p.rounded,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TruncationSweep {
        x,
        theta: config.theta,
        z,
        backend,
        odd_prime_count: primes.len(),
        d_exact: correction_exact_over::<f64>(z, &primes).value,
        rows,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThetaRow {
    pub theta: f64,
    pub z: u64,
    pub odd_prime_count: usize,
    pub backend: Backend,
    pub d_approx: f64,
    pub raw: f64,
    pub prediction: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThetaSweep {
    pub x: u64,
    pub t_max: usize,
    pub rows: Vec<ThetaRow>,
}

pub fn sieving_limit_sweep(x: u64, thetas: &[f64], config: &ModelConfig) -> Result<ThetaSweep> {
    if x < 10 {
        return Err(Error::Config(format!("x must be >= 10, got {x}")));
    }
    if thetas.is_empty() {
        return Err(Error::Config("no theta values given".into()));
    }
    let limits = thetas
        .iter()
        .map(|&theta| sieving_limit(x, theta))
        .collect::<Result<Vec<_>>>()?;
    let rows = thetas
        .iter()
        .zip(limits)
        .map(|(&theta, z)| {
            let backend = config.backend.resolve(z);
            let factor = correction_sweep_with(z, &[config.t_max], backend)?
                .pop()
                .expect("one truncation requested")?;
            let p = this_work_from_factor(x, theta, backend, &factor);
            Ok(ThetaRow {
                theta,
                z,
                odd_prime_count: odd_primes_up_to(z)?.len(),
                backend,
                d_approx: factor.value,
                raw: p.raw,
                prediction: p.rounded,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ThetaSweep {
        x,
        t_max: config.t_max,
        rows,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OddPrimeZeta {
    pub k: u32,
    pub cutoff: u64,
    pub partial_sum: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstantsReport {
    pub hl: HLConstant,
    pub mertens: f64,
    pub mertens_odd: f64,
    pub odd_prime_zeta: Vec<OddPrimeZeta>,
}

/// `2C₂` partial product, Mertens constants and odd-prime zeta partial sums
/// `Σ_{3<=p<=cutoff} p^-k` for `k = 2..=6`.
pub fn constants(hl_cutoff: u64, zeta_cutoff: u64) -> Result<ConstantsReport> {
    let hl = hl_constant(hl_cutoff)?;
    let primes: Vec<u64> = sieve_primes(zeta_cutoff)?.odd_primes().collect();
    let odd_prime_zeta = (2..=6)
        .map(|k| {
            Ok(OddPrimeZeta {
                k,
                cutoff: zeta_cutoff,
                partial_sum: power_sum_over::<f64>(k, zeta_cutoff, &primes)?.value,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ConstantsReport {
        hl,
        mertens: MEISSEL_MERTENS,
        mertens_odd: MEISSEL_MERTENS_ODD,
        odd_prime_zeta,
    })
}
