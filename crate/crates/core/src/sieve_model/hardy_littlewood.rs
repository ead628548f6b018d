use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::prime_engine::sieve_primes;
use crate::scalar::NeumaierSum;

pub const DEFAULT_HL_CUTOFF: u64 = 10_000_000;

/// Partial product `2 · Π_{2<p<=cutoff} (1 - 1/(p-1)^2)`, approximating `2C₂`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HLConstant {
    pub cutoff: u64,
    pub value: f64,
}

pub fn hl_constant(cutoff: u64) -> Result<HLConstant> {
    if cutoff < 3 {
        return Err(Error::Domain(format!("HL cutoff must be >= 3, got {cutoff}")));
    }
    let table = sieve_primes(cutoff)?;
    let log_sum: NeumaierSum = table
        .odd_primes()
        .map(|p| {
            let d = (p - 1) as f64;
            (-1.0 / (d * d)).ln_1p()
        })
        .collect();
    Ok(HLConstant {
        cutoff,
        value: 2.0 * log_sum.value().exp(),
    })
}
