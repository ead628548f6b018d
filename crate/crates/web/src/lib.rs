//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Each export takes plain numbers and returns a JSON string, so the page
//! needs no glue beyond `JSON.parse`.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use twinsieve::experiment::{sieving_limit_sweep, truncation_sweep, BackendChoice, ModelConfig};
use twinsieve::prime_engine::odd_primes_up_to;
use twinsieve::sieve_model::correction_exact;
use twinsieve::symmetric_series::{esp_values, leading_order_f};
use twinsieve::Backend;

// Keeps exact arithmetic and page latency bounded.
const MAX_Z: u64 = 200_000;
const MAX_X: u64 = 1_000_000_000_000;
const MAX_T: usize = 64;

#[derive(Serialize)]
struct SeriesProfile {
    z: u64,
    odd_primes: usize,
    backend: Backend,
    /// `f(t; z)` for `t = 0..=t_max`
    values: Vec<f64>,
    /// `(ln ln z + M - 1/2)^t / t!`, absent when `z <= e`
    leading_order: Option<Vec<f64>>,
    d_exact: f64,
}

fn to_json<T: Serialize>(v: &T) -> Result<String, String> {
    serde_json::to_string(v).map_err(|e| e.to_string())
}

fn config(theta: f64, t_max: usize) -> ModelConfig {
    ModelConfig {
        x_values: vec![],
        theta,
        t_max,
        backend: BackendChoice::Auto,
        ..ModelConfig::default()
    }
}

fn check_x(x: f64) -> Result<u64, String> {
    if !(10.0..=MAX_X as f64).contains(&x) || x.fract() != 0.0 {
        return Err(format!("x must be an integer in [10, {MAX_X}]"));
    }
    Ok(x as u64)
}

pub fn series_profile_json(z: f64, t_max: usize) -> Result<String, String> {
    if !(0.0..=MAX_Z as f64).contains(&z) {
        return Err(format!("z must lie in [0, {MAX_Z}]"));
    }
    let z = z as u64;
    let t_max = t_max.min(MAX_T);
    let backend = Backend::auto_for(z);
    let values = esp_values(z, t_max, backend).map_err(|e| e.to_string())?;
    let leading_order = (0..=t_max as u32)
        .map(|t| leading_order_f(t, z as f64))
        .collect::<Result<Vec<_>, _>>()
        .ok();
    to_json(&SeriesProfile {
        z,
        odd_primes: odd_primes_up_to(z).map_err(|e| e.to_string())?.len(),
        backend,
        values,
        leading_order,
        d_exact: correction_exact::<f64>(z).map_err(|e| e.to_string())?.value,
    })
}

pub fn truncation_sweep_json(x: f64, theta: f64, t_min: usize, t_max: usize) -> Result<String, String> {
    let x = check_x(x)?;
    let t_max = t_max.min(MAX_T);
    let cfg = config(theta, t_max);
    let z = twinsieve::sieve_model::sieving_limit(x, theta).map_err(|e| e.to_string())?;
    if z > MAX_Z {
        return Err(format!("z = {z} exceeds the demo limit {MAX_Z}"));
    }
    let sweep = truncation_sweep(x, t_min..=t_max, &cfg).map_err(|e| e.to_string())?;
    to_json(&sweep)
}

pub fn theta_sweep_json(x: f64, thetas: &[f64], t_max: usize) -> Result<String, String> {
    let x = check_x(x)?;
    let t_max = t_max.min(MAX_T);
    for &theta in thetas {
        let z = twinsieve::sieve_model::sieving_limit(x, theta).map_err(|e| e.to_string())?;
        if z > MAX_Z {
            return Err(format!("theta = {theta} gives z = {z}, above the demo limit {MAX_Z}"));
        }
    }
    let sweep = sieving_limit_sweep(x, thetas, &config(0.25, t_max)).map_err(|e| e.to_string())?;
    to_json(&sweep)
}

/// `f(0..=t_max; z)` next to the leading-order asymptotic.
#[wasm_bindgen(js_name = seriesProfile)]
pub fn series_profile(z: f64, t_max: usize) -> Result<String, JsValue> {
    series_profile_json(z, t_max).map_err(|e| JsValue::from_str(&e))
}

/// Correction factor and prediction for every truncation in `t_min..=t_max`.
#[wasm_bindgen(js_name = truncationSweep)]
pub fn truncation_sweep_js(x: f64, theta: f64, t_min: usize, t_max: usize) -> Result<String, JsValue> {
    truncation_sweep_json(x, theta, t_min, t_max).map_err(|e| JsValue::from_str(&e))
}

/// Correction factor and prediction for each sieving exponent.
#[wasm_bindgen(js_name = thetaSweep)]
pub fn theta_sweep(x: f64, thetas: Vec<f64>, t_max: usize) -> Result<String, JsValue> {
    theta_sweep_json(x, &thetas, t_max).map_err(|e| JsValue::from_str(&e))
}
