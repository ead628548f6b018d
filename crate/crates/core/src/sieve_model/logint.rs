//! `∫_2^x dt / ln^2 t`, by quadrature and through the logarithmic integral.

use crate::error::{Error, Result};
use crate::scalar::NeumaierSum;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Exponential integral `Ei(y)` for `y > 0` from its power series
/// `γ + ln y + Σ y^n / (n · n!)`. All terms are positive, so there is no
/// cancellation; valid up to the overflow of `e^y`.
pub fn exp_integral_ei(y: f64) -> Result<f64> {
    if y.is_nan() || y <= 0.0 || y > 700.0 {
        return Err(Error::Domain(format!("Ei series needs 0 < y <= 700, got {y}")));
    }
    let mut acc = NeumaierSum::new(EULER_GAMMA);
    acc.add(y.ln());
    let mut term = 1.0;
    let mut n = 1.0;
    loop {
        term *= y / n;
        let contrib = term / n;
        acc.add(contrib);
        if contrib < acc.value().abs() * 1e-18 && n > y {
            break;
        }
        n += 1.0;
    }
    Ok(acc.value())
}

/// Logarithmic integral `li(x) = Ei(ln x)` for `x > 1`.
pub fn li(x: f64) -> Result<f64> {
    if x.is_nan() || x <= 1.0 {
        return Err(Error::Domain(format!("li(x) needs x > 1, got {x}")));
    }
    exp_integral_ei(x.ln())
}

fn check_domain(x: f64) -> Result<()> {
    if !x.is_finite() || x < 2.0 {
        return Err(Error::Domain(format!("integral from 2 needs x >= 2, got {x}")));
    }
    Ok(())
}

/// `li(x) - li(2) - x / ln x + 2 / ln 2`.
pub fn li2_via_li(x: f64) -> Result<f64> {
    check_domain(x)?;
    if x == 2.0 {
        return Ok(0.0);
    }
    let ln2 = std::f64::consts::LN_2;
    let mut acc = NeumaierSum::new(li(x)?);
    acc.add(-li(2.0)?);
    acc.add(-x / x.ln());
    acc.add(2.0 / ln2);
    Ok(acc.value())
}

/// Double-exponential quadrature of `e^u / u^2` over `[ln 2, ln x]`
/// (the substitution `t = e^u`), on unit-width panels.
pub fn li2_quadrature(x: f64) -> Result<f64> {
    check_domain(x)?;
    let (a, b) = (std::f64::consts::LN_2, x.ln());
    if b <= a {
        return Ok(0.0);
    }
    let f = |u: f64| u.exp() / (u * u);
    let panels = (b - a).ceil().max(1.0) as usize;
    let width = (b - a) / panels as f64;
    let mut acc = NeumaierSum::default();
    for i in 0..panels {
        let lo = a + i as f64 * width;
        let hi = if i + 1 == panels { b } else { lo + width };
        let scale = f(hi).max(f(lo)) * width;
        let out = quadrature::integrate(f, lo, hi, scale * 1e-14);
        acc.add(out.integral);
    }
    Ok(acc.value())
}

/// `∫_2^x dt / ln^2 t`, via the logarithmic integral.
pub fn li2_integral(x: f64) -> Result<f64> {
    li2_via_li(x)
}
