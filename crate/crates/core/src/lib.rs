//! Sieve-product heuristics for the twin prime counting function.
//!
//! The model approximates `π₂(x)` by `D(z) · x / ln² x`, where `D(z)` is the
//! sieve density `2 Π_{3<=p<=z} (1 - 2/p) / (1 - 1/p)^2`. Writing numerator
//! and denominator as series in the elementary symmetric polynomials
//! `f(t; z)` of the odd-prime reciprocals and truncating them gives the
//! approximate factor `D_approx(z, t_max)`.
//!
//! * [`prime_engine`]: segmented sieve, exact twin counts, power sums.
//! * [`symmetric_series`]: `f(t; z)` by three routes, asymptotics, identity checks.
//! * [`sieve_model`]: correction factors, `2C₂`, Hardy–Littlewood predictions.
//! * [`experiment`]: table reproduction, sweeps, CSV/JSON rendering.

pub mod error;
pub mod experiment;
pub mod prime_engine;
pub mod scalar;
pub mod sieve_model;
pub mod symmetric_series;

pub use error::{Error, Result};
pub use scalar::{Backend, NeumaierSum, Scalar};

pub use num_rational::BigRational;
