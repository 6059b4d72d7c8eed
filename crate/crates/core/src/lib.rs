//! Quasi-exactly solvable spectra of the hyperbolic quartic potential
//! `4γ²cosh⁴x + V₁cosh²x + η(η−1)tanh²x` and its trigonometric partner.
//!
//! Three independent routes produce the algebraic levels:
//!
//! * [`bethe`] expands the trial function in `z = cosh²x` and solves for the
//!   polynomial directly;
//! * [`heun`] maps onto the confluent Heun equation and uses its series
//!   termination conditions;
//! * [`liealg`] uses the sl(2) recurrence for the critical polynomials.
//!
//! [`numeric`] solves the full Schrödinger problem on a grid, and [`report`]
//! ties the routes together.

pub mod bethe;
pub mod error;
pub mod heun;
pub mod liealg;
pub mod model;
pub mod numeric;
pub mod poly;
pub mod report;

pub use bethe::{solve_polynomial_system, QesLevel, QesSpectrum};
pub use error::{QesError, Result};
pub use model::{
    anti_isospectral_map, coupling_m, coupling_v1, eval_potential, Family, Geometry, ModelParams,
    Normalization, Parity, WavefunctionSamples,
};
