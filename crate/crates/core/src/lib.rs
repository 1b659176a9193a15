//! Semiclassical asymptotics of the pure quartic oscillator
//! `H = −(1/2) d²/dx² + x⁴/2`.
//!
//! * [`arith`]: multiprecision reals, exact `q·π^i·γ^j` coefficients, Bernoulli
//!   numbers and binomials.
//! * [`coeffs`]: every coefficient family (implicit and explicit WKB series,
//!   subdominant exponent and prefactor, sum series) plus embedded tables.
//! * [`eigen`]: eigenvalue approximations and truncation strategies.
//! * [`sums`]: approximations to sums of the lowest eigenvalues.
//! * [`oracle`]: an independent variational reference spectrum.

pub mod arith;
pub mod coeffs;
pub mod context;
pub mod eigen;
pub mod error;
pub mod oracle;
pub mod sums;

pub use context::Context;
pub use error::{QwkbError, Result};
