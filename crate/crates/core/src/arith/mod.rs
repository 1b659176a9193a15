//! Arbitrary-precision reals, exact π/γ coefficient algebra and the
//! classical special numbers.
//!
//! Reals are MPFR floats ([`BigReal`]) and rationals are GMP rationals; both
//! carry their own precision or are exact.

mod consts;
mod decimal;
mod exact;
mod special;

pub use consts::{const_alpha, const_gamma, const_pi, DEFAULT_PRECISION_BITS, MIN_PRECISION_BITS};
pub use decimal::{last_place_unit, parse_decimal, significant_digits, to_sci};
pub use exact::ExactCoeff;
pub use special::{bernoulli, binom_general, binom_int, gamma_shift, pochhammer, BERNOULLI_CAP};

pub use rug::{Float as BigReal, Integer, Rational};
