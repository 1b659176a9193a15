use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;

use crate::error::{QwkbError, Result};

/// Smallest precision accepted by the constant generators.
pub const MIN_PRECISION_BITS: u32 = 64;

/// Default working precision (about 77 decimal digits).
pub const DEFAULT_PRECISION_BITS: u32 = 256;

fn check_precision(precision_bits: u32) -> Result<()> {
    if precision_bits < MIN_PRECISION_BITS {
        return Err(QwkbError::Config(format!(
            "precision {precision_bits} bits is below the minimum of {MIN_PRECISION_BITS}"
        )));
    }
    Ok(())
}

fn gamma_cache() -> &'static Mutex<HashMap<u32, Float>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Float>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

pub fn const_pi(precision_bits: u32) -> Float {
    Float::with_val(precision_bits, Constant::Pi)
}

/// Γ(1/4), correctly rounded (MPFR's gamma is correctly rounded).
pub fn const_gamma(precision_bits: u32) -> Result<Float> {
    check_precision(precision_bits)?;
    let mut cache = gamma_cache().lock().expect("gamma cache poisoned");
    let value = cache
        .entry(precision_bits)
        .or_insert_with(|| Float::with_val(precision_bits, 0.25).gamma());
    Ok(value.clone())
}

/// α = 3π²·(3/(2γ⁸))^{1/3}, the leading WKB energy scale.
///
/// γ enters at a fractional power here, so α is kept as its own constant
/// rather than as an [`ExactCoeff`](super::ExactCoeff).
pub fn const_alpha(precision_bits: u32) -> Result<Float> {
    check_precision(precision_bits)?;
    let work = precision_bits + 32;
    let gamma = const_gamma(work)?;
    let pi = const_pi(work);
    let g8 = Float::with_val(work, (&gamma).pow(8u32));
    let inner = Float::with_val(work, 3) / (g8 * 2u32);
    let cube_root = inner.cbrt();
    let alpha = Float::with_val(work, pi.square_ref()) * 3u32 * cube_root;
    Ok(Float::with_val(precision_bits, alpha))
}
