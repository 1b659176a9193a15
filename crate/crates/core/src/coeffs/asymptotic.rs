//! Large-order approximants of the implicit and explicit WKB coefficients.

use rug::ops::Pow;
use rug::{Float, Integer};

use crate::arith::{const_gamma, const_pi};
use crate::error::{QwkbError, Result};

fn check_index(n: usize) -> Result<()> {
    if n == 0 {
        return Err(QwkbError::Config(
            "large-order approximants start at n = 1".into(),
        ));
    }
    Ok(())
}

fn factorial(k: usize) -> Integer {
    Integer::from(Integer::factorial(k as u32))
}

/// `−(−1)^⌊n/2⌋ (2/π)(9π/γ⁴)^n (2n−2)!`.
pub fn asym_a(n: usize, precision_bits: u32) -> Result<Float> {
    check_index(n)?;
    let work = precision_bits + 32;
    let pi = const_pi(work);
    let gamma = const_gamma(work)?;
    let base = Float::with_val(work, &pi * 9u32) / Float::with_val(work, (&gamma).pow(4u32));
    let mut v = Float::with_val(work, base.pow(n as u32)) * 2u32 / &pi;
    v *= factorial(2 * n - 2);
    if (n / 2).is_multiple_of(2) {
        v = -v;
    }
    Ok(Float::with_val(precision_bits, v))
}

/// `(−1)^⌊n/2⌋ 8 (2n−2)! / (3π (2π²)^n)`.
pub fn asym_b(n: usize, precision_bits: u32) -> Result<Float> {
    check_index(n)?;
    let work = precision_bits + 32;
    let pi = const_pi(work);
    let base = Float::with_val(work, (&pi).pow(2u32)) * 2u32;
    let denom = Float::with_val(work, base.pow(n as u32)) * &pi * 3u32;
    let mut v = Float::with_val(work, factorial(2 * n - 2)) * 8u32 / denom;
    if (n / 2) % 2 == 1 {
        v = -v;
    }
    Ok(Float::with_val(precision_bits, v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_patterns() {
        let a: Vec<bool> = (1..=8).map(|n| asym_a(n, 64).unwrap() > 0).collect();
        assert_eq!(a, [false, true, true, false, false, true, true, false]);
        let b: Vec<bool> = (1..=8).map(|n| asym_b(n, 64).unwrap() > 0).collect();
        assert_eq!(b, [true, false, false, true, true, false, false, true]);
    }

    #[test]
    fn rejects_order_zero() {
        assert!(asym_a(0, 64).is_err());
        assert!(asym_b(0, 64).is_err());
    }

    #[test]
    fn explicit_approximant_grows_eventually() {
        let mags: Vec<Float> = (5..20).map(|n| asym_b(n, 64).unwrap().abs()).collect();
        assert!(mags.windows(2).all(|w| w[1] > w[0]));
    }
}
