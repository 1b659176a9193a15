//! Subdominant-channel coefficients: the prefactor series H and the sum
//! correction series F.
//!
//! Linearizing the shifted quantization rule in the shift `g` and expanding
//! everything except `e^{−πz}` in `w = 1/z` gives
//!
//! ```text
//! H(w) = (3/4) B′(w²) · exp(−π Σ_{m≥1} d_m w^{2m−1})
//! ```
//!
//! so `h_n = Σ_m (1 − 3m/2) b_m e_{n−2m}` where `e` are the coefficients of
//! the exponential factor.

use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::arith::{binom_general, const_pi};

/// Numeric h_0..=h_{n_max} from numeric b and d (both indexed from 0).
///
/// Needs `b` through `n_max/2` and `d` through `(n_max+1)/2`; the caller
/// checks capacity.
pub fn gen_h_numeric(b: &[Float], d: &[Float], n_max: usize, precision_bits: u32) -> Vec<Float> {
    let work = precision_bits + 128;
    let pi = const_pi(work);
    // s_{2m−1} = −π d_m
    let mut s = vec![Float::new(work); n_max + 1];
    for (m, dm) in d.iter().enumerate().skip(1) {
        let k = 2 * m - 1;
        if k > n_max {
            break;
        }
        s[k] = -Float::with_val(work, &pi * dm);
    }
    // e = exp(s) via n e_n = Σ_k k s_k e_{n−k}
    let mut e = vec![Float::with_val(work, 1)];
    for n in 1..=n_max {
        let mut acc = Float::new(work);
        for k in (1..=n).step_by(2) {
            acc += Float::with_val(work, &s[k] * &e[n - k]) * (k as u32);
        }
        e.push(acc / n as u32);
    }
    (0..=n_max)
        .map(|n| {
            let mut acc = Float::new(work);
            for (m, bm) in b.iter().enumerate().take(n / 2 + 1) {
                let w = Rational::from((2 - 3 * m as i64, 2));
                acc += Float::with_val(work, bm * &e[n - 2 * m]) * &w;
            }
            Float::with_val(precision_bits, acc)
        })
        .collect()
}

/// Highest order of the F series.
pub const F_ORDER: usize = 4;

/// Eulerian numbers ⟨j, k⟩ for `0 ≤ k < j`.
fn eulerian_row(j: usize) -> Vec<Integer> {
    let mut row = vec![Integer::from(1)];
    for n in 2..=j {
        let mut next = vec![Integer::new(); n];
        for (k, slot) in next.iter_mut().enumerate() {
            if k < row.len() {
                *slot += Integer::from(&row[k] * (k as u32 + 1));
            }
            if k >= 1 && k - 1 < row.len() {
                *slot += Integer::from(&row[k - 1] * (n - k) as u32);
            }
        }
        row = next;
    }
    row
}

/// `Σ_{n≥0} n^j y^n` for |y| < 1, in closed form.
pub fn power_geometric(j: usize, y: &Float) -> Float {
    let prec = y.prec();
    let one_minus = Float::with_val(prec, 1 - y);
    if j == 0 {
        return one_minus.recip();
    }
    // y A_j(y) / (1 − y)^{j+1}, A_j the Eulerian polynomial
    let mut poly = Float::new(prec);
    for c in eulerian_row(j).iter().rev() {
        poly *= y;
        poly += c;
    }
    poly * y / Float::with_val(prec, one_minus.pow(j as u32 + 1))
}

/// f_0..=f_4 of the sum correction, from h_1..h_4.
///
/// Expands `(1 + n/Z)^{1/3} H(Z+n)/H(Z)` in `1/Z` as `Σ_k Z^{−k} Σ_j c_{kj} n^j`
/// and sums each power of `n` against `(−e^{−π})^n`; the normalization
/// `1/(1 + e^{−π})` is moved outside.
pub fn gen_f_numeric(h: &[Float], precision_bits: u32) -> Vec<Float> {
    let work = precision_bits + 64;
    let order = F_ORDER;
    let hv: Vec<Float> = (0..=order).map(|k| Float::with_val(work, &h[k])).collect();
    // numerator: Σ_{k'} h_{k'} Z^{−k'} (1 + n/Z)^{1/3 − k'}
    let mut num = vec![vec![Float::new(work); order + 1]; order + 1];
    for (kp, hk) in hv.iter().enumerate() {
        let expo = Rational::from((1 - 3 * kp as i64, 3));
        for r in 0..=order - kp {
            let w = binom_general(&expo, r as u32);
            num[kp + r][r] += Float::with_val(work, hk * &w);
        }
    }
    // 1/H(Z) as a series in 1/Z
    let mut inv = vec![Float::with_val(work, 1)];
    for k in 1..=order {
        let mut acc = Float::new(work);
        for i in 1..=k {
            acc -= Float::with_val(work, &hv[i] * &inv[k - i]);
        }
        inv.push(acc);
    }
    let mut coef = vec![vec![Float::new(work); order + 1]; order + 1];
    for k in 0..=order {
        for i in 0..=k {
            for j in 0..=order {
                coef[k][j] += Float::with_val(work, &num[i][j] * &inv[k - i]);
            }
        }
    }
    let x = Float::with_val(work, -const_pi(work)).exp();
    let y = Float::with_val(work, -&x);
    let sums: Vec<Float> = (0..=order).map(|j| power_geometric(j, &y)).collect();
    let norm = Float::with_val(work, 1 + &x);
    coef.iter()
        .map(|row| {
            let mut acc = Float::new(work);
            for (c, s) in row.iter().zip(&sums) {
                acc += Float::with_val(work, c * s);
            }
            Float::with_val(precision_bits, acc * &norm)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_geometric_matches_brute_force() {
        let prec = 200;
        let y = Float::with_val(prec, -0.3);
        for j in 0..=6 {
            let closed = power_geometric(j, &y);
            let mut brute = Float::new(prec);
            let mut yn = Float::with_val(prec, 1);
            for n in 0..2000u32 {
                brute += Float::with_val(prec, Float::with_val(prec, n).pow(j as u32) * &yn);
                yn *= &y;
            }
            let diff = Float::with_val(prec, &closed - &brute).abs();
            assert!(diff < Float::with_val(prec, 1) >> 180, "j = {j}");
        }
    }

    #[test]
    fn f_zero_is_one() {
        let h: Vec<Float> = (0..=4)
            .map(|k| Float::with_val(128, 1.0 / (k as f64 + 1.0)))
            .collect();
        let f = gen_f_numeric(&h, 128);
        let diff = Float::with_val(128, &f[0] - 1u32).abs();
        assert!(diff < Float::with_val(128, 1) >> 120);
    }
}
