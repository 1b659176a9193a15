//! Coefficients of the asymptotic expansions of eigenvalue sums.

use rug::{Integer, Rational};

use crate::arith::{bernoulli, binom_general, ExactCoeff};
use crate::error::Result;

/// Euler–Maclaurin constants K_0..=K_{m_max} (K_0 = 1).
pub fn gen_k(m_max: usize) -> Result<Vec<Rational>> {
    let mut out = vec![Rational::from(1)];
    for m in 1..=m_max {
        let m32 = m as u32;
        // (1 − 4^{1−m} m)/2
        let mut k = Rational::from(1) - quarter_pow(m32 - 1) * m32;
        k /= 2;
        for r in 1..=m32 {
            let w = quarter_pow(r) - Rational::from((1, 1 + 2 * r));
            let binom = binom_general(&Rational::from(2 * m32), 2 * r);
            k += w * binom * bernoulli(2 * (m32 - r))?;
        }
        out.push(k);
    }
    Ok(out)
}

/// `4^{-e}`.
fn quarter_pow(e: u32) -> Rational {
    Rational::from((Integer::from(1), Integer::from(1) << (2 * e)))
}

/// `c_n = 7/(7 − 6n) Σ_m C(2n − 7/3, 2m) K_m b_{n−m}`.
pub fn gen_c(b: &[ExactCoeff], k: &[Rational], n_max: usize) -> Vec<ExactCoeff> {
    (0..=n_max)
        .map(|n| {
            let n64 = n as i64;
            let top = Rational::from((6 * n64 - 7, 3));
            let mut acc = ExactCoeff::zero();
            for m in 0..=n {
                let w = binom_general(&top, 2 * m as u32) * &k[m];
                acc += &b[n - m].scale(&w);
            }
            acc.scale(&Rational::from((7, 7 - 6 * n64)))
        })
        .collect()
}

/// `q_n = (7/3)/(7/3 − 2n) Σ_m B_{2(n−m)} C(4/3 − 2m, 2(n−m)) b_m`.
pub fn gen_q(b: &[ExactCoeff], n_max: usize) -> Result<Vec<ExactCoeff>> {
    (0..=n_max)
        .map(|n| {
            let n64 = n as i64;
            let mut acc = ExactCoeff::zero();
            for (m, bm) in b.iter().enumerate().take(n + 1) {
                let r = 2 * (n - m) as u32;
                let top = Rational::from((4 - 6 * m as i64, 3));
                let w = bernoulli(r)? * binom_general(&top, r);
                acc += &bm.scale(&w);
            }
            Ok(acc.scale(&Rational::from((7, 7 - 6 * n64))))
        })
        .collect()
}
