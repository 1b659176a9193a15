use std::sync::OnceLock;

use rug::{Integer, Rational};

use crate::error::{QwkbError, Result};

/// Largest Bernoulli index served from the precomputed table.
pub const BERNOULLI_CAP: u32 = 256;

fn bernoulli_table() -> &'static [Rational] {
    static TABLE: OnceLock<Vec<Rational>> = OnceLock::new();
    TABLE.get_or_init(|| {
        // B_m = −1/(m+1) Σ_{j<m} C(m+1, j) B_j
        let cap = BERNOULLI_CAP as usize;
        let mut b: Vec<Rational> = Vec::with_capacity(cap + 1);
        b.push(Rational::from(1));
        for m in 1..=cap {
            if m > 1 && m % 2 == 1 {
                b.push(Rational::new());
                continue;
            }
            let mut acc = Rational::new();
            let mut binom = Integer::from(1);
            for (j, bj) in b.iter().enumerate() {
                if *bj != 0 {
                    acc += Rational::from(bj * &binom);
                }
                // C(m+1, j+1) from C(m+1, j)
                binom *= (m + 1 - j) as u32;
                binom /= (j + 1) as u32;
            }
            b.push(-acc / Rational::from(m as u32 + 1));
        }
        b
    })
}

/// Exact Bernoulli number B_k (with B₁ = −1/2). Odd indices above 1 return
/// exact zero.
pub fn bernoulli(k: u32) -> Result<Rational> {
    if k > BERNOULLI_CAP {
        return Err(QwkbError::capacity(
            "bernoulli",
            k as usize,
            BERNOULLI_CAP as usize,
        ));
    }
    Ok(bernoulli_table()[k as usize].clone())
}

/// Generalized binomial coefficient x(x−1)…(x−r+1)/r!.
pub fn binom_general(x: &Rational, r: u32) -> Rational {
    let mut acc = Rational::from(1);
    for i in 0..r {
        acc *= Rational::from(x - i);
        acc /= i + 1;
    }
    acc
}

/// Rising factorial x(x+1)…(x+q−1) = Γ(x+q)/Γ(x).
pub fn pochhammer(x: &Rational, q: u32) -> Rational {
    let mut acc = Rational::from(1);
    for i in 0..q {
        acc *= Rational::from(x + i);
    }
    acc
}

/// Γ(x+k)/Γ(x) for any integer offset `k`, including negative ones.
pub fn gamma_shift(x: &Rational, k: i64) -> Rational {
    if k >= 0 {
        pochhammer(x, k as u32)
    } else {
        // Γ(x−m)/Γ(x) = 1/((x−1)(x−2)…(x−m))
        let mut acc = Rational::from(1);
        for i in 1..=(-k) {
            acc /= Rational::from(x - i);
        }
        acc
    }
}

/// Integer binomial C(n, k).
pub fn binom_int(n: u32, k: u32) -> Integer {
    Integer::from(Integer::binomial_u(n, k))
}
