//! Implicit WKB series `(ε/α)^{3/4} A[(2ε)^{3/2}] = n + 1/2`.
//!
//! The Riccati equation `w² − iħw' = P`, `P = 2E − x⁴`, is solved order by
//! order with `w = Σ (iħ)^k u_k`. Every `u_k` is a finite sum
//!
//! ```text
//! u_k = Σ_m κ_{k,m} · x^{3k−4m} · P^{1/2 − 3k/2 + m}
//! ```
//!
//! so the recursion runs entirely on rational `κ`. Closed-contour integrals
//! of `x^{2j} P^s` are Beta functions `B((2j+1)/4, s+1)`; dividing by the
//! leading-order integral leaves a rational times 1 (even orders) or
//! `Γ(3/4)²/Γ(1/4)² = 2π²/γ⁴` (odd orders).

use rug::Rational;

use crate::arith::{gamma_shift, ExactCoeff};

/// Coefficients κ_{k,m} of the Riccati expansion, `k = 0..=order`.
#[derive(Clone, Debug)]
pub struct RiccatiTerms {
    levels: Vec<Vec<Rational>>,
}

impl RiccatiTerms {
    pub fn generate(order: usize) -> Self {
        let mut levels: Vec<Vec<Rational>> = vec![vec![Rational::from(1)]];
        for n in 0..order {
            let next_len = (3 * (n + 1)) / 4 + 1;
            let mut next = vec![Rational::new(); next_len];
            // derivative of u_n divided by 2√P
            for (m, kappa) in levels[n].iter().enumerate() {
                if *kappa == 0 {
                    continue;
                }
                let a = 3 * n as i64 - 4 * m as i64;
                let s = Rational::from((1 - 3 * n as i64 + 2 * m as i64, 2));
                if a > 0 {
                    next[m + 1] += Rational::from(kappa * a) / 2;
                }
                next[m] -= Rational::from(kappa * &s) * 2;
            }
            // −(1/2√P) Σ_{j=1}^{n} u_j u_{n+1−j}
            for j in 1..=n {
                let (left, right) = (&levels[j], &levels[n + 1 - j]);
                for (m1, k1) in left.iter().enumerate() {
                    if *k1 == 0 {
                        continue;
                    }
                    for (m2, k2) in right.iter().enumerate() {
                        if *k2 == 0 {
                            continue;
                        }
                        next[m1 + m2] -= Rational::from(k1 * k2) / 2;
                    }
                }
            }
            levels.push(next);
        }
        RiccatiTerms { levels }
    }

    pub fn order(&self) -> usize {
        self.levels.len() - 1
    }

    /// κ_{k,m}; zero outside the populated range.
    pub fn kappa(&self, k: usize, m: usize) -> Rational {
        self.levels
            .get(k)
            .and_then(|l| l.get(m))
            .cloned()
            .unwrap_or_default()
    }

    pub fn level(&self, k: usize) -> &[Rational] {
        &self.levels[k]
    }

    /// κ_{k,m} in the real-valued sign convention `(−1)^⌈k/2⌉ κ_{k,m}`,
    /// which absorbs the phase of `(iħ)^k` into the coefficient.
    pub fn real_form(&self, k: usize, m: usize) -> Rational {
        let kappa = self.kappa(k, m);
        if k.div_ceil(2) % 2 == 1 {
            -kappa
        } else {
            kappa
        }
    }
}

/// Splits Γ(q) = Γ(base)·factor with base ∈ (0, 1].
fn gamma_split(q: &Rational) -> (Rational, Rational) {
    let floor = q.clone().floor();
    let mut base = Rational::from(q - &floor);
    let mut shift = floor.numer().to_i64().expect("small argument");
    if base == 0 {
        base = Rational::from(1);
        shift -= 1;
    }
    let factor = gamma_shift(&base, shift);
    (base, factor)
}

/// `B((2j+1)/4, s+1) / B(1/4, 3/2)` for `2j = 6k − 4m`, `s = 1/2 − 3k + m`,
/// as (rational part, whether the 2π²/γ⁴ factor is present).
fn contour_ratio(k: usize, m: usize) -> (Rational, bool) {
    let k = k as i64;
    let m = m as i64;
    let a = Rational::from((6 * k - 4 * m + 1, 4));
    let b = Rational::from((3 - 6 * k + 2 * m, 2));
    let ab = Rational::from(&a + &b);
    let (base_a, fa) = gamma_split(&a);
    let (_, fb) = gamma_split(&b);
    let (_, fab) = gamma_split(&ab);
    // reference B(1/4, 3/2): Γ(1/4)·Γ(1/2)(1/2) / (Γ(3/4)(3/4))
    let reference = Rational::from((1, 2)) / Rational::from((3, 4));
    let rational = fa * fb / fab / reference;
    let odd = *base_a.numer() == 3 && *base_a.denom() == 4;
    (rational, odd)
}

/// Exact implicit-series coefficients a_0..=a_{n_max}.
pub fn gen_a(n_max: usize) -> Vec<ExactCoeff> {
    let riccati = RiccatiTerms::generate(2 * n_max);
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(ExactCoeff::one());
    for k in 1..=n_max {
        let mut rational = Rational::new();
        let mut odd = None;
        for (m, kappa) in riccati.level(2 * k).iter().enumerate() {
            if *kappa == 0 {
                continue;
            }
            let (r, is_odd) = contour_ratio(k, m);
            debug_assert!(odd.is_none_or(|o| o == is_odd));
            odd = Some(is_odd);
            rational += Rational::from(kappa * &r);
        }
        // (iħ)^{2k} = (−ħ²)^k
        if k % 2 == 1 {
            rational = -rational;
        }
        let coeff = if k % 2 == 1 {
            // 2π²/γ⁴
            ExactCoeff::monomial(rational * 2, 2, -4)
        } else {
            ExactCoeff::rational(rational)
        };
        out.push(coeff);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_riccati_levels() {
        let r = RiccatiTerms::generate(3);
        // u_1 = −x³/P
        assert_eq!(r.level(1), &[Rational::from(-1)]);
        // u_2 = −(5/2) x⁶ P^{-5/2} − (3/2) x² P^{-3/2}
        assert_eq!(
            r.level(2),
            &[Rational::from((-5, 2)), Rational::from((-3, 2))]
        );
    }

    #[test]
    fn leading_coefficients() {
        let a = gen_a(2);
        assert_eq!(a[0], ExactCoeff::one());
        assert_eq!(a[1], ExactCoeff::monomial(Rational::from((-3, 2)), 2, -4));
        assert_eq!(a[2], ExactCoeff::rational(Rational::from((11, 512))));
    }

    #[test]
    fn contour_ratio_is_one_at_leading_order() {
        assert_eq!(contour_ratio(0, 0), (Rational::from(1), false));
    }
}
