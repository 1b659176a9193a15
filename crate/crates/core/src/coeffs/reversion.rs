//! Order-by-order inversion of the implicit WKB series and the composition
//! that produces the subdominant exponent series D.
//!
//! With `t = 1/z²` and `ε = α z^{4/3} B(t)`, the implicit series becomes
//!
//! ```text
//! Σ_m â_m t^m B(t)^{3/4 − 3m/2} = 1,      â_m = a_m (γ⁴ / 18π³)^m
//! ```
//!
//! since `(2α)^{3/2} = 18π³/γ⁴`. Flipping the sign of `(2ε)^{3/2}` in the
//! same sum gives `D(t) = Σ_m (−1)^m â_m t^m B^{3/4 − 3m/2}`.

use rug::Rational;

use crate::arith::ExactCoeff;

/// `â_m`: the implicit coefficients rescaled to the `t = 1/z²` variable.
pub fn rescaled_a(a: &[ExactCoeff]) -> Vec<ExactCoeff> {
    let mut scale = Rational::from(1);
    a.iter()
        .enumerate()
        .map(|(m, am)| {
            let out = am.shift(-3 * m as i32, 4 * m as i32).scale(&scale);
            scale /= 18;
            out
        })
        .collect()
}

fn exponent(m: usize) -> Rational {
    Rational::from((3 - 6 * m as i64, 4))
}

/// Coefficient `j ≥ 1` of `B^p` (B₀ = 1) by the J. C. P. Miller recurrence,
/// omitting the `k = skip` term when requested.
fn miller_term(
    p: &Rational,
    b: &[ExactCoeff],
    powers: &[ExactCoeff],
    j: usize,
    skip: Option<usize>,
) -> ExactCoeff {
    let mut acc = ExactCoeff::zero();
    let p1 = Rational::from(p + 1);
    for k in 1..=j {
        if Some(k) == skip {
            continue;
        }
        let weight = Rational::from(&p1 * k as u32) - j as u32;
        if weight == 0 {
            continue;
        }
        let prod = &b[k] * &powers[j - k];
        acc += &prod.scale(&weight);
    }
    acc.scale(&Rational::from((1, j as u32)))
}

/// Output of [`invert`]: explicit coefficients b and subdominant exponent d.
#[derive(Clone, Debug)]
pub struct Reversion {
    pub b: Vec<ExactCoeff>,
    pub d: Vec<ExactCoeff>,
}

/// Inverts the implicit series through order `n_max` (exact arithmetic).
///
/// `a` must hold at least `n_max + 1` coefficients.
pub fn invert(a: &[ExactCoeff], n_max: usize) -> Reversion {
    assert!(a.len() > n_max, "implicit series too short for inversion");
    let ahat = rescaled_a(&a[..=n_max]);
    // powers[m] holds the coefficients of B^{3/4 − 3m/2}
    let mut powers: Vec<Vec<ExactCoeff>> = vec![vec![ExactCoeff::one()]; n_max + 1];
    let mut b = vec![ExactCoeff::one()];
    let p0 = exponent(0);
    for n in 1..=n_max {
        for (m, pm) in powers.iter_mut().enumerate().take(n + 1).skip(1) {
            let j = n - m;
            if j >= 1 && pm.len() == j {
                let next = miller_term(&exponent(m), &b, pm, j, None);
                pm.push(next);
            }
        }
        let rest = miller_term(&p0, &b, &powers[0], n, Some(n));
        let mut total = rest.clone();
        for m in 1..=n {
            total.add_product(&ahat[m], &powers[m][n - m]);
        }
        let bn = total.scale(&(-1 / p0.clone()));
        let mut c0n = rest;
        c0n += &bn.scale(&p0);
        powers[0].push(c0n);
        b.push(bn);
    }
    let mut d = vec![ExactCoeff::one()];
    for n in 1..=n_max {
        let mut dn = ExactCoeff::zero();
        for m in 0..=n {
            let term = &ahat[m] * &powers[m][n - m];
            if m % 2 == 1 {
                dn -= &term;
            } else {
                dn += &term;
            }
        }
        d.push(dn);
    }
    Reversion { b, d }
}

/// Coefficients of `B^p` through `order` (B₀ = 1).
pub fn power_series(b: &[ExactCoeff], p: &Rational, order: usize) -> Vec<ExactCoeff> {
    let mut out = vec![ExactCoeff::one()];
    for j in 1..=order {
        let next = miller_term(p, b, &out, j, None);
        out.push(next);
    }
    out
}

/// `d_n = Σ_m (−1)^m â_m [B^{3/4 − 3m/2}]_{n−m}` from given a and b.
pub fn compose_d(a: &[ExactCoeff], b: &[ExactCoeff], n_max: usize) -> Vec<ExactCoeff> {
    assert!(
        a.len() > n_max && b.len() > n_max,
        "series too short for composition"
    );
    let ahat = rescaled_a(&a[..=n_max]);
    let mut d = vec![ExactCoeff::zero(); n_max + 1];
    for (m, am) in ahat.iter().enumerate() {
        let pw = power_series(b, &exponent(m), n_max - m);
        for (j, c) in pw.iter().enumerate() {
            let term = am * c;
            if m % 2 == 1 {
                d[m + j] -= &term;
            } else {
                d[m + j] += &term;
            }
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::binom_general;
    use crate::coeffs::wkb::gen_a;

    /// Naive truncated product, independent of the Miller recurrence.
    fn mul(x: &[ExactCoeff], y: &[ExactCoeff], order: usize) -> Vec<ExactCoeff> {
        let mut out = vec![ExactCoeff::zero(); order + 1];
        for (i, xi) in x.iter().enumerate().take(order + 1) {
            for (j, yj) in y.iter().enumerate().take(order + 1 - i) {
                out[i + j].add_product(xi, yj);
            }
        }
        out
    }

    /// B^p through the binomial expansion Σ_j C(p, j)(B − 1)^j.
    fn binomial_power(b: &[ExactCoeff], p: &Rational, order: usize) -> Vec<ExactCoeff> {
        let mut u = b[..=order].to_vec();
        u[0] = ExactCoeff::zero();
        let mut uj = vec![ExactCoeff::zero(); order + 1];
        uj[0] = ExactCoeff::one();
        let mut out = vec![ExactCoeff::zero(); order + 1];
        for j in 0..=order {
            let c = binom_general(p, j as u32);
            for (o, t) in out.iter_mut().zip(&uj) {
                *o += &t.scale(&c);
            }
            uj = mul(&uj, &u, order);
        }
        out
    }

    #[test]
    fn first_explicit_coefficient_is_one_over_nine_pi() {
        let a = gen_a(3);
        let r = invert(&a, 3);
        assert_eq!(r.b[1], ExactCoeff::monomial(Rational::from((1, 9)), -1, 0));
        // d₁ = 1/(6π)
        assert_eq!(r.d[1], ExactCoeff::monomial(Rational::from((1, 6)), -1, 0));
    }

    #[test]
    fn standalone_composition_agrees_with_incremental() {
        let a = gen_a(12);
        let r = invert(&a, 12);
        assert_eq!(compose_d(&a, &r.b, 12), r.d);
        let p = exponent(3);
        assert_eq!(power_series(&r.b, &p, 8), binomial_power(&r.b, &p, 8));
    }

    #[test]
    fn reversion_round_trip_is_exact() {
        let n_max = 10;
        let a = gen_a(n_max);
        let r = invert(&a, n_max);
        let ahat = rescaled_a(&a);
        let mut total = vec![ExactCoeff::zero(); n_max + 1];
        for m in 0..=n_max {
            let pw = binomial_power(&r.b, &exponent(m), n_max - m);
            for (j, c) in pw.iter().enumerate() {
                total[m + j].add_product(&ahat[m], c);
            }
        }
        assert_eq!(total[0], ExactCoeff::one());
        for (n, c) in total.iter().enumerate().skip(1) {
            assert!(c.is_zero(), "residual at order {n}: {c}");
        }
    }
}
