//! Generation of every coefficient family, their large-order approximants
//! and the embedded reference tables.
//!
//! a, b, d, c, q and K are exact; h and f are numeric.

pub mod asymptotic;
pub mod golden;
pub mod reversion;
mod series;
pub mod subdominant;
pub mod summation;
pub mod wkb;

use std::sync::OnceLock;

use rug::{Float, Rational};

use crate::arith::ExactCoeff;
use crate::error::{QwkbError, Result};

pub use asymptotic::{asym_a, asym_b};
pub use golden::{golden, GoldenRow, GoldenTable, GOLDEN_DIR_ENV};
pub use series::{horner_inverse, AsymSeries, Coeff, SeriesKind};
pub use subdominant::F_ORDER;

/// Highest order generated for the exact families.
pub const EXACT_CAP: usize = 40;
/// Highest order of the numeric H series (limited by d and b at [`EXACT_CAP`]).
pub const H_CAP: usize = 2 * EXACT_CAP;

fn check_cap(what: &'static str, n_max: usize, cap: usize) -> Result<()> {
    if n_max > cap {
        return Err(QwkbError::capacity(what, n_max, cap));
    }
    Ok(())
}

/// Exact implicit-series coefficients a_0..=a_{n_max}.
pub fn gen_a(n_max: usize) -> Result<AsymSeries> {
    check_cap("A", n_max, EXACT_CAP)?;
    Ok(AsymSeries::exact(SeriesKind::A, wkb::gen_a(n_max)))
}

/// Exact explicit-series coefficients b_0..=b_{n_max} by reversion.
pub fn gen_b_from_a(a: &AsymSeries, n_max: usize) -> Result<AsymSeries> {
    let a = a.exact_prefix(n_max)?;
    Ok(AsymSeries::exact(
        SeriesKind::B,
        reversion::invert(&a, n_max).b,
    ))
}

/// `b′_m = (4/3 − 2m) b_m`.
pub fn gen_bprime(b: &AsymSeries) -> AsymSeries {
    let coeffs = b
        .coeffs()
        .iter()
        .enumerate()
        .map(|(m, c)| {
            let w = Rational::from((4 - 6 * m as i64, 3));
            match c {
                Coeff::Exact(e) => Coeff::Exact(e.scale(&w)),
                Coeff::Numeric(x) => Coeff::Numeric(Float::with_val(x.prec(), x * &w)),
            }
        })
        .collect();
    AsymSeries::new(SeriesKind::Bprime, coeffs)
}

/// Exact subdominant exponent coefficients d_0..=d_{n_max}.
pub fn gen_d(a: &AsymSeries, b: &AsymSeries, n_max: usize) -> Result<AsymSeries> {
    let a = a.exact_prefix(n_max)?;
    let b = b.exact_prefix(n_max)?;
    Ok(AsymSeries::exact(
        SeriesKind::D,
        reversion::compose_d(&a, &b, n_max),
    ))
}

/// Numeric prefactor coefficients h_0..=h_{n_max} at `precision_bits`.
pub fn gen_h(a: &AsymSeries, n_max: usize, precision_bits: u32) -> Result<AsymSeries> {
    let need = n_max.div_ceil(2);
    a.check_order(need)?;
    let b = gen_b_from_a(a, need)?;
    let d = gen_d(a, &b, need)?;
    Ok(h_from(
        &b.values(precision_bits + 128),
        &d.values(precision_bits + 128),
        n_max,
        precision_bits,
    ))
}

fn h_from(b: &[Float], d: &[Float], n_max: usize, precision_bits: u32) -> AsymSeries {
    AsymSeries::numeric(
        SeriesKind::H,
        subdominant::gen_h_numeric(b, d, n_max, precision_bits),
    )
}

/// Euler–Maclaurin constants K_0..=K_{m_max}.
pub fn gen_k(m_max: usize) -> Result<Vec<Rational>> {
    summation::gen_k(m_max)
}

/// Exact sum-series coefficients c_0..=c_{n_max}.
pub fn gen_c(b: &AsymSeries, k: &[Rational], n_max: usize) -> Result<AsymSeries> {
    let b = b.exact_prefix(n_max)?;
    if k.len() <= n_max {
        return Err(QwkbError::capacity("K", n_max, k.len().saturating_sub(1)));
    }
    Ok(AsymSeries::exact(
        SeriesKind::C,
        summation::gen_c(&b, k, n_max),
    ))
}

/// Exact midpoint sum-series coefficients q_0..=q_{n_max}.
pub fn gen_q(b: &AsymSeries, n_max: usize) -> Result<AsymSeries> {
    let b = b.exact_prefix(n_max)?;
    Ok(AsymSeries::exact(
        SeriesKind::Q,
        summation::gen_q(&b, n_max)?,
    ))
}

/// Numeric f_0..=f_4 from the H series.
pub fn gen_f(h: &AsymSeries, precision_bits: u32) -> Result<AsymSeries> {
    h.check_order(F_ORDER)?;
    let hv = h.values(precision_bits + 64);
    Ok(AsymSeries::numeric(
        SeriesKind::F,
        subdominant::gen_f_numeric(&hv, precision_bits),
    ))
}

/// The exact families generated once to [`EXACT_CAP`] and shared.
#[derive(Debug)]
pub struct ExactFamilies {
    pub a: AsymSeries,
    pub b: AsymSeries,
    pub d: AsymSeries,
    pub k: Vec<Rational>,
    pub c: AsymSeries,
    pub q: AsymSeries,
}

/// Process-wide exact families (initialized on first use).
pub fn exact_families() -> &'static ExactFamilies {
    static CACHE: OnceLock<ExactFamilies> = OnceLock::new();
    CACHE.get_or_init(|| {
        let a_raw = wkb::gen_a(EXACT_CAP);
        let rev = reversion::invert(&a_raw, EXACT_CAP);
        let k = summation::gen_k(EXACT_CAP).expect("Bernoulli table covers the cap");
        let c = summation::gen_c(&rev.b, &k, EXACT_CAP);
        let q = summation::gen_q(&rev.b, EXACT_CAP).expect("Bernoulli table covers the cap");
        ExactFamilies {
            a: AsymSeries::exact(SeriesKind::A, a_raw),
            b: AsymSeries::exact(SeriesKind::B, rev.b),
            d: AsymSeries::exact(SeriesKind::D, rev.d),
            k,
            c: AsymSeries::exact(SeriesKind::C, c),
            q: AsymSeries::exact(SeriesKind::Q, q),
        }
    })
}

/// H to [`H_CAP`] from the shared exact families.
pub fn shared_h(precision_bits: u32) -> AsymSeries {
    let fam = exact_families();
    let work = precision_bits + 128;
    h_from(
        &fam.b.values(work),
        &fam.d.values(work),
        H_CAP,
        precision_bits,
    )
}

/// Exact `a_n` decomposed as `k s / (2^p l)` with `s ∈ {1, 2π²/γ⁴}`:
/// returns `(p, l, k)` with `l` odd.
pub fn a_table_form(a: &ExactCoeff) -> Option<(u32, rug::Integer, rug::Integer)> {
    let mut terms = a.terms();
    let (q, i, j) = terms.next()?;
    if terms.next().is_some() {
        return None;
    }
    let q = match (i, j) {
        (0, 0) => q.clone(),
        (2, -4) => Rational::from(q / 2),
        _ => return None,
    };
    let (num, mut den) = q.into_numer_denom();
    let p = den.find_one(0).unwrap_or(0);
    den >>= p;
    Some((p, den, num))
}

/// Ratio of the large-order approximant to the exact coefficient.
pub fn asym_ratio(kind: SeriesKind, n: usize, exact: &Float) -> Result<Float> {
    let prec = exact.prec();
    let approx = match kind {
        SeriesKind::A => asym_a(n, prec)?,
        SeriesKind::B => asym_b(n, prec)?,
        other => {
            return Err(QwkbError::UnsupportedStrategy {
                strategy: "asymptotic ratio",
                kind: other.name(),
            })
        }
    };
    Ok(approx / exact)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            gen_a(EXACT_CAP + 1),
            Err(QwkbError::Capacity { .. })
        ));
    }

    #[test]
    fn bprime_leading_terms() {
        let a = gen_a(2).unwrap();
        let b = gen_b_from_a(&a, 2).unwrap();
        let bp = gen_bprime(&b);
        assert_eq!(
            bp.coeff(0).unwrap().as_exact().unwrap(),
            &ExactCoeff::rational(Rational::from((4, 3)))
        );
        let b1 = b
            .coeff(1)
            .unwrap()
            .as_exact()
            .unwrap()
            .scale(&Rational::from((-2, 3)));
        assert_eq!(bp.coeff(1).unwrap().as_exact().unwrap(), &b1);
    }

    #[test]
    fn table_form_of_first_coefficients() {
        let a = wkb::gen_a(2);
        let (p, l, k) = a_table_form(&a[1]).unwrap();
        assert_eq!((p, l.to_i64().unwrap(), k.to_i64().unwrap()), (2, 1, -3));
        let (p, l, k) = a_table_form(&a[2]).unwrap();
        assert_eq!((p, l.to_i64().unwrap(), k.to_i64().unwrap()), (9, 1, 11));
    }

    #[test]
    fn first_prefactor_coefficient() {
        let a = gen_a(2).unwrap();
        let h = gen_h(&a, 2, 128).unwrap();
        let h1 = h.coeff(1).unwrap().value(128);
        let diff = Float::with_val(128, &h1 + Float::with_val(128, 1) / 6u32).abs();
        assert!(diff < Float::with_val(128, 1) >> 120);
    }
}
