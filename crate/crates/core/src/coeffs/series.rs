use std::fmt;

use rug::Float;

use crate::arith::ExactCoeff;
use crate::error::{QwkbError, Result};

/// The named coefficient families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SeriesKind {
    A,
    B,
    Bprime,
    D,
    H,
    C,
    Q,
    F,
}

impl SeriesKind {
    pub fn name(self) -> &'static str {
        match self {
            SeriesKind::A => "A",
            SeriesKind::B => "B",
            SeriesKind::Bprime => "Bprime",
            SeriesKind::D => "D",
            SeriesKind::H => "H",
            SeriesKind::C => "C",
            SeriesKind::Q => "Q",
            SeriesKind::F => "F",
        }
    }
}

impl fmt::Display for SeriesKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One coefficient, exact where the generator keeps it exact.
#[derive(Clone, Debug, PartialEq)]
pub enum Coeff {
    Exact(ExactCoeff),
    Numeric(Float),
}

impl Coeff {
    /// Value rounded to `precision_bits`.
    pub fn value(&self, precision_bits: u32) -> Float {
        match self {
            Coeff::Exact(e) => e.eval(precision_bits),
            Coeff::Numeric(x) => Float::with_val(precision_bits, x),
        }
    }

    pub fn as_exact(&self) -> Option<&ExactCoeff> {
        match self {
            Coeff::Exact(e) => Some(e),
            Coeff::Numeric(_) => None,
        }
    }
}

/// Coefficients of one asymptotic series, indexed from 0.
#[derive(Clone, Debug)]
pub struct AsymSeries {
    kind: SeriesKind,
    coeffs: Vec<Coeff>,
}

impl AsymSeries {
    pub fn new(kind: SeriesKind, coeffs: Vec<Coeff>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a series holds at least its leading coefficient"
        );
        AsymSeries { kind, coeffs }
    }

    pub fn exact(kind: SeriesKind, coeffs: Vec<ExactCoeff>) -> Self {
        Self::new(kind, coeffs.into_iter().map(Coeff::Exact).collect())
    }

    pub fn numeric(kind: SeriesKind, coeffs: Vec<Float>) -> Self {
        Self::new(kind, coeffs.into_iter().map(Coeff::Numeric).collect())
    }

    pub fn kind(&self) -> SeriesKind {
        self.kind
    }

    pub fn max_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, m: usize) -> Result<&Coeff> {
        self.coeffs
            .get(m)
            .ok_or_else(|| QwkbError::capacity(self.kind.name(), m, self.max_order()))
    }

    pub fn coeffs(&self) -> &[Coeff] {
        &self.coeffs
    }

    /// Exact coefficients through `order`, if every one of them is exact.
    pub fn exact_prefix(&self, order: usize) -> Result<Vec<ExactCoeff>> {
        self.check_order(order)?;
        self.coeffs[..=order]
            .iter()
            .map(|c| {
                c.as_exact().cloned().ok_or_else(|| {
                    QwkbError::Config(format!("series {} is not held exactly", self.kind))
                })
            })
            .collect()
    }

    /// All coefficient values at `precision_bits`.
    pub fn values(&self, precision_bits: u32) -> Vec<Float> {
        self.coeffs
            .iter()
            .map(|c| c.value(precision_bits))
            .collect()
    }

    pub fn check_order(&self, order: usize) -> Result<()> {
        if order > self.max_order() {
            return Err(QwkbError::capacity(
                self.kind.name(),
                order,
                self.max_order(),
            ));
        }
        Ok(())
    }

    /// `Σ_{m≤order} c_m / y^m`.
    pub fn eval(&self, order: usize, y: &Float) -> Result<Float> {
        self.check_order(order)?;
        let prec = y.prec();
        let values: Vec<Float> = self.coeffs[..=order]
            .iter()
            .map(|c| c.value(prec))
            .collect();
        Ok(horner_inverse(&values, y))
    }
}

/// `Σ_m c_m / y^m` by Horner's rule in `1/y`, at the precision of `y`.
pub fn horner_inverse(coeffs: &[Float], y: &Float) -> Float {
    let prec = y.prec();
    let inv = Float::with_val(prec, y.recip_ref());
    let mut acc = Float::with_val(prec, 0);
    for c in coeffs.iter().rev() {
        acc *= &inv;
        acc += c;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::Rational;

    #[test]
    fn evaluation_matches_term_accumulation() {
        let s = AsymSeries::exact(
            SeriesKind::B,
            vec![
                ExactCoeff::one(),
                ExactCoeff::rational(Rational::from((1, 3))),
                ExactCoeff::rational(Rational::from((-2, 7))),
            ],
        );
        let y = Float::with_val(128, 2.25);
        let v = s.eval(2, &y).unwrap();
        let mut direct = Float::with_val(128, 1);
        direct += Float::with_val(128, 1) / 3u32 / &y;
        direct -= Float::with_val(128, 2) / 7u32 / Float::with_val(128, &y * &y);
        let diff = Float::with_val(128, &v - &direct).abs();
        assert!(diff < Float::with_val(128, 1) >> 120);
        assert_eq!(s.eval(0, &y).unwrap(), 1);
        assert!(matches!(s.eval(3, &y), Err(QwkbError::Capacity { .. })));
    }
}
