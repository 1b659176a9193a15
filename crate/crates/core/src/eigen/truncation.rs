//! Choosing where to truncate an asymptotic series.

use std::fmt;
use std::sync::Arc;

use rug::Float;

use crate::coeffs::{AsymSeries, SeriesKind};
use crate::error::{QwkbError, Result};
use crate::oracle::ReferenceSpectrum;

/// How to pick the truncation order.
#[derive(Clone, Debug)]
pub enum TruncationStrategy {
    /// Order with the least error against a reference spectrum.
    Empirical(Arc<ReferenceSpectrum>),
    /// Order of the smallest addition `|c_m / y^m|`.
    LeastAddition,
    /// Large-order estimate `A(n) = ⌊1 + (π/√2)(n + 1/2)⌋` (B series only).
    Asymptotic,
}

impl TruncationStrategy {
    pub fn name(&self) -> &'static str {
        match self {
            TruncationStrategy::Empirical(_) => "empirical",
            TruncationStrategy::LeastAddition => "least",
            TruncationStrategy::Asymptotic => "asym",
        }
    }
}

/// A chosen order; `at_cap` marks a least-addition scan whose additions were
/// still decreasing at the last available coefficient.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Truncation {
    pub order: usize,
    pub at_cap: bool,
}

impl fmt::Display for Truncation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.order)?;
        if self.at_cap {
            write!(f, " (cap)")?;
        }
        Ok(())
    }
}

/// Magnitudes `|c_m / y^m|` for `m = 0..=max_order`.
pub fn additions(series: &AsymSeries, y: &Float) -> Vec<Float> {
    let prec = y.prec();
    let inv = Float::with_val(prec, y.recip_ref());
    let mut power = Float::with_val(prec, 1);
    series
        .values(prec)
        .into_iter()
        .map(|c| {
            let t = Float::with_val(prec, &c * &power).abs();
            power *= &inv;
            t
        })
        .collect()
}

fn argmin_over(terms: &[Float], candidates: impl Iterator<Item = usize>) -> Option<usize> {
    let mut best: Option<usize> = None;
    for m in candidates {
        // strict comparison keeps the smaller m on ties
        if best.is_none_or(|b| terms[m] < terms[b]) {
            best = Some(m);
        }
    }
    best
}

/// Smallest addition over all available orders `m ≥ 1`.
///
/// The minimum is global over the available coefficients: the additions of
/// the subdominant prefactor series can dip, rise and dip lower again before
/// diverging, so the first local minimum is not the least addition.
pub fn least_addition(series: &AsymSeries, y: &Float) -> Truncation {
    let terms = additions(series, y);
    least_of(&terms, 1..terms.len())
}

/// Smallest addition restricted to even orders `m ≥ 2`.
pub fn least_even_addition(series: &AsymSeries, y: &Float) -> Truncation {
    let terms = additions(series, y);
    least_of(&terms, (2..terms.len()).step_by(2))
}

fn least_of(terms: &[Float], candidates: impl Iterator<Item = usize> + Clone) -> Truncation {
    let last = candidates.clone().last().unwrap_or(0);
    let order = argmin_over(terms, candidates).unwrap_or(0);
    Truncation {
        order,
        at_cap: order == last && order > 0,
    }
}

/// `A(n) = ⌊1 + (π/√2)(n + 1/2)⌋`.
pub fn asymptotic_order(n: usize) -> usize {
    let prec = 128;
    let pi = Float::with_val(prec, rug::float::Constant::Pi);
    let v = pi / Float::with_val(prec, 2).sqrt() * Float::with_val(prec, n as f64 + 0.5) + 1u32;
    v.floor().to_f64() as usize
}

/// Order in `0..=max_order` whose evaluation lies closest to `reference`
/// (ties to the smaller order).
pub fn empirical_order(
    max_order: usize,
    reference: &Float,
    evaluate: &dyn Fn(usize) -> Result<Float>,
) -> Result<usize> {
    let mut best: Option<(usize, Float)> = None;
    for m in 0..=max_order {
        let v = evaluate(m)?;
        let err = Float::with_val(v.prec(), &v - reference).abs();
        if best.as_ref().is_none_or(|(_, e)| err < *e) {
            best = Some((m, err));
        }
    }
    Ok(best.map(|(m, _)| m).unwrap_or(0))
}

/// Dispatches on the strategy.
///
/// `level` is required for `Asymptotic` and `Empirical`; `Empirical` also
/// requires an evaluator returning the truncated approximation at order `m`.
pub fn truncation_order(
    series: &AsymSeries,
    y: &Float,
    strategy: &TruncationStrategy,
    level: Option<usize>,
    evaluator: Option<&dyn Fn(usize) -> Result<Float>>,
) -> Result<Truncation> {
    match strategy {
        TruncationStrategy::LeastAddition => Ok(least_addition(series, y)),
        TruncationStrategy::Asymptotic => {
            if series.kind() != SeriesKind::B {
                return Err(QwkbError::UnsupportedStrategy {
                    strategy: "asymptotic",
                    kind: series.kind().name(),
                });
            }
            let n = level
                .ok_or_else(|| QwkbError::Config("asymptotic truncation needs a level".into()))?;
            let order = asymptotic_order(n);
            series.check_order(order)?;
            Ok(Truncation {
                order,
                at_cap: false,
            })
        }
        TruncationStrategy::Empirical(reference) => {
            let n = level
                .ok_or_else(|| QwkbError::Config("empirical truncation needs a level".into()))?;
            let evaluate = evaluator.ok_or_else(|| {
                QwkbError::Config("empirical truncation needs an evaluator".into())
            })?;
            let exact = reference.value(n)?;
            let order = empirical_order(series.max_order(), exact, evaluate)?;
            Ok(Truncation {
                order,
                at_cap: false,
            })
        }
    }
}
