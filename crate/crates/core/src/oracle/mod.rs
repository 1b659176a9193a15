//! Independent high-precision spectrum of `−(1/2)d²/dx² + x⁴/2`.

mod cache;
pub mod shooting;
mod solver;

use std::fmt;

use rug::ops::Pow;
use rug::Float;

use crate::arith::parse_decimal;
use crate::coeffs::golden;
use crate::error::{QwkbError, Result};

pub use cache::{config_digest, load_cached, solve_spectrum_cached, store_cached};

/// Where a spectrum came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Embedded,
    Computed,
    CrossChecked,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Embedded => "embedded",
            Provenance::Computed => "computed",
            Provenance::CrossChecked => "cross-checked",
        })
    }
}

/// Ordered eigenvalues with per-entry verified digit counts.
#[derive(Clone, Debug)]
pub struct ReferenceSpectrum {
    eigenvalues: Vec<Float>,
    verified_digits: Vec<u32>,
    provenance: Provenance,
}

impl ReferenceSpectrum {
    pub fn new(
        eigenvalues: Vec<Float>,
        verified_digits: Vec<u32>,
        provenance: Provenance,
    ) -> Result<Self> {
        if eigenvalues.len() != verified_digits.len() {
            return Err(QwkbError::Config(
                "one digit count per eigenvalue required".into(),
            ));
        }
        if eigenvalues.windows(2).any(|w| w[1] <= w[0]) {
            return Err(QwkbError::Config(
                "eigenvalues must be strictly increasing".into(),
            ));
        }
        Ok(ReferenceSpectrum {
            eigenvalues,
            verified_digits,
            provenance,
        })
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn eigenvalues(&self) -> &[Float] {
        &self.eigenvalues
    }

    pub fn verified_digits(&self) -> &[u32] {
        &self.verified_digits
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn value(&self, level: usize) -> Result<&Float> {
        self.eigenvalues.get(level).ok_or(QwkbError::Range {
            index: level,
            len: self.len(),
        })
    }

    /// `E(N) = Σ_{n<N} ε_n` (zero for N = 0).
    pub fn partial_sum(&self, count: usize) -> Result<Float> {
        if count > self.len() {
            return Err(QwkbError::Range {
                index: count - 1,
                len: self.len(),
            });
        }
        let prec = self.eigenvalues.first().map_or(64, |v| v.prec());
        let mut acc = Float::new(prec);
        for v in &self.eigenvalues[..count] {
            acc += v;
        }
        Ok(acc)
    }
}

/// Precision at which the embedded table is parsed.
const EMBEDDED_BITS: u32 = 256;

/// The tabulated 20 lowest eigenvalues (41 decimals).
pub fn embedded_reference() -> ReferenceSpectrum {
    let table = golden("S1").expect("S1 is embedded");
    let values = table
        .rows
        .iter()
        .map(|r| parse_decimal(&r.fields[0], EMBEDDED_BITS).expect("embedded values parse"))
        .collect::<Vec<_>>();
    let digits = table
        .rows
        .iter()
        .map(|r| crate::arith::significant_digits(&r.fields[0]) as u32)
        .collect();
    ReferenceSpectrum::new(values, digits, Provenance::Embedded).expect("embedded table is ordered")
}

/// Whether an error refers to a single eigenvalue or a sum of the lowest N.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    Eigenvalue,
    Sum,
}

/// `approximate − exact`; for sums `index` is the particle count N.
pub fn error_of(
    value: &Float,
    index: usize,
    reference: &ReferenceSpectrum,
    kind: ErrorKind,
) -> Result<Float> {
    let exact = match kind {
        ErrorKind::Eigenvalue => reference.value(index)?.clone(),
        ErrorKind::Sum => reference.partial_sum(index)?,
    };
    let prec = value.prec().max(exact.prec());
    Ok(Float::with_val(prec, value - &exact))
}

/// Parameters of the variational solve.
#[derive(Clone, Debug)]
pub struct OracleConfig {
    /// Basis states per parity block.
    pub basis_size: usize,
    /// Harmonic-oscillator frequency of the basis.
    pub basis_frequency: Float,
    pub precision_bits: u32,
    pub target_levels: usize,
    /// Largest accepted change between the base and the enlarged basis.
    pub convergence_tolerance: Float,
}

impl OracleConfig {
    /// 20 levels to better than 10⁻⁴⁰ at 512 bits.
    pub fn table_grade() -> Self {
        OracleConfig {
            basis_size: 240,
            basis_frequency: Float::with_val(64, 6),
            precision_bits: 512,
            target_levels: 20,
            convergence_tolerance: Float::with_val(512, Float::parse("1e-44").expect("literal")),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.target_levels == 0 {
            return Err(QwkbError::Config("at least one level required".into()));
        }
        if self.basis_size <= 4 * self.target_levels {
            return Err(QwkbError::Config(format!(
                "basis size {} must exceed 4 × target levels ({})",
                self.basis_size, self.target_levels
            )));
        }
        if self.basis_frequency <= 0 {
            return Err(QwkbError::Config("basis frequency must be positive".into()));
        }
        if self.precision_bits < crate::arith::MIN_PRECISION_BITS {
            return Err(QwkbError::Config("precision below minimum".into()));
        }
        if self.convergence_tolerance <= 0 {
            return Err(QwkbError::Config("tolerance must be positive".into()));
        }
        Ok(())
    }
}

/// Bisection iteration cap per eigenvalue.
const MAX_BISECTION: usize = 8000;

/// Lowest `target_levels` Ritz values for a basis of `size` states per parity.
pub fn ritz_values(config: &OracleConfig, size: usize) -> Result<Vec<Float>> {
    let prec = config.precision_bits;
    let omega = Float::with_val(prec, &config.basis_frequency);
    // bisect to the last bit so that basis sizes compare to rounding level
    let tol = Float::new(prec);
    let per_parity = [config.target_levels.div_ceil(2), config.target_levels / 2];
    let mut blocks = Vec::new();
    for (parity, &count) in per_parity.iter().enumerate() {
        if count == 0 {
            blocks.push(Vec::new());
            continue;
        }
        let block = solver::parity_block(parity, size, &omega, prec);
        let (d, e) = solver::tridiagonalize(&block, prec);
        let ev = solver::lowest_eigenvalues(&d, &e, count, &tol, MAX_BISECTION).ok_or(
            QwkbError::Convergence {
                iterations: MAX_BISECTION,
                achieved_digits: 0,
            },
        )?;
        blocks.push(ev);
    }
    // interleave: level 2i is even, 2i+1 odd
    let mut out = Vec::with_capacity(config.target_levels);
    for level in 0..config.target_levels {
        out.push(blocks[level % 2][level / 2].clone());
    }
    Ok(out)
}

fn digits_from_change(change: &Float) -> u32 {
    if change.is_zero() {
        return u32::MAX;
    }
    let log = change.clone().abs().log10().to_f64();
    (-log).floor().max(0.0) as u32
}

/// Variational spectrum, certified by agreement with a basis 25% larger.
pub fn solve_spectrum(config: &OracleConfig) -> Result<ReferenceSpectrum> {
    config.validate()?;
    let base = ritz_values(config, config.basis_size)?;
    let larger = ritz_values(config, config.basis_size + config.basis_size.div_ceil(4))?;
    let prec = config.precision_bits;
    let mut worst = Float::new(prec);
    let mut digits = Vec::with_capacity(base.len());
    for (a, b) in base.iter().zip(&larger) {
        let change = Float::with_val(prec, a - b).abs();
        digits.push(
            digits_from_change(&change).min((prec as f64 * std::f64::consts::LOG10_2) as u32),
        );
        if change > worst {
            worst = change;
        }
    }
    if worst > config.convergence_tolerance {
        return Err(QwkbError::Convergence {
            iterations: config.basis_size,
            achieved_digits: digits_from_change(&worst),
        });
    }
    ReferenceSpectrum::new(larger, digits, Provenance::Computed)
}

/// Confirms levels `0..levels` of `spectrum` by shooting to `digits` digits;
/// returns the largest discrepancy.
pub fn shooting_check(spectrum: &ReferenceSpectrum, levels: usize, digits: u32) -> Result<Float> {
    let prec = 1024;
    let x = Float::with_val(prec, 6.5);
    let tol = Float::with_val(prec, 10).pow(-(digits as i32 + 5));
    let width = Float::with_val(prec, 10).pow(-(digits as i32 - 10).max(1));
    let mut worst = Float::new(prec);
    for level in 0..levels {
        let guess = Float::with_val(prec, spectrum.value(level)?);
        let lo = Float::with_val(prec, &guess - &width);
        let hi = Float::with_val(prec, &guess + &width);
        let e = shooting::refine(&lo, &hi, &x, level % 2, &tol).ok_or(QwkbError::Convergence {
            iterations: 0,
            achieved_digits: 0,
        })?;
        let diff = Float::with_val(prec, &e - &guess).abs();
        if diff > worst {
            worst = diff;
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_has_twenty_increasing_levels() {
        let r = embedded_reference();
        assert_eq!(r.len(), 20);
        assert!(r.eigenvalues().windows(2).all(|w| w[0] < w[1]));
        assert!(r.verified_digits().iter().all(|&d| d >= 41));
        let row10 = r.value(10).unwrap().to_f64();
        assert!((row10 - 25.12812725834146).abs() < 1e-12);
    }

    #[test]
    fn errors_against_reference() {
        let r = embedded_reference();
        let e0 = r.value(0).unwrap().clone();
        assert!(error_of(&e0, 0, &r, ErrorKind::Eigenvalue)
            .unwrap()
            .is_zero());
        let s2 = r.partial_sum(2).unwrap();
        let expect = parse_decimal("2.43001756014278853421", 256).unwrap();
        assert!(Float::with_val(256, &s2 - &expect).abs() < 1e-20);
        assert!(matches!(r.value(20), Err(QwkbError::Range { .. })));
        assert!(r.partial_sum(0).unwrap().is_zero());
    }

    #[test]
    fn config_validation() {
        let mut c = OracleConfig::table_grade();
        c.basis_size = 80;
        assert!(c.validate().is_err());
    }

    #[test]
    fn small_basis_ground_state() {
        let c = OracleConfig {
            basis_size: 60,
            basis_frequency: Float::with_val(64, 3),
            precision_bits: 192,
            target_levels: 4,
            convergence_tolerance: Float::with_val(192, 1e-12),
        };
        let s = solve_spectrum(&c).unwrap();
        let e0 = s.value(0).unwrap().to_f64();
        assert!((e0 - 0.530181045242091).abs() < 1e-12);
    }
}
