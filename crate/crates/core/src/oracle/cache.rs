//! On-disk cache of computed spectra, keyed by a digest of the config.
//!
//! Files use the golden-table row format: `level<TAB>value<TAB>digits`.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use super::{solve_spectrum, OracleConfig, Provenance, ReferenceSpectrum};
use crate::arith::{parse_decimal, to_sci};
use crate::error::{QwkbError, Result};

/// Hex digest identifying a solver configuration.
pub fn config_digest(config: &OracleConfig) -> String {
    let mut h = Sha256::new();
    h.update(format!(
        "basis={};freq={};bits={};levels={};tol={}",
        config.basis_size,
        to_sci(&config.basis_frequency, 30),
        config.precision_bits,
        config.target_levels,
        to_sci(&config.convergence_tolerance, 10),
    ));
    hex::encode(&h.finalize()[..12])
}

fn cache_path(dir: &Path, config: &OracleConfig) -> PathBuf {
    dir.join(format!("spectrum-{}.tsv", config_digest(config)))
}

fn value_digits(config: &OracleConfig) -> usize {
    (config.precision_bits as f64 * std::f64::consts::LOG10_2) as usize
}

/// Reads a cached spectrum for `config`, if present.
pub fn load_cached(dir: &Path, config: &OracleConfig) -> Result<Option<ReferenceSpectrum>> {
    let path = cache_path(dir, config);
    if !path.exists() {
        return Ok(None);
    }
    let text = std::fs::read_to_string(&path)?;
    let mut values = Vec::new();
    let mut digits = Vec::new();
    for line in text
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
    {
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 3 {
            return Err(QwkbError::Parse(format!(
                "{}: malformed row",
                path.display()
            )));
        }
        values.push(parse_decimal(fields[1], config.precision_bits)?);
        digits.push(
            fields[2]
                .parse()
                .map_err(|_| QwkbError::Parse(format!("{}: bad digit count", path.display())))?,
        );
    }
    if values.len() != config.target_levels {
        return Ok(None);
    }
    Ok(Some(ReferenceSpectrum::new(
        values,
        digits,
        Provenance::Computed,
    )?))
}

/// Writes `spectrum` to the cache slot for `config`.
pub fn store_cached(
    dir: &Path,
    config: &OracleConfig,
    spectrum: &ReferenceSpectrum,
) -> Result<PathBuf> {
    std::fs::create_dir_all(dir)?;
    let mut text = format!("# spectrum for config {}\n", config_digest(config));
    let digits = value_digits(config);
    for (n, (v, d)) in spectrum
        .eigenvalues()
        .iter()
        .zip(spectrum.verified_digits())
        .enumerate()
    {
        let _ = writeln!(text, "{n}\t{}\t{d}", to_sci(v, digits));
    }
    let path = cache_path(dir, config);
    std::fs::write(&path, text)?;
    Ok(path)
}

/// [`solve_spectrum`] with the result cached under `dir`.
pub fn solve_spectrum_cached(config: &OracleConfig, dir: &Path) -> Result<ReferenceSpectrum> {
    if let Some(s) = load_cached(dir, config)? {
        return Ok(s);
    }
    let s = solve_spectrum(config)?;
    store_cached(dir, config, &s)?;
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::Float;

    #[test]
    fn round_trip_through_cache() {
        let dir = std::env::temp_dir().join(format!("qwkb-cache-test-{}", std::process::id()));
        let config = OracleConfig {
            basis_size: 40,
            basis_frequency: Float::with_val(64, 3),
            precision_bits: 128,
            target_levels: 4,
            convergence_tolerance: Float::with_val(128, 1e-6),
        };
        let first = solve_spectrum_cached(&config, &dir).unwrap();
        let second = load_cached(&dir, &config).unwrap().unwrap();
        for (a, b) in first.eigenvalues().iter().zip(second.eigenvalues()) {
            let d = Float::with_val(128, a - b).abs();
            assert!(d < 1e-30);
        }
        let _ = std::fs::remove_dir_all(&dir);
    }
}
