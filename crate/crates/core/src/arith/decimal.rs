use rug::ops::Pow;
use rug::Float;

use crate::error::{QwkbError, Result};

/// Renders `x` in scientific notation with `digits` significant digits,
/// rounded to nearest (ties to even), e.g. `-3.5368e-02`.
pub fn to_sci(x: &Float, digits: usize) -> String {
    let digits = digits.max(1);
    if x.is_zero() {
        return format!("{}e+00", zero_mantissa(digits));
    }
    let (neg, mantissa, exp) = x.to_sign_string_exp(10, Some(digits));
    let exp = exp.expect("finite nonzero value has an exponent") - 1;
    let (head, tail) = mantissa.split_at(1);
    let sign = if neg { "-" } else { "" };
    let esign = if exp < 0 { '-' } else { '+' };
    if tail.is_empty() {
        format!("{sign}{head}e{esign}{:02}", exp.abs())
    } else {
        format!("{sign}{head}.{tail}e{esign}{:02}", exp.abs())
    }
}

fn zero_mantissa(digits: usize) -> String {
    if digits == 1 {
        "0".to_string()
    } else {
        format!("0.{}", "0".repeat(digits - 1))
    }
}

/// Parses a decimal string exactly rounded to `precision_bits`.
pub fn parse_decimal(s: &str, precision_bits: u32) -> Result<Float> {
    let parsed = Float::parse(s.trim()).map_err(|e| QwkbError::Parse(format!("`{s}`: {e}")))?;
    Ok(Float::with_val(precision_bits, parsed))
}

/// Number of significant digits printed in a decimal string.
pub fn significant_digits(s: &str) -> usize {
    let mantissa = s
        .trim()
        .trim_start_matches(['+', '-'])
        .split(['e', 'E'])
        .next()
        .unwrap_or("");
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    let trimmed = digits.trim_start_matches('0');
    if trimmed.is_empty() {
        1
    } else {
        trimmed.len()
    }
}

/// Value of one unit in the last printed place of `s`.
pub fn last_place_unit(s: &str, precision_bits: u32) -> Result<Float> {
    let value = parse_decimal(s, precision_bits)?;
    let digits = significant_digits(s) as i32;
    let lead = if value.is_zero() {
        0
    } else {
        Float::with_val(precision_bits, value.abs_ref())
            .log10()
            .floor()
            .to_f64() as i32
    };
    let ten = Float::with_val(precision_bits, 10);
    Ok(Float::with_val(precision_bits, ten.pow(lead - digits + 1)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_with_explicit_exponent_sign() {
        let x = Float::with_val(128, -0.0353677651315);
        assert_eq!(to_sci(&x, 5), "-3.5368e-02");
        let y = Float::with_val(128, 123456.0);
        assert_eq!(to_sci(&y, 3), "1.23e+05");
        assert_eq!(to_sci(&Float::new(64), 3), "0.00e+00");
    }

    #[test]
    fn ties_round_to_even() {
        // 0.125 and 0.375 are exact binary values
        assert_eq!(to_sci(&Float::with_val(64, 0.125), 2), "1.2e-01");
        assert_eq!(to_sci(&Float::with_val(64, 0.375), 2), "3.8e-01");
    }

    #[test]
    fn counts_significant_digits() {
        assert_eq!(significant_digits("-8.56774839458e-02"), 12);
        assert_eq!(
            significant_digits("0.53018104524209144982352300834633177275760"),
            41
        );
        assert_eq!(
            significant_digits("57.34845869249258776907546415989160724528593"),
            43
        );
    }

    #[test]
    fn last_place_of_printed_value() {
        let u = last_place_unit("2.4866722e-08", 128).unwrap();
        assert!((u.to_f64() - 1e-15).abs() < 1e-28);
        let u = last_place_unit("10.61918645911797001207485555679431818835242", 256).unwrap();
        assert!((u.to_f64() - 1e-41).abs() < 1e-54);
    }

    #[test]
    fn decimal_round_trip_at_sufficient_digits() {
        let p = 200;
        let x = Float::with_val(p, 1) / 7u32;
        let d = (p as f64 * 0.302).ceil() as usize + 1;
        let back = parse_decimal(&to_sci(&x, d), p).unwrap();
        assert_eq!(back, x);
    }
}
