#![allow(dead_code)]

use qwkb::arith::{last_place_unit, parse_decimal};
use rug::Float;

pub const BITS: u32 = 256;
const CMP_BITS: u32 = 512;

/// `|value − printed|` in units of the printed last place.
pub fn ulps(value: &Float, printed: &str) -> f64 {
    let p = parse_decimal(printed, CMP_BITS).unwrap();
    let u = last_place_unit(printed, CMP_BITS).unwrap();
    (Float::with_val(CMP_BITS, value - &p) / u).abs().to_f64()
}

/// `value` rounds to the printed string.
pub fn rounds_to(value: &Float, printed: &str) -> bool {
    ulps(value, printed) <= 0.5 + 1e-9
}

pub fn float(s: &str) -> Float {
    parse_decimal(s, CMP_BITS).unwrap()
}
