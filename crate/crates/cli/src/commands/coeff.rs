use qwkb::arith::to_sci;
use qwkb::coeffs::{asym_ratio, gen_k, AsymSeries, SeriesKind, EXACT_CAP, F_ORDER, H_CAP};
use qwkb::{Context, QwkbError};

use super::{usage, value_cell};
use crate::args::{Family, RunConfig};
use crate::error::CliError;
use crate::table::{Cell, Table};

/// Printed digits of the large-order ratio column.
const RATIO_DIGITS: usize = 6;

pub fn run(family: Family, n_max: usize, cfg: &RunConfig) -> Result<Table, CliError> {
    if cfg.order.is_some() || cfg.sd_order.is_some() {
        return Err(usage("--order/--sd-order do not apply to coeff"));
    }
    if family == Family::K {
        let mut t = Table::new(&["n", "value"]);
        for (n, k) in gen_k(n_max)?.iter().enumerate() {
            t.push(vec![n.into(), Cell::Text(k.to_string())]);
        }
        return Ok(t);
    }
    let (name, cap) = match family {
        Family::A => ("A", EXACT_CAP),
        Family::B => ("B", EXACT_CAP),
        Family::D => ("D", EXACT_CAP),
        Family::C => ("C", EXACT_CAP),
        Family::Q => ("Q", EXACT_CAP),
        Family::H => ("H", H_CAP),
        Family::F => ("F", F_ORDER),
        Family::K => unreachable!("handled above"),
    };
    if n_max > cap {
        return Err(QwkbError::Capacity {
            what: name,
            requested: n_max,
            available: cap,
        }
        .into());
    }
    let ctx = Context::shared(cfg.precision_bits)?;
    let bits = ctx.precision_bits();
    let exact = ctx.exact();
    let (series, ratio_kind): (&AsymSeries, _) = match family {
        Family::A => (&exact.a, Some(SeriesKind::A)),
        Family::B => (&exact.b, Some(SeriesKind::B)),
        Family::D => (&exact.d, None),
        Family::C => (&exact.c, None),
        Family::Q => (&exact.q, None),
        Family::H => (ctx.series(SeriesKind::H), None),
        Family::F => (ctx.series(SeriesKind::F), None),
        Family::K => unreachable!("handled above"),
    };
    let mut t = Table::new(if ratio_kind.is_some() {
        &["n", "value", "ratio"]
    } else {
        &["n", "value"]
    });
    for n in 0..=n_max {
        let v = series.coeff(n)?.value(bits);
        let mut row = vec![n.into(), value_cell(&v, cfg)];
        if let Some(kind) = ratio_kind {
            // the large-order form is undefined at n = 0
            row.push(match asym_ratio(kind, n, &v) {
                Ok(r) => Cell::Num(to_sci(&r, RATIO_DIGITS)),
                Err(_) => Cell::Empty,
            });
        }
        t.push(row);
    }
    Ok(t)
}
