use qwkb::arith::BigReal;
use qwkb::coeffs::SeriesKind;
use qwkb::eigen::empirical_order;
use qwkb::oracle::embedded_reference;
use qwkb::sums::{self, SdChoice, SumEstimate};
use qwkb::{Context, QwkbError, Result as CoreResult};

use super::{error_cell, usage, value_cell};
use crate::args::{RunConfig, SdArg, Strategy, SumArg};
use crate::error::CliError;
use crate::range::{LevelRange, ScanSpec};
use crate::table::{Cell, Table};

pub fn run(
    range: LevelRange,
    method: SumArg,
    scan: Option<&ScanSpec>,
    sd_sum: Option<SdArg>,
    cfg: &RunConfig,
) -> Result<Table, CliError> {
    if cfg.sd_order.is_some() {
        return Err(usage("--sd-order does not apply to sums"));
    }
    let ctx = Context::shared(cfg.precision_bits)?;
    if method == SumArg::Sd {
        return Ok(sd_columns(&ctx, range, cfg)?);
    }
    if let Some(scan) = scan {
        if method == SumArg::Gexp {
            return Err(usage("--scan applies to swkb, cswkb and hyp"));
        }
        let sd = choice(sd_sum.unwrap_or(SdArg::Asym));
        return scan_block(&ctx, range, scan, sd, cfg);
    }
    let sd = choice(sd_sum.unwrap_or(SdArg::Exact));
    let reference = embedded_reference();
    let mut t = Table::new(&["N", "method", "order", "value", "sd_value", "error"]);
    for count in range.iter() {
        if count == 0 {
            return Err(usage("particle count N must be at least 1"));
        }
        let exact = reference.partial_sum(count).ok();
        let s = estimate(&ctx, count, method, sd, exact.as_ref(), cfg)?;
        if count < 8
            && cfg.order.is_none()
            && cfg.strategy == Strategy::Least
            && matches!(method, SumArg::Cswkb | SumArg::Hyp)
        {
            eprintln!(
                "note: N={count}: the odd-before-even order rule is only established from N = 8 on"
            );
        }
        let error = exact.and_then(|x| s.clone().with_reference(&x).error);
        t.push(vec![
            count.into(),
            Cell::Text(s.method.name().into()),
            s.order.into(),
            value_cell(&s.value, cfg),
            s.sd_value
                .as_ref()
                .map_or(Cell::Empty, |v| value_cell(v, cfg)),
            error_cell(error.as_ref(), cfg),
        ]);
    }
    Ok(t)
}

fn choice(arg: SdArg) -> SdChoice {
    match arg {
        SdArg::Exact => SdChoice::Exact,
        SdArg::Asym => SdChoice::Asymptotic,
    }
}

fn at(
    ctx: &Context,
    count: usize,
    method: SumArg,
    sd: SdChoice,
    m: usize,
) -> CoreResult<SumEstimate> {
    match method {
        SumArg::Swkb => sums::e_swkb(ctx, count, m),
        SumArg::Gexp => Ok(sums::e_gexp(ctx, count, m)?.sum),
        SumArg::Cswkb => sums::e_cswkb(ctx, count, Some(m), sd),
        SumArg::Hyp => sums::e_hyp(ctx, count, Some(m)),
        SumArg::Sd => unreachable!("handled by sd_columns"),
    }
}

fn estimate(
    ctx: &Context,
    count: usize,
    method: SumArg,
    sd: SdChoice,
    exact: Option<&BigReal>,
    cfg: &RunConfig,
) -> Result<SumEstimate, CliError> {
    let order = match (cfg.order, cfg.strategy) {
        (Some(m), _) => m,
        (None, Strategy::Least) => match method {
            SumArg::Swkb | SumArg::Gexp => sums::c_even_order(ctx, count).order,
            _ => sums::default_corrected_order(ctx, count),
        },
        (None, Strategy::Asym) => {
            return Err(QwkbError::UnsupportedStrategy {
                strategy: "asymptotic",
                kind: SeriesKind::C.name(),
            }
            .into())
        }
        (None, Strategy::Empirical) => {
            let exact = exact.ok_or_else(|| QwkbError::Range {
                index: count,
                len: embedded_reference().len() + 1,
            })?;
            // the hyperasymptotic average also reads order M + 2
            let top =
                ctx.series(SeriesKind::C).max_order() - if method == SumArg::Hyp { 2 } else { 0 };
            empirical_order(top, exact, &|m| {
                at(ctx, count, method, sd, m).map(|s| s.value)
            })?
        }
    };
    Ok(at(ctx, count, method, sd, order)?)
}

/// Exact and asymptotic subdominant sum corrections.
fn sd_columns(ctx: &Context, range: LevelRange, cfg: &RunConfig) -> CoreResult<Table> {
    let mut t = Table::new(&["N", "exact", "asym"]);
    for count in range.iter() {
        t.push(vec![
            count.into(),
            value_cell(&sums::e_sd_exact(ctx, count)?, cfg),
            value_cell(&sums::e_sd_asym(ctx, count)?, cfg),
        ]);
    }
    Ok(t)
}

/// SWKB, CSWKB and hyperasymptotic errors over a window around the even
/// least-addition order of the sum series.
fn scan_block(
    ctx: &Context,
    range: LevelRange,
    scan: &ScanSpec,
    sd: SdChoice,
    cfg: &RunConfig,
) -> Result<Table, CliError> {
    let reference = embedded_reference();
    let mut t = Table::new(&["N", "order", "swkb_error", "cswkb_error", "hyp_error"]);
    for count in range.iter() {
        if count == 0 {
            return Err(usage("particle count N must be at least 1"));
        }
        let exact = reference.partial_sum(count)?;
        let l = sums::c_even_order(ctx, count).order;
        for off in scan.offsets(l).map_err(CliError::Usage)? {
            let m = (l as i64 + off) as usize;
            let err = |s: SumEstimate| s.with_reference(&exact).error;
            let cells = [
                err(sums::e_swkb(ctx, count, m)?),
                err(sums::e_cswkb(ctx, count, Some(m), sd)?),
                err(sums::e_hyp(ctx, count, Some(m))?),
            ];
            let mut row = vec![count.into(), m.into()];
            row.extend(cells.iter().map(|c| error_cell(c.as_ref(), cfg)));
            t.push(row);
        }
    }
    Ok(t)
}
