use qwkb::arith::BigReal;
use qwkb::coeffs::SeriesKind;
use qwkb::eigen::{self, truncation_order, EigenEstimate, TruncationStrategy};
use qwkb::oracle::{embedded_reference, ReferenceSpectrum};
use qwkb::{Context, QwkbError, Result as CoreResult};

use super::{core_strategy, error_cell, usage, value_cell};
use crate::args::{EigenArg, RunConfig, Strategy};
use crate::error::CliError;
use crate::range::{LevelRange, ScanSpec};
use crate::table::{Cell, Table};

pub fn run(
    range: LevelRange,
    method: EigenArg,
    scan: Option<&ScanSpec>,
    cfg: &RunConfig,
) -> Result<Table, CliError> {
    let ctx = Context::shared(cfg.precision_bits)?;
    let reference = embedded_reference();
    if let Some(scan) = scan {
        if !matches!(method, EigenArg::Wkb | EigenArg::Cwkb) {
            return Err(usage("--scan applies to wkb and cwkb"));
        }
        return scan_block(&ctx, range, scan, &reference, cfg);
    }
    let strategy = core_strategy(cfg.strategy);
    let mut t = Table::new(&["n", "method", "order", "sd_order", "value", "error"]);
    for n in range.iter() {
        let (name, e) = match method {
            EigenArg::Sd => ("SD", sd_row(&ctx, n, cfg)?),
            _ => {
                let e = estimate(&ctx, n, method, &strategy, cfg)?;
                (e.method.name(), e)
            }
        };
        let error = match (method, reference.value(n)) {
            (EigenArg::Sd, _) | (_, Err(_)) => None,
            (_, Ok(exact)) => e.clone().with_reference(exact).error,
        };
        t.push(vec![
            n.into(),
            Cell::Text(name.into()),
            e.order.into(),
            e.sd_order.into(),
            value_cell(&e.value, cfg),
            error_cell(error.as_ref(), cfg),
        ]);
    }
    Ok(t)
}

/// The subdominant term alone at its least addition (or `--sd-order`).
fn sd_row(ctx: &Context, n: usize, cfg: &RunConfig) -> Result<EigenEstimate, CliError> {
    let z = ctx.half_integer(n);
    let l = match (cfg.sd_order.or(cfg.order), cfg.strategy) {
        (Some(l), _) => l,
        (None, Strategy::Least) => eigen::sd_order(ctx, &z).order,
        (None, other) => {
            return Err(QwkbError::UnsupportedStrategy {
                strategy: core_strategy(other).name(),
                kind: SeriesKind::H.name(),
            }
            .into())
        }
    };
    Ok(EigenEstimate {
        level: n,
        method: eigen::EigenMethod::Cwkb,
        order: l,
        sd_order: None,
        value: eigen::eps_sd(ctx, &z, l)?,
        error: None,
    })
}

fn estimate(
    ctx: &Context,
    n: usize,
    method: EigenArg,
    strategy: &TruncationStrategy,
    cfg: &RunConfig,
) -> Result<EigenEstimate, CliError> {
    let z = ctx.half_integer(n);
    let sd = match method {
        EigenArg::Wkb => None,
        EigenArg::Cwkb => Some(
            cfg.sd_order
                .unwrap_or_else(|| eigen::sd_order(ctx, &z).order),
        ),
        _ => Some(cfg.sd_order.unwrap_or_else(|| eigen::d_order(ctx, n).order)),
    };
    if method == EigenArg::Wkb && cfg.sd_order.is_some() {
        return Err(usage("--sd-order does not apply to wkb"));
    }
    let at = |m: usize| -> CoreResult<EigenEstimate> {
        let l = sd.unwrap_or(0);
        match method {
            EigenArg::Wkb => eigen::eps_wkb(ctx, n, m),
            EigenArg::Bcwkb => eigen::eps_bcwkb(ctx, n, m, l),
            EigenArg::Lin => eigen::eps_lin(ctx, n, m, l),
            EigenArg::Cwkb => eigen::eps_cwkb_with(ctx, n, m, l),
            EigenArg::Sd => unreachable!("handled by sd_row"),
        }
    };
    let order = match cfg.order {
        Some(m) => m,
        None => {
            let eval = |m: usize| at(m).map(|e| e.value);
            let z2 = ctx.float(z.square_ref());
            let t = truncation_order(
                ctx.series(SeriesKind::B),
                &z2,
                strategy,
                Some(n),
                Some(&eval),
            )?;
            // corrected methods stop one order before the WKB least addition;
            // an empirical order already refers to the corrected value
            let shift = usize::from(method != EigenArg::Wkb);
            if let TruncationStrategy::Empirical(_) = strategy {
                let least = eigen::wkb_order(ctx, n).order.saturating_sub(shift);
                if least != t.order {
                    eprintln!(
                        "note: n={n}: empirical order {} differs from least-addition order {least}",
                        t.order
                    );
                }
                t.order
            } else {
                t.order.saturating_sub(shift)
            }
        }
    };
    Ok(at(order)?)
}

/// WKB_M, WKB_M + SD_{L'} and WKB_{L−1} + SD_{M'} errors for a window of
/// orders, with M and M' moving together around L and L'.
fn scan_block(
    ctx: &Context,
    range: LevelRange,
    scan: &ScanSpec,
    reference: &ReferenceSpectrum,
    cfg: &RunConfig,
) -> Result<Table, CliError> {
    let mut t = Table::new(&[
        "n",
        "order",
        "sd_order",
        "wkb_error",
        "cwkb_error",
        "corrected_error",
    ]);
    for n in range.iter() {
        let exact = reference.value(n)?;
        let lw = eigen::wkb_order(ctx, n).order;
        let lsd = eigen::sd_order(ctx, &ctx.half_integer(n)).order;
        for off in scan.offsets(lw).map_err(CliError::Usage)? {
            let m = (lw as i64 + off) as usize;
            let mp = usize::try_from(lsd as i64 + off)
                .map_err(|_| usage("scan reaches below order 0"))?;
            let err = |e: EigenEstimate| -> Option<BigReal> { e.with_reference(exact).error };
            let cells = [
                err(eigen::eps_wkb(ctx, n, m)?),
                err(eigen::eps_cwkb_with(ctx, n, m, lsd)?),
                err(eigen::eps_cwkb_with(ctx, n, lw.saturating_sub(1), mp)?),
            ];
            let mut row = vec![n.into(), m.into(), mp.into()];
            row.extend(cells.iter().map(|c| error_cell(c.as_ref(), cfg)));
            t.push(row);
        }
    }
    Ok(t)
}
