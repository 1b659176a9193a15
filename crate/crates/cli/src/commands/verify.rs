use std::path::Path;
use std::process::ExitCode;

use qwkb::arith::{last_place_unit, parse_decimal, to_sci, BigReal, Integer};
use qwkb::coeffs::{a_table_form, asym_ratio, golden, AsymSeries, GoldenTable, SeriesKind};
use qwkb::eigen;
use qwkb::oracle::{embedded_reference, solve_spectrum_cached, OracleConfig};
use qwkb::sums::{self, SdChoice};
use qwkb::{Context, Result as CoreResult};

use crate::args::{RunConfig, Suite};
use crate::error::CliError;
use crate::table::{Cell, Table};

/// Precision at which printed table entries are parsed.
const CMP_BITS: u32 = 512;
/// Slack on the half-unit rounding test, for exact ties.
const TIE_SLACK: f64 = 1e-9;
/// Largest accepted |computed − tabulated| for the reference spectrum.
const ORACLE_TOL: f64 = 1e-40;

const DRIFT: &str =
    "the tabulated d_14+ and h_27+ drift at ~1e-13 relative from their exact values, \
                     and entries computed from them inherit it";

fn none(_: i64) -> bool {
    false
}

/// One compared column.
struct Check {
    table: &'static str,
    column: &'static str,
    rows: usize,
    failed: Vec<i64>,
    documented: fn(i64) -> bool,
    worst_abs: BigReal,
    worst_rel: BigReal,
}

impl Check {
    fn new(table: &'static str, column: &'static str) -> Self {
        Check {
            table,
            column,
            rows: 0,
            failed: Vec::new(),
            documented: none,
            worst_abs: BigReal::new(CMP_BITS),
            worst_rel: BigReal::new(CMP_BITS),
        }
    }

    fn documented(mut self, rule: fn(i64) -> bool) -> Self {
        self.documented = rule;
        self
    }

    fn record(&mut self, index: i64, ok: bool) {
        self.rows += 1;
        if !ok {
            self.failed.push(index);
        }
    }

    fn deviation(&mut self, value: &BigReal, printed: &BigReal) -> BigReal {
        let abs = BigReal::with_val(CMP_BITS, value - printed).abs();
        let rel = if printed.is_zero() {
            abs.clone()
        } else {
            BigReal::with_val(CMP_BITS, &abs / printed).abs()
        };
        if abs > self.worst_abs {
            self.worst_abs = abs.clone();
        }
        if rel > self.worst_rel {
            self.worst_rel = rel;
        }
        abs
    }

    /// `value` must round to the printed entry at its printed digits.
    fn printed(&mut self, index: i64, value: &BigReal, printed: &str) -> CoreResult<()> {
        let p = parse_decimal(printed, CMP_BITS)?;
        let unit = last_place_unit(printed, CMP_BITS)?;
        let abs = self.deviation(value, &p);
        let ulps = BigReal::with_val(CMP_BITS, &abs / &unit).to_f64();
        self.record(index, ulps <= 0.5 + TIE_SLACK);
        Ok(())
    }

    /// `|value − printed| ≤ tol`.
    fn within(&mut self, index: i64, value: &BigReal, printed: &str, tol: f64) -> CoreResult<()> {
        let p = parse_decimal(printed, CMP_BITS)?;
        let abs = self.deviation(value, &p);
        self.record(index, abs <= tol);
        Ok(())
    }

    fn undocumented(&self) -> usize {
        self.failed
            .iter()
            .filter(|&&i| !(self.documented)(i))
            .count()
    }

    fn status(&self) -> &'static str {
        match (self.failed.is_empty(), self.undocumented()) {
            (true, _) => "pass",
            (false, 0) => "documented-drift",
            _ => "fail",
        }
    }
}

pub fn run(
    suite: Suite,
    allow_documented: bool,
    cache_dir: Option<&Path>,
    cfg: &RunConfig,
) -> Result<(Table, ExitCode), CliError> {
    let ctx = Context::shared(cfg.precision_bits)?;
    let mut checks = Vec::new();
    if matches!(suite, Suite::Coeffs | Suite::All) {
        coeffs(&ctx, &mut checks)?;
    }
    if matches!(suite, Suite::Eigen | Suite::All) {
        eigenvalues(&ctx, &mut checks)?;
    }
    if matches!(suite, Suite::Sums | Suite::All) {
        eigen_sums(&ctx, &mut checks)?;
    }
    if matches!(suite, Suite::Oracle | Suite::All) {
        let dir = cache_dir.map_or_else(
            || std::env::temp_dir().join("qwkb-cache"),
            Path::to_path_buf,
        );
        oracle(&dir, &mut checks)?;
    }

    let mut t = Table::new(&[
        "table",
        "column",
        "rows",
        "mismatches",
        "documented",
        "worst_abs",
        "worst_rel",
        "status",
        "failed_rows",
    ]);
    for c in &checks {
        let failed: Vec<String> = c.failed.iter().map(i64::to_string).collect();
        t.push(vec![
            Cell::Text(c.table.into()),
            Cell::Text(c.column.into()),
            c.rows.into(),
            c.failed.len().into(),
            (c.failed.len() - c.undocumented()).into(),
            Cell::Num(to_sci(&c.worst_abs, cfg.error_digits)),
            Cell::Num(to_sci(&c.worst_rel, cfg.error_digits)),
            Cell::Text(c.status().into()),
            Cell::Text(failed.join(" ")),
        ]);
    }

    let rows: usize = checks.iter().map(|c| c.rows).sum();
    let mismatches: usize = checks.iter().map(|c| c.failed.len()).sum();
    let undocumented: usize = checks.iter().map(Check::undocumented).sum();
    eprintln!("verify: {rows} entries, {mismatches} mismatches ({undocumented} outside the documented drift region)");
    if mismatches > undocumented {
        eprintln!("verify: documented drift: {DRIFT}");
    }
    let ok = undocumented == 0 && (mismatches == 0 || allow_documented);
    Ok((
        t,
        if ok {
            ExitCode::SUCCESS
        } else {
            ExitCode::from(1)
        },
    ))
}

fn field(table: &GoldenTable, row: usize, col: usize) -> &str {
    table.rows[row].fields.get(col).map_or("", String::as_str)
}

fn series_check(
    out: &mut Vec<Check>,
    series: &AsymSeries,
    table: &'static str,
    column: &'static str,
    col: usize,
    offset: usize,
    documented: fn(i64) -> bool,
) -> CoreResult<()> {
    let t = golden(table)?;
    let mut c = Check::new(table, column).documented(documented);
    for (i, row) in t.rows.iter().enumerate() {
        let n = row.index as usize + offset;
        c.printed(
            n as i64,
            &series.coeff(n)?.value(CMP_BITS),
            field(&t, i, col),
        )?;
    }
    out.push(c);
    Ok(())
}

fn coeffs(ctx: &Context, out: &mut Vec<Check>) -> CoreResult<()> {
    let fam = ctx.exact();
    let s3 = golden("S3")?;
    let mut c = Check::new("S3", "exact a_n");
    for row in &s3.rows {
        let n = row.index as usize;
        let form = fam.a.coeff(n)?.as_exact().and_then(a_table_form);
        let ok = form.is_some_and(|(p, l, k)| {
            let parse = |s: &String| s.parse::<Integer>().ok();
            p.to_string() == row.fields[0]
                && Some(l) == parse(&row.fields[1])
                && Some(k) == parse(&row.fields[2])
        });
        c.record(row.index, ok);
    }
    out.push(c);

    for (table, column, kind, series) in [
        ("S2", "a_n", SeriesKind::A, &fam.a),
        ("S5", "b_n", SeriesKind::B, &fam.b),
    ] {
        series_check(out, series, table, column, 0, 0, none)?;
        let t = golden(table)?;
        let mut c = Check::new(table, "ratio");
        for (i, row) in t.rows.iter().enumerate() {
            let n = row.index as usize;
            let r = asym_ratio(kind, n, &series.coeff(n)?.value(CMP_BITS))?;
            c.printed(row.index, &r, field(&t, i, 1))?;
        }
        out.push(c);
    }
    series_check(out, &fam.d, "S8", "d_n", 0, 0, |n| n >= 14)?;
    let h = ctx.series(SeriesKind::H);
    series_check(out, h, "S11", "h_n", 0, 0, |n| n >= 27)?;
    series_check(out, h, "S11", "h_(n+28)", 1, 28, |_| true)?;
    series_check(out, &fam.c, "S14", "c_n", 0, 0, none)?;
    series_check(out, &fam.q, "S16", "q_n", 0, 0, none)?;
    Ok(())
}

fn exact_order(c: &mut Check, index: i64, order: usize, printed: &str) {
    c.record(index, order.to_string() == printed);
}

fn eigenvalues(ctx: &Context, out: &mut Vec<Check>) -> CoreResult<()> {
    let s18 = golden("S18")?;
    let (mut l, mut v) = (
        Check::new("S18", "L"),
        Check::new("S18", "D_L").documented(|j| j >= 5),
    );
    for (i, row) in s18.rows.iter().enumerate() {
        let j = row.index as usize;
        let order = eigen::d_order(ctx, j).order;
        exact_order(&mut l, row.index, order, field(&s18, i, 0));
        v.printed(
            row.index,
            &eigen::d_value(ctx, j, order)?,
            field(&s18, i, 1),
        )?;
    }
    out.extend([l, v]);

    let s19 = golden("S19")?;
    let (mut l, mut v) = (
        Check::new("S19", "L"),
        Check::new("S19", "eps_SD").documented(|n| n >= 5),
    );
    for (i, row) in s19.rows.iter().enumerate() {
        let z = ctx.half_integer(row.index as usize);
        let order = eigen::sd_order(ctx, &z).order;
        exact_order(&mut l, row.index, order, field(&s19, i, 0));
        v.printed(
            row.index,
            &eigen::eps_sd(ctx, &z, order)?,
            field(&s19, i, 1),
        )?;
    }
    out.extend([l, v]);

    let reference = embedded_reference();
    let s21 = golden("S21")?;
    let mut cols = [
        Check::new("S21", "WKB"),
        Check::new("S21", "CWKB"),
        Check::new("S21", "WKB_(L-1)+SD"),
    ];
    for (i, row) in s21.rows.iter().enumerate() {
        let j = row.index as usize;
        let parse = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| qwkb::QwkbError::Parse(format!("S21 order `{s}`")))
        };
        let m = parse(field(&s21, i, 0))?;
        let mp = parse(field(&s21, i, 1))?;
        let exact = reference.value(j)?;
        let lsd = eigen::sd_order(ctx, &ctx.half_integer(j)).order;
        let lw = eigen::wkb_order(ctx, j).order;
        let estimates = [
            eigen::eps_wkb(ctx, j, m)?,
            eigen::eps_cwkb_with(ctx, j, m, lsd)?,
            eigen::eps_cwkb_with(ctx, j, lw.saturating_sub(1), mp)?,
        ];
        for (k, e) in estimates.into_iter().enumerate() {
            let err = e.with_reference(exact).error.expect("reference attached");
            cols[k].printed(row.index, &err, field(&s21, i, 2 + k))?;
        }
    }
    out.extend(cols);
    Ok(())
}

fn eigen_sums(ctx: &Context, out: &mut Vec<Check>) -> CoreResult<()> {
    let t3 = golden("T3")?;
    let (mut ex, mut asym) = (
        Check::new("T3", "exact E_SD"),
        Check::new("T3", "asym E_SD"),
    );
    for (i, row) in t3.rows.iter().enumerate() {
        let n = row.index as usize;
        ex.printed(row.index, &sums::e_sd_exact(ctx, n)?, field(&t3, i, 0))?;
        asym.printed(row.index, &sums::e_sd_asym(ctx, n)?, field(&t3, i, 1))?;
    }
    out.extend([ex, asym]);

    let s20 = golden("S20")?;
    let mut c = Check::new("S20", "E_SD").documented(|n| (5..=8).contains(&n));
    for (i, row) in s20.rows.iter().enumerate() {
        c.printed(
            row.index,
            &sums::e_sd_asym(ctx, row.index as usize)?,
            field(&s20, i, 0),
        )?;
    }
    out.push(c);

    let reference = embedded_reference();
    let s22 = golden("S22")?;
    let mut cols = [
        Check::new("S22", "SWKB"),
        Check::new("S22", "CSWKB"),
        Check::new("S22", "Hyper"),
    ];
    for (i, row) in s22.rows.iter().enumerate() {
        let n = row.index as usize;
        let m = field(&s22, i, 0)
            .parse::<usize>()
            .map_err(|_| qwkb::QwkbError::Parse(format!("S22 order `{}`", field(&s22, i, 0))))?;
        let exact = reference.partial_sum(n)?;
        let estimates = [
            sums::e_swkb(ctx, n, m)?,
            sums::e_cswkb(ctx, n, Some(m), SdChoice::Asymptotic)?,
            sums::e_hyp(ctx, n, Some(m))?,
        ];
        for (k, s) in estimates.into_iter().enumerate() {
            let err = s.with_reference(&exact).error.expect("reference attached");
            cols[k].printed(row.index, &err, field(&s22, i, 1 + k))?;
        }
    }
    out.extend(cols);
    Ok(())
}

fn oracle(cache_dir: &Path, out: &mut Vec<Check>) -> CoreResult<()> {
    let spectrum = solve_spectrum_cached(&OracleConfig::table_grade(), cache_dir)?;
    let s1 = golden("S1")?;
    let mut c = Check::new("S1", "eigenvalue");
    for (i, row) in s1.rows.iter().enumerate() {
        c.within(
            row.index,
            spectrum.value(row.index as usize)?,
            field(&s1, i, 0),
            ORACLE_TOL,
        )?;
    }
    out.push(c);
    Ok(())
}
