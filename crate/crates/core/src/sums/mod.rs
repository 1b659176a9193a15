//! Asymptotics of the sum `E(N)` of the lowest `N` eigenvalues: the SWKB
//! and G expansions, subdominant sum corrections, CSWKB, the hyperasymptotic
//! average, and eigenvalues recovered from sum differences.
//!
//! Throughout `Z = N + 1/2` and `E(0) = 0`.

use std::fmt;

use rug::ops::Pow;
use rug::Float;

use crate::coeffs::{horner_inverse, SeriesKind};
use crate::context::Context;
use crate::eigen::{self, least_even_addition, EigenEstimate, EigenMethod, Truncation};
use crate::error::{QwkbError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SumMethod {
    Swkb,
    Gexp,
    Cswkb,
    Hyp,
}

impl SumMethod {
    pub fn name(self) -> &'static str {
        match self {
            SumMethod::Swkb => "SWKB",
            SumMethod::Gexp => "GEXP",
            SumMethod::Cswkb => "CSWKB",
            SumMethod::Hyp => "HYP",
        }
    }
}

impl fmt::Display for SumMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which subdominant sum correction to add.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SdChoice {
    /// Direct tail sum of subdominant eigenvalue terms.
    #[default]
    Exact,
    /// The closed asymptotic form with f_0..f_4.
    Asymptotic,
}

/// One sum approximation.
#[derive(Clone, Debug)]
pub struct SumEstimate {
    pub count: usize,
    pub method: SumMethod,
    pub order: usize,
    pub value: Float,
    pub sd_value: Option<Float>,
    pub error: Option<Float>,
}

impl SumEstimate {
    pub fn with_reference(mut self, exact: &Float) -> Self {
        self.error = Some(Float::with_val(self.value.prec(), &self.value - exact));
        self
    }
}

fn z_of(ctx: &Context, count: usize) -> Float {
    ctx.half_integer(count)
}

/// `x^{k/3}`.
fn third_power(ctx: &Context, x: &Float, k: i32) -> Float {
    let c = ctx.float(x.cbrt_ref());
    let mut out = ctx.float(1);
    for _ in 0..k.unsigned_abs() {
        out *= &c;
    }
    if k < 0 {
        out = out.recip();
    }
    out
}

fn check_count(count: usize) -> Result<()> {
    if count == 0 {
        return Err(QwkbError::Config("particle count must be positive".into()));
    }
    Ok(())
}

fn swkb_working(ctx: &Context, count: usize, order: usize) -> Result<Float> {
    let n = ctx.float(count as u32);
    let n2 = ctx.float(n.square_ref());
    let c = ctx.series(SeriesKind::C).eval(order, &n2)?;
    let pref = ctx.float(ctx.alpha() * 3u32) / 7u32;
    Ok(pref * third_power(ctx, &n, 7) * c)
}

/// `(3/7) α N^{7/3} C_M(N²)`.
pub fn e_swkb(ctx: &Context, count: usize, order: usize) -> Result<SumEstimate> {
    check_count(count)?;
    let v = swkb_working(ctx, count, order)?;
    Ok(SumEstimate {
        count,
        method: SumMethod::Swkb,
        order,
        value: ctx.round(&v),
        sd_value: None,
        error: None,
    })
}

/// G-expansion value together with the midway quantity `E(N) + ε_N/2`.
#[derive(Clone, Debug)]
pub struct GexpEstimate {
    pub sum: SumEstimate,
    pub midway: Float,
}

/// `α Σ_{m≤M} ((3/7) q_m Z − b_m/2) Z^{4/3−2m}`; the midway quantity is
/// `(3/7) α Σ q_m Z^{7/3−2m}`.
pub fn e_gexp(ctx: &Context, count: usize, order: usize) -> Result<GexpEstimate> {
    check_count(count)?;
    let q = ctx.series(SeriesKind::Q);
    let b = ctx.series(SeriesKind::B);
    q.check_order(order)?;
    b.check_order(order)?;
    let z = z_of(ctx, count);
    let z2 = ctx.float(z.square_ref());
    let qv = q.values(ctx.work_bits());
    let bv = b.values(ctx.work_bits());
    let qsum = horner_inverse(&qv[..=order], &z2);
    let bsum = horner_inverse(&bv[..=order], &z2);
    let z43 = third_power(ctx, &z, 4);
    let z73 = third_power(ctx, &z, 7);
    let three_sevenths = ctx.float(ctx.alpha() * 3u32) / 7u32;
    let midway = ctx.float(&three_sevenths * &z73) * &qsum;
    let half_eps = ctx.float(ctx.alpha() * &z43) * bsum / 2u32;
    let value = Float::with_val(ctx.work_bits(), &midway - &half_eps);
    Ok(GexpEstimate {
        sum: SumEstimate {
            count,
            method: SumMethod::Gexp,
            order,
            value: ctx.round(&value),
            sd_value: None,
            error: None,
        },
        midway: ctx.round(&midway),
    })
}

/// Outcome of the direct subdominant tail sum.
#[derive(Clone, Debug)]
pub struct SdTail {
    pub value: Float,
    pub terms: usize,
    /// Some term was truncated at the last available H coefficient.
    pub capped: bool,
}

/// `−Σ_{j≥N} ε^SD_{L_j}(j + 1/2)` with each term at its least addition; the
/// tail stops once a term drops below `10^{−(digits+5)}` of the partial sum.
pub fn e_sd_exact_with(ctx: &Context, count: usize, digits: u32) -> Result<SdTail> {
    let work = ctx.work_bits();
    let cutoff = Float::with_val(work, 10).pow(-(digits as i32 + 5));
    let mut acc = Float::new(work);
    let mut capped = false;
    let mut j = count;
    let mut terms = 0;
    loop {
        let z = ctx.half_integer(j);
        let t: Truncation = eigen::sd_order(ctx, &z);
        capped |= t.at_cap;
        let term = eigen::eps_sd_working(ctx, &z, t.order)?;
        acc -= &term;
        terms += 1;
        j += 1;
        let bound = Float::with_val(work, acc.abs_ref()) * &cutoff;
        if Float::with_val(work, term.abs_ref()) < bound {
            break;
        }
        if terms > 10_000 {
            return Err(QwkbError::Convergence {
                iterations: terms,
                achieved_digits: 0,
            });
        }
    }
    Ok(SdTail {
        value: ctx.round(&acc),
        terms,
        capped,
    })
}

/// Default digit target for the direct tail sum (the output precision).
fn default_digits(ctx: &Context) -> u32 {
    (ctx.precision_bits() as f64 * std::f64::consts::LOG10_2) as u32
}

/// Direct subdominant sum correction at the context's full precision.
pub fn e_sd_exact(ctx: &Context, count: usize) -> Result<Float> {
    Ok(e_sd_exact_with(ctx, count, default_digits(ctx))?.value)
}

/// `−ε^SD(Z)/(1 + e^{−π}) Σ_{n≤4} f_n/Zⁿ` with ε^SD at its least addition.
pub fn e_sd_asym(ctx: &Context, count: usize) -> Result<Float> {
    let z = z_of(ctx, count);
    let l = eigen::sd_order(ctx, &z);
    let sd = eigen::eps_sd_working(ctx, &z, l.order)?;
    let f = ctx.series(SeriesKind::F);
    let poly = f.eval(f.max_order(), &z)?;
    let x = ctx.float(-ctx.pi()).exp();
    let v = -(sd * poly) / (x + 1u32);
    Ok(ctx.round(&v))
}

fn sd_value(ctx: &Context, count: usize, choice: SdChoice) -> Result<Float> {
    match choice {
        SdChoice::Exact => e_sd_exact(ctx, count),
        SdChoice::Asymptotic => e_sd_asym(ctx, count),
    }
}

/// Even least-addition order of the C series at `N²`.
pub fn c_even_order(ctx: &Context, count: usize) -> Truncation {
    let n = ctx.float(count as u32);
    least_even_addition(ctx.series(SeriesKind::C), &ctx.float(n.square_ref()))
}

/// Default CSWKB/HYP order: the odd order just before the even least addition.
pub fn default_corrected_order(ctx: &Context, count: usize) -> usize {
    c_even_order(ctx, count).order.saturating_sub(1)
}

/// `E^SWKB_M(N) + E^SD(N)`.
pub fn e_cswkb(
    ctx: &Context,
    count: usize,
    order: Option<usize>,
    sd: SdChoice,
) -> Result<SumEstimate> {
    check_count(count)?;
    let order = order.unwrap_or_else(|| default_corrected_order(ctx, count));
    let swkb = swkb_working(ctx, count, order)?;
    let sdv = sd_value(ctx, count, sd)?;
    let v = Float::with_val(ctx.work_bits(), &swkb + &sdv);
    Ok(SumEstimate {
        count,
        method: SumMethod::Cswkb,
        order,
        value: ctx.round(&v),
        sd_value: Some(sdv),
        error: None,
    })
}

/// `(E^SWKB_M + E^SWKB_{M+2})/2 + E^SD_asym(N)`.
pub fn e_hyp(ctx: &Context, count: usize, order: Option<usize>) -> Result<SumEstimate> {
    check_count(count)?;
    let order = order.unwrap_or_else(|| default_corrected_order(ctx, count));
    let avg = (swkb_working(ctx, count, order)? + swkb_working(ctx, count, order + 2)?) / 2u32;
    let sdv = e_sd_asym(ctx, count)?;
    let v = Float::with_val(ctx.work_bits(), &avg + &sdv);
    Ok(SumEstimate {
        count,
        method: SumMethod::Hyp,
        order,
        value: ctx.round(&v),
        sd_value: Some(sdv),
        error: None,
    })
}

/// A sum method at its default order for `N` (`E(0) = 0`).
pub fn e_default(ctx: &Context, method: SumMethod, count: usize) -> Result<SumEstimate> {
    if count == 0 {
        return Ok(SumEstimate {
            count,
            method,
            order: 0,
            value: Float::new(ctx.precision_bits()),
            sd_value: None,
            error: None,
        });
    }
    match method {
        SumMethod::Swkb => e_swkb(ctx, count, c_even_order(ctx, count).order),
        SumMethod::Gexp => Ok(e_gexp(ctx, count, c_even_order(ctx, count).order)?.sum),
        SumMethod::Cswkb => e_cswkb(ctx, count, None, SdChoice::Exact),
        SumMethod::Hyp => e_hyp(ctx, count, None),
    }
}

/// `ε_n ≈ E(n+1) − E(n)` under `method` at its default orders.
///
/// The difference of the two rounded sums is formed exactly (at working
/// precision), so these values telescope back to `E(N)` without rounding.
pub fn eps_from_sums(ctx: &Context, method: SumMethod, n: usize) -> Result<EigenEstimate> {
    let upper = e_default(ctx, method, n + 1)?;
    let lower = e_default(ctx, method, n)?;
    let v = Float::with_val(ctx.work_bits(), &upper.value - &lower.value);
    Ok(EigenEstimate {
        level: n,
        method: match method {
            SumMethod::Swkb | SumMethod::Gexp => EigenMethod::Wkb,
            SumMethod::Cswkb | SumMethod::Hyp => EigenMethod::Cwkb,
        },
        order: upper.order,
        sd_order: None,
        value: v,
        error: None,
    })
}
