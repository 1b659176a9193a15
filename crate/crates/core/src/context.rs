//! Numeric evaluation context: every coefficient family rounded once to a
//! working precision, plus the constants used throughout.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rug::Float;

use crate::arith::{const_alpha, const_pi, MIN_PRECISION_BITS};
use crate::coeffs::{self, AsymSeries, ExactFamilies, SeriesKind};
use crate::error::{QwkbError, Result};

/// Guard bits carried by the numeric coefficient vectors.
const GUARD_BITS: u32 = 64;

/// Coefficient families and constants at one working precision.
#[derive(Debug)]
pub struct Context {
    precision_bits: u32,
    work_bits: u32,
    pi: Float,
    alpha: Float,
    exact: &'static ExactFamilies,
    b: AsymSeries,
    bprime: AsymSeries,
    d: AsymSeries,
    h: AsymSeries,
    c: AsymSeries,
    q: AsymSeries,
    f: AsymSeries,
}

impl Context {
    /// Builds a context; prefer [`Context::shared`] to reuse one per precision.
    pub fn new(precision_bits: u32) -> Result<Self> {
        if precision_bits < MIN_PRECISION_BITS {
            return Err(QwkbError::Config(format!(
                "precision {precision_bits} bits is below the minimum {MIN_PRECISION_BITS}"
            )));
        }
        let work = precision_bits + GUARD_BITS;
        let exact = coeffs::exact_families();
        let numeric = |s: &AsymSeries| AsymSeries::numeric(s.kind(), s.values(work));
        let h = coeffs::shared_h(work);
        let f = coeffs::gen_f(&h, work)?;
        Ok(Context {
            precision_bits,
            work_bits: work,
            pi: const_pi(work),
            alpha: const_alpha(work)?,
            exact,
            b: numeric(&exact.b),
            bprime: numeric(&coeffs::gen_bprime(&exact.b)),
            d: numeric(&exact.d),
            h,
            c: numeric(&exact.c),
            q: numeric(&exact.q),
            f,
        })
    }

    /// Process-wide context for `precision_bits`, built on first request.
    pub fn shared(precision_bits: u32) -> Result<Arc<Context>> {
        static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Context>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut map = cache.lock().unwrap_or_else(|e| e.into_inner());
        if let Some(ctx) = map.get(&precision_bits) {
            return Ok(Arc::clone(ctx));
        }
        let ctx = Arc::new(Context::new(precision_bits)?);
        map.insert(precision_bits, Arc::clone(&ctx));
        Ok(ctx)
    }

    /// Requested output precision.
    pub fn precision_bits(&self) -> u32 {
        self.precision_bits
    }

    /// Internal precision (output precision plus guard bits).
    pub fn work_bits(&self) -> u32 {
        self.work_bits
    }

    pub fn pi(&self) -> &Float {
        &self.pi
    }

    pub fn alpha(&self) -> &Float {
        &self.alpha
    }

    pub fn exact(&self) -> &'static ExactFamilies {
        self.exact
    }

    /// Numeric series of the given kind (A is served from the exact family).
    pub fn series(&self, kind: SeriesKind) -> &AsymSeries {
        match kind {
            SeriesKind::A => &self.exact.a,
            SeriesKind::B => &self.b,
            SeriesKind::Bprime => &self.bprime,
            SeriesKind::D => &self.d,
            SeriesKind::H => &self.h,
            SeriesKind::C => &self.c,
            SeriesKind::Q => &self.q,
            SeriesKind::F => &self.f,
        }
    }

    /// A fresh float at working precision.
    pub fn float<T>(&self, v: T) -> Float
    where
        Float: rug::Assign<T>,
    {
        Float::with_val(self.work_bits, v)
    }

    /// `n + 1/2` at working precision.
    pub fn half_integer(&self, n: usize) -> Float {
        self.float(n as f64 + 0.5)
    }

    /// Rounds a working-precision value to the output precision.
    pub fn round(&self, v: &Float) -> Float {
        Float::with_val(self.precision_bits, v)
    }
}
