//! Precision-managed arbitrary-precision arithmetic.
//!
//! The working scale is decided once, by [`with_precision`], and every value
//! derived from the resulting [`PrecisionContext`] carries that scale. All
//! values are immutable after construction, so anything here may be used from
//! any thread; the context itself is a cheap `Arc` clone.

mod complex;
mod phase;
mod poly;
mod real;

pub use complex::BigComplex;
pub use phase::Phase;
pub use poly::{poly_from_roots, round_to_integer_poly, IntPolynomial};
pub use real::BigReal;

use crate::error::{Error, Result};
use std::sync::{Arc, OnceLock};

/// Smallest accepted working precision, in decimal digits.
pub const MIN_DIGITS: u32 = 50;

/// Default guard digits stacked on top of the requested precision.
pub const DEFAULT_GUARD_DIGITS: u32 = 20;

/// Default working precision used by the command-line front end.
pub const DEFAULT_DIGITS: u32 = 256;

struct CtxInner {
    decimal_digits: u32,
    guard_digits: u32,
    bits: u32,
    pi: OnceLock<BigReal>,
    ln2: OnceLock<BigReal>,
}

/// Immutable precision configuration plus lazily computed shared constants.
#[derive(Clone)]
pub struct PrecisionContext {
    inner: Arc<CtxInner>,
}

/// Build a context carrying `digits` decimal digits of working precision
/// (plus the default guard digits of truncation slack).
pub fn with_precision(digits: u32) -> Result<PrecisionContext> {
    PrecisionContext::with_precision(digits)
}

impl PrecisionContext {
    pub fn with_precision(digits: u32) -> Result<Self> {
        Self::with_guard(digits, DEFAULT_GUARD_DIGITS)
    }

    pub fn with_guard(digits: u32, guard: u32) -> Result<Self> {
        if digits < MIN_DIGITS {
            return Err(Error::PrecisionTooLow {
                got: digits,
                min: MIN_DIGITS,
            });
        }
        // log2(10) = 3.3219...; a few spare bits absorb arithmetic rounding
        let bits = (((digits + guard) as f64) * std::f64::consts::LOG2_10).ceil() as u32 + 64;
        Ok(PrecisionContext {
            inner: Arc::new(CtxInner {
                decimal_digits: digits,
                guard_digits: guard,
                bits,
                pi: OnceLock::new(),
                ln2: OnceLock::new(),
            }),
        })
    }

    pub fn decimal_digits(&self) -> u32 {
        self.inner.decimal_digits
    }

    pub fn guard_digits(&self) -> u32 {
        self.inner.guard_digits
    }

    /// Binary scale of every value produced under this context.
    pub fn bits(&self) -> u32 {
        self.inner.bits
    }

    pub fn pi(&self) -> BigReal {
        self.inner
            .pi
            .get_or_init(|| real::compute_pi(self.bits()))
            .clone()
    }

    pub fn two_pi(&self) -> BigReal {
        self.pi().mul_i64(2)
    }

    pub fn ln2(&self) -> BigReal {
        self.inner
            .ln2
            .get_or_init(|| real::compute_ln2(self.bits()))
            .clone()
    }

    /// 10^k at the working scale (k may be negative).
    pub fn pow10(&self, k: i64) -> BigReal {
        if k >= 0 {
            BigReal::from_i64(10, self.bits()).powi(k)
        } else {
            BigReal::from_ratio(1, 10, self.bits()).powi(-k)
        }
    }

    /// Identity-check tolerance 10^-(digits - guard).
    pub fn tolerance(&self) -> BigReal {
        self.pow10(-((self.decimal_digits() - self.guard_digits()) as i64))
    }

    /// Series and product tails are cut below 10^-(digits + guard).
    pub fn series_cutoff(&self) -> BigReal {
        self.pow10(-((self.decimal_digits() + self.guard_digits()) as i64))
    }

    /// Default tolerance for recognizing integer coefficients (10^-30),
    /// deliberately independent of the working precision.
    pub fn integrality_tolerance(&self) -> BigReal {
        self.pow10(-30)
    }

    pub fn real_from_i64(&self, v: i64) -> BigReal {
        BigReal::from_i64(v, self.bits())
    }

    pub fn real_from_ratio(&self, p: i64, q: i64) -> BigReal {
        BigReal::from_ratio(p, q, self.bits())
    }

    pub fn exp(&self, x: &BigReal) -> BigReal {
        real::exp(x, &self.ln2())
    }

    pub fn sin_cos(&self, x: &BigReal) -> (BigReal, BigReal) {
        real::sin_cos(x, &self.two_pi())
    }

    pub fn ln(&self, x: &BigReal) -> BigReal {
        real::ln(x, &self.ln2())
    }

    /// Complex exponential e^{re + i im}.
    pub fn cexp(&self, re: &BigReal, im: &BigReal) -> BigComplex {
        let r = self.exp(re);
        let (s, c) = self.sin_cos(im);
        BigComplex::new(&r * &c, &r * &s)
    }

    /// The root of unity e^{2 pi i n/d} at working precision.
    pub fn unit(&self, n: i64, d: i64) -> BigComplex {
        let angle = self.two_pi().mul_i64(n).div_i64(d);
        let (s, c) = self.sin_cos(&angle);
        BigComplex::new(c, s)
    }
}

impl std::fmt::Debug for PrecisionContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "PrecisionContext({} digits + {} guard, {} bits)",
            self.decimal_digits(),
            self.guard_digits(),
            self.bits()
        )
    }
}
