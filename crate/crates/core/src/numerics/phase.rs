//! Exact root-of-unity bookkeeping.
//!
//! A [`Phase`] is a rational t modulo 1 standing for e^{2 pi i t}. Index
//! reduction of Siegel functions produces such factors; they are composed
//! exactly as rationals and applied to floating values only once, at the end.

use super::{BigComplex, PrecisionContext};
use num_rational::Rational64;
use num_traits::{Signed, Zero};
use std::ops::{Add, Neg};

/// e^{2 pi i t} with t an exact rational in [0, 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Phase {
    t: Rational64,
}

fn normalize(t: Rational64) -> Rational64 {
    let f = t.fract();
    if f.is_negative() {
        f + Rational64::from_integer(1)
    } else {
        f
    }
}

impl Phase {
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Phase {
            t: normalize(Rational64::new(num, den)),
        }
    }

    pub fn identity() -> Self {
        Phase {
            t: Rational64::zero(),
        }
    }

    pub fn from_rational(t: Rational64) -> Self {
        Phase { t: normalize(t) }
    }

    /// The exponent t as a rational in [0, 1).
    pub fn t(&self) -> Rational64 {
        self.t
    }

    pub fn is_identity(&self) -> bool {
        self.t.is_zero()
    }

    /// The phase raised to an integer power: t -> k t mod 1.
    pub fn pow(&self, k: i64) -> Self {
        Phase {
            t: normalize(self.t * Rational64::from_integer(k)),
        }
    }

    /// Evaluate e^{2 pi i t} at working precision. Quarter turns are exact.
    pub fn value(&self, ctx: &PrecisionContext) -> BigComplex {
        let bits = ctx.bits();
        match (*self.t.numer(), *self.t.denom()) {
            (0, _) => BigComplex::one(bits),
            (1, 2) => -&BigComplex::one(bits),
            (1, 4) => BigComplex::new(crate::numerics::BigReal::zero(bits), crate::numerics::BigReal::one(bits)),
            (3, 4) => BigComplex::new(crate::numerics::BigReal::zero(bits), -crate::numerics::BigReal::one(bits)),
            (n, d) => ctx.unit(n, d),
        }
    }
}

impl Add for Phase {
    type Output = Phase;
    fn add(self, rhs: Phase) -> Phase {
        Phase {
            t: normalize(self.t + rhs.t),
        }
    }
}

impl Neg for Phase {
    type Output = Phase;
    fn neg(self) -> Phase {
        Phase {
            t: normalize(-self.t),
        }
    }
}
