//! Complex numbers over [`BigReal`] at a fixed working scale.

use super::real::BigReal;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Rectangular complex number; both parts carry the same fixed-point scale.
#[derive(Clone, PartialEq, Eq)]
pub struct BigComplex {
    pub re: BigReal,
    pub im: BigReal,
}

impl BigComplex {
    pub fn new(re: BigReal, im: BigReal) -> Self {
        debug_assert_eq!(re.bits(), im.bits());
        BigComplex { re, im }
    }

    pub fn zero(bits: u32) -> Self {
        BigComplex {
            re: BigReal::zero(bits),
            im: BigReal::zero(bits),
        }
    }

    pub fn one(bits: u32) -> Self {
        BigComplex {
            re: BigReal::one(bits),
            im: BigReal::zero(bits),
        }
    }

    pub fn from_real(re: BigReal) -> Self {
        let bits = re.bits();
        BigComplex {
            re,
            im: BigReal::zero(bits),
        }
    }

    pub fn from_i64(v: i64, bits: u32) -> Self {
        BigComplex::from_real(BigReal::from_i64(v, bits))
    }

    pub fn bits(&self) -> u32 {
        self.re.bits()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        BigComplex {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    pub fn scale(&self, k: &BigReal) -> Self {
        BigComplex {
            re: &self.re * k,
            im: &self.im * k,
        }
    }

    pub fn scale_i64(&self, k: i64) -> Self {
        BigComplex {
            re: self.re.mul_i64(k),
            im: self.im.mul_i64(k),
        }
    }

    pub fn div_i64(&self, k: i64) -> Self {
        BigComplex {
            re: self.re.div_i64(k),
            im: self.im.div_i64(k),
        }
    }

    pub fn scale_bigint(&self, k: &num_bigint::BigInt) -> Self {
        BigComplex {
            re: self.re.mul_bigint(k),
            im: self.im.mul_bigint(k),
        }
    }

    /// |z|^2, exact up to rounding of the two squarings.
    pub fn abs2(&self) -> BigReal {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    /// Exact power-of-two rescale that brings the larger component near 1,
    /// so squaring never falls below the fixed-point floor.
    fn normalizing_shift(&self) -> Option<i64> {
        let mb = self.re.mant_bits().max(self.im.mant_bits());
        if mb == 0 {
            return None;
        }
        Some(self.bits() as i64 - mb as i64)
    }

    pub fn abs(&self) -> BigReal {
        match self.normalizing_shift() {
            None => BigReal::zero(self.bits()),
            Some(shift) if shift > 0 => {
                let re = self.re.shl(shift);
                let im = self.im.shl(shift);
                (&(&re * &re) + &(&im * &im)).sqrt().shl(-shift)
            }
            Some(_) => self.abs2().sqrt(),
        }
    }

    pub fn recip(&self) -> Self {
        let shift = self
            .normalizing_shift()
            .expect("division by zero BigComplex");
        if shift > 0 {
            // 1/z = 2^shift * (1/(z * 2^shift))
            let scaled = BigComplex {
                re: self.re.shl(shift),
                im: self.im.shl(shift),
            };
            let n = scaled.abs2();
            BigComplex {
                re: (&scaled.re / &n).shl(shift),
                im: (&(-&scaled.im) / &n).shl(shift),
            }
        } else {
            let n = self.abs2();
            BigComplex {
                re: &self.re / &n,
                im: &(-&self.im) / &n,
            }
        }
    }

    /// Integer power by binary powering; negative exponents invert.
    pub fn powi(&self, e: i64) -> Self {
        if e == 0 {
            return BigComplex::one(self.bits());
        }
        if e < 0 {
            return self.powi(-e).recip();
        }
        let mut base = self.clone();
        let mut acc = BigComplex::one(self.bits());
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// True when both components are below `bound` in magnitude.
    pub fn smaller_than(&self, bound: &BigReal) -> bool {
        self.re.abs() < *bound && self.im.abs() < *bound
    }
}

impl fmt::Debug for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}i)", self.re.to_f64(), self.im.to_f64())
    }
}

impl Add for &BigComplex {
    type Output = BigComplex;
    fn add(self, rhs: &BigComplex) -> BigComplex {
        BigComplex {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Sub for &BigComplex {
    type Output = BigComplex;
    fn sub(self, rhs: &BigComplex) -> BigComplex {
        BigComplex {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Mul for &BigComplex {
    type Output = BigComplex;
    fn mul(self, rhs: &BigComplex) -> BigComplex {
        BigComplex {
            re: &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            im: &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        }
    }
}

impl Div for &BigComplex {
    type Output = BigComplex;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &BigComplex) -> BigComplex {
        self * &rhs.recip()
    }
}

impl Neg for &BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        BigComplex {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BITS: u32 = 300;

    #[test]
    fn reciprocal_round_trip() {
        let z = BigComplex::new(
            BigReal::from_ratio(3, 7, BITS),
            BigReal::from_ratio(-5, 11, BITS),
        );
        let w = &z * &z.recip();
        let tol = BigReal::from_ratio(1, 10, BITS).powi(80);
        assert!((&w - &BigComplex::one(BITS)).smaller_than(&tol));
    }

    #[test]
    fn powi_negative_is_reciprocal_power() {
        let z = BigComplex::new(
            BigReal::from_ratio(7, 5, BITS),
            BigReal::from_ratio(1, 3, BITS),
        );
        let a = z.powi(-6);
        let b = z.powi(6).recip();
        let tol = BigReal::from_ratio(1, 10, BITS).powi(75);
        assert!((&a - &b).smaller_than(&tol));
    }

    #[test]
    fn abs_of_three_four_is_five() {
        let z = BigComplex::new(BigReal::from_i64(3, BITS), BigReal::from_i64(-4, BITS));
        let tol = BigReal::from_ratio(1, 10, BITS).powi(85);
        assert!((&z.abs() - &BigReal::from_i64(5, BITS)).abs() < tol);
    }
}
