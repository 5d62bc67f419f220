//! Fixed-point arbitrary-precision real arithmetic on top of `num_bigint`.
//!
//! A [`BigReal`] stores `mant / 2^bits` for a mantissa `BigInt` and a scale
//! fixed by the enclosing [`PrecisionContext`](super::PrecisionContext). All
//! arithmetic keeps absolute error within a few ulps (one ulp = `2^-bits`),
//! which is what the truncation analysis of the q-series needs: tails are cut
//! when they fall below `10^-(digits+guard)`, well above the ulp.
//!
//! Transcendental kernels (`exp`, `sin`/`cos`, `ln`, `atan`) live on the
//! context so that pi and ln 2 are computed once per precision.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

/// Fixed-point real number: `value = mant / 2^bits`.
#[derive(Clone, PartialEq, Eq)]
pub struct BigReal {
    mant: BigInt,
    bits: u32,
}

/// Right shift with round-to-nearest (ties away from the floor direction).
fn shr_round(x: BigInt, s: u32) -> BigInt {
    if s == 0 {
        return x;
    }
    let half = BigInt::from(1) << (s - 1);
    (x + half) >> s
}

impl BigReal {
    pub fn from_raw(mant: BigInt, bits: u32) -> Self {
        BigReal { mant, bits }
    }

    pub fn zero(bits: u32) -> Self {
        BigReal {
            mant: BigInt::zero(),
            bits,
        }
    }

    pub fn one(bits: u32) -> Self {
        BigReal {
            mant: BigInt::from(1) << bits,
            bits,
        }
    }

    pub fn from_i64(v: i64, bits: u32) -> Self {
        BigReal {
            mant: BigInt::from(v) << bits,
            bits,
        }
    }

    pub fn from_bigint(v: &BigInt, bits: u32) -> Self {
        BigReal {
            mant: v.clone() << bits,
            bits,
        }
    }

    /// Exact rational `p/q` rounded to the working scale.
    pub fn from_ratio(p: i64, q: i64, bits: u32) -> Self {
        assert!(q != 0, "zero denominator");
        let (p, q) = if q < 0 { (-p, -q) } else { (p, q) };
        BigReal {
            mant: shr_round((BigInt::from(p) << (bits + 1)) / BigInt::from(q), 1),
            bits,
        }
    }

    /// Dyadic-exact conversion from `f64` (finite values only).
    pub fn from_f64(x: f64, bits: u32) -> Self {
        assert!(x.is_finite(), "cannot convert non-finite f64");
        let scaled = x * (1u64 << 53) as f64;
        // |x| <= 2^70 keeps the scaled value exactly representable in i128
        let m = scaled.round() as i128;
        BigReal {
            mant: (BigInt::from(m) << bits) >> 53,
            bits,
        }
    }

    /// Parse a plain decimal string like `-12.345` at the given scale.
    pub fn from_decimal_str(s: &str, bits: u32) -> Option<Self> {
        let (sign, rest) = match s.strip_prefix('-') {
            Some(r) => (-1, r),
            None => (1, s.strip_prefix('+').unwrap_or(s)),
        };
        let (int_part, frac_part) = match rest.split_once('.') {
            Some((a, b)) => (a, b),
            None => (rest, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return None;
        }
        let digits: String = format!("{int_part}{frac_part}");
        if !digits.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let n: BigInt = digits.parse().ok()?;
        let den = BigInt::from(10u32).pow(frac_part.len() as u32);
        let mant = shr_round((n << (bits + 1)) / den, 1);
        Some(BigReal {
            mant: mant * sign,
            bits,
        })
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Bit length of the mantissa magnitude (0 for the zero value).
    pub fn mant_bits(&self) -> u64 {
        self.mant.bits()
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn abs(&self) -> Self {
        BigReal {
            mant: self.mant.abs(),
            bits: self.bits,
        }
    }

    /// Exact multiplication by a machine integer.
    pub fn mul_i64(&self, k: i64) -> Self {
        BigReal {
            mant: &self.mant * k,
            bits: self.bits,
        }
    }

    pub fn div_i64(&self, k: i64) -> Self {
        assert!(k != 0, "division by zero");
        let (m, k) = if k < 0 {
            (-&self.mant, -k)
        } else {
            (self.mant.clone(), k)
        };
        BigReal {
            mant: shr_round((m << 1) / k, 1),
            bits: self.bits,
        }
    }

    /// Exact scaling by `2^k` (negative `k` shifts right, rounding).
    pub fn shl(&self, k: i64) -> Self {
        let mant = if k >= 0 {
            &self.mant << k as u32
        } else {
            shr_round(self.mant.clone(), (-k) as u32)
        };
        BigReal {
            mant,
            bits: self.bits,
        }
    }

    pub fn mul_bigint(&self, k: &BigInt) -> Self {
        BigReal {
            mant: &self.mant * k,
            bits: self.bits,
        }
    }

    /// Floor square root of a nonnegative value.
    pub fn sqrt(&self) -> Self {
        assert!(!self.is_negative(), "sqrt of negative value");
        let v: BigUint = (self.mant.clone() << self.bits).to_biguint().unwrap();
        BigReal {
            mant: BigInt::from_biguint(Sign::Plus, v.sqrt()),
            bits: self.bits,
        }
    }

    /// Integer power by binary powering; negative exponents invert.
    pub fn powi(&self, e: i64) -> Self {
        if e == 0 {
            return BigReal::one(self.bits);
        }
        if e < 0 {
            return BigReal::one(self.bits) / self.powi(-e);
        }
        let mut base = self.clone();
        let mut acc = BigReal::one(self.bits);
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

    /// Nearest integer.
    pub fn round_to_bigint(&self) -> BigInt {
        shr_round(self.mant.clone(), self.bits)
    }

    pub fn round_to_i64(&self) -> i64 {
        self.round_to_bigint()
            .to_i64()
            .expect("value too large for i64")
    }

    /// Smallest integer >= self.
    pub fn ceil_to_bigint(&self) -> BigInt {
        let one = BigInt::from(1) << self.bits;
        (&self.mant + (one - 1)) >> self.bits
    }

    /// Best-effort conversion; saturates to 0 / +-inf far outside f64 range.
    pub fn to_f64(&self) -> f64 {
        if self.mant.is_zero() {
            return 0.0;
        }
        let n = self.mant.bits() as i64;
        let (top, shift) = if n > 53 {
            ((&self.mant >> (n - 53) as u32).to_f64().unwrap(), n - 53)
        } else {
            (self.mant.to_f64().unwrap(), 0)
        };
        let k = shift - self.bits as i64;
        if k < -1100 {
            return 0.0;
        }
        if k > 1023 {
            return if self.mant.is_negative() {
                f64::NEG_INFINITY
            } else {
                f64::INFINITY
            };
        }
        top * 2f64.powi(k as i32)
    }

    /// Fixed-point decimal rendering with `frac_digits` digits after the point.
    pub fn to_decimal_string(&self, frac_digits: u32) -> String {
        let scale = BigInt::from(10u32).pow(frac_digits);
        let scaled = shr_round(&self.mant * &scale, self.bits);
        let neg = scaled.is_negative();
        let digits = scaled.abs().to_string();
        let digits = if digits.len() <= frac_digits as usize {
            format!("{}{}", "0".repeat(frac_digits as usize + 1 - digits.len()), digits)
        } else {
            digits
        };
        let (int_part, frac_part) = digits.split_at(digits.len() - frac_digits as usize);
        let sign = if neg { "-" } else { "" };
        if frac_digits == 0 {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{frac_part}")
        }
    }
}

impl fmt::Debug for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BigReal({} @{}b)", self.to_f64(), self.bits)
    }
}

macro_rules! same_bits {
    ($a:expr, $b:expr) => {
        debug_assert_eq!($a.bits, $b.bits, "mixed-precision arithmetic");
    };
}

impl Add for &BigReal {
    type Output = BigReal;
    fn add(self, rhs: &BigReal) -> BigReal {
        same_bits!(self, rhs);
        BigReal {
            mant: &self.mant + &rhs.mant,
            bits: self.bits,
        }
    }
}

impl Sub for &BigReal {
    type Output = BigReal;
    fn sub(self, rhs: &BigReal) -> BigReal {
        same_bits!(self, rhs);
        BigReal {
            mant: &self.mant - &rhs.mant,
            bits: self.bits,
        }
    }
}

impl Mul for &BigReal {
    type Output = BigReal;
    fn mul(self, rhs: &BigReal) -> BigReal {
        same_bits!(self, rhs);
        BigReal {
            mant: shr_round(&self.mant * &rhs.mant, self.bits),
            bits: self.bits,
        }
    }
}

impl Div for &BigReal {
    type Output = BigReal;
    fn div(self, rhs: &BigReal) -> BigReal {
        same_bits!(self, rhs);
        assert!(!rhs.mant.is_zero(), "division by zero BigReal");
        BigReal {
            mant: shr_round((self.mant.clone() << (self.bits + 1)) / &rhs.mant, 1),
            bits: self.bits,
        }
    }
}

impl Neg for &BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        BigReal {
            mant: -&self.mant,
            bits: self.bits,
        }
    }
}

impl Neg for BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        BigReal {
            mant: -self.mant,
            bits: self.bits,
        }
    }
}

impl Add for BigReal {
    type Output = BigReal;
    fn add(self, rhs: BigReal) -> BigReal {
        &self + &rhs
    }
}

impl Sub for BigReal {
    type Output = BigReal;
    fn sub(self, rhs: BigReal) -> BigReal {
        &self - &rhs
    }
}

impl Mul for BigReal {
    type Output = BigReal;
    fn mul(self, rhs: BigReal) -> BigReal {
        &self * &rhs
    }
}

impl Div for BigReal {
    type Output = BigReal;
    fn div(self, rhs: BigReal) -> BigReal {
        &self / &rhs
    }
}

impl AddAssign<&BigReal> for BigReal {
    fn add_assign(&mut self, rhs: &BigReal) {
        same_bits!(self, rhs);
        self.mant += &rhs.mant;
    }
}

impl SubAssign<&BigReal> for BigReal {
    fn sub_assign(&mut self, rhs: &BigReal) {
        same_bits!(self, rhs);
        self.mant -= &rhs.mant;
    }
}

impl PartialOrd for BigReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BigReal {
    fn cmp(&self, other: &Self) -> Ordering {
        same_bits!(self, other);
        self.mant.cmp(&other.mant)
    }
}

// ---------------------------------------------------------------------------
// Transcendental kernels. Free functions over (value, cached constants).
// ---------------------------------------------------------------------------

/// atan(1/x) for a small integer x, by the Taylor series in pure integer
/// arithmetic. Used only for the Machin formula.
fn atan_inv(x: u64, bits: u32) -> BigReal {
    let mut power = (BigInt::from(1) << bits) / x;
    let x2 = BigInt::from(x * x);
    let mut acc = BigInt::zero();
    let mut k: u64 = 0;
    while !power.is_zero() {
        let term = &power / (2 * k + 1);
        if k.is_multiple_of(2) {
            acc += term;
        } else {
            acc -= term;
        }
        power /= &x2;
        k += 1;
    }
    BigReal::from_raw(acc, bits)
}

/// pi by Machin's formula: pi = 16 atan(1/5) - 4 atan(1/239).
pub(crate) fn compute_pi(bits: u32) -> BigReal {
    // a few extra working bits keep the last digits honest
    let wb = bits + 16;
    let v = &atan_inv(5, wb).mul_i64(16) - &atan_inv(239, wb).mul_i64(4);
    BigReal::from_raw(shr_round(v.mant, 16), bits)
}

/// atanh(1/x) for a small integer x; ln 2 = 2 atanh(1/3).
fn atanh_inv(x: u64, bits: u32) -> BigReal {
    let mut power = (BigInt::from(1) << bits) / x;
    let x2 = BigInt::from(x * x);
    let mut acc = BigInt::zero();
    let mut k: u64 = 0;
    while !power.is_zero() {
        acc += &power / (2 * k + 1);
        power /= &x2;
        k += 1;
    }
    BigReal::from_raw(acc, bits)
}

pub(crate) fn compute_ln2(bits: u32) -> BigReal {
    let wb = bits + 16;
    let v = atanh_inv(3, wb).mul_i64(2);
    BigReal::from_raw(shr_round(v.mant, 16), bits)
}

/// exp(x) with argument reduction by ln 2; exact zero on deep underflow.
pub(crate) fn exp(x: &BigReal, ln2: &BigReal) -> BigReal {
    let bits = x.bits();
    // k = nearest integer to x / ln2
    let k_big = (x / ln2).round_to_bigint();
    // underflow: the result would be below one ulp
    if k_big < BigInt::from(-(bits as i64) - 2) {
        return BigReal::zero(bits);
    }
    let k = k_big.to_i64().expect("exp argument out of range");
    let r = x - &ln2.mul_bigint(&BigInt::from(k));
    // Taylor on |r| <= ln2/2
    let mut term = BigReal::one(bits);
    let mut sum = BigReal::one(bits);
    let mut n: i64 = 1;
    loop {
        term = (&term * &r).div_i64(n);
        if term.is_zero() {
            break;
        }
        sum += &term;
        n += 1;
    }
    sum.shl(k)
}

/// Simultaneous sin and cos with range reduction modulo 2 pi.
pub(crate) fn sin_cos(x: &BigReal, two_pi: &BigReal) -> (BigReal, BigReal) {
    let bits = x.bits();
    let k = (x / two_pi).round_to_bigint();
    let u = x - &two_pi.mul_bigint(&k);
    let u2 = &u * &u;
    // sin
    let mut term = u.clone();
    let mut s = u.clone();
    let mut n: i64 = 1;
    loop {
        term = (&term * &u2).div_i64(-(2 * n) * (2 * n + 1));
        if term.is_zero() {
            break;
        }
        s += &term;
        n += 1;
    }
    // cos
    let mut term = BigReal::one(bits);
    let mut c = BigReal::one(bits);
    let mut n: i64 = 1;
    loop {
        term = (&term * &u2).div_i64(-(2 * n - 1) * (2 * n));
        if term.is_zero() {
            break;
        }
        c += &term;
        n += 1;
    }
    (s, c)
}

/// Natural logarithm of a positive value.
pub(crate) fn ln(x: &BigReal, ln2: &BigReal) -> BigReal {
    assert!(
        !x.is_zero() && !x.is_negative(),
        "ln of a non-positive value"
    );
    let bits = x.bits();
    // normalize to m in [1, 2)
    let e = x.mant.bits() as i64 - 1 - bits as i64;
    let m = x.shl(-e);
    let num = &m - &BigReal::one(bits);
    let den = &m + &BigReal::one(bits);
    let u = &num / &den;
    let u2 = &u * &u;
    let mut term = u.clone();
    let mut s = u;
    let mut n: i64 = 1;
    loop {
        term = &term * &u2;
        if term.is_zero() {
            break;
        }
        s += &term.div_i64(2 * n + 1);
        n += 1;
    }
    &s.mul_i64(2) + &ln2.mul_bigint(&BigInt::from(e))
}
