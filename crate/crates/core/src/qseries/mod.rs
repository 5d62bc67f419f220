//! Modular forms and functions evaluated at a point of the upper half-plane
//! through their q-expansions and infinite products.
//!
//! Branch convention: q^x for rational x always means e^{2 pi i tau x}, so
//! every fractional power is evaluated through one complex exponential and
//! no branch cuts are crossed. Products and series stop once the tracked
//! term magnitude falls below the context's series cutoff.

mod eisenstein;
mod siegel;
mod weierstrass;

pub use eisenstein::{delta, eta, g2, g3, j};
pub use siegel::{klein, siegel, y_fn};
pub use weierstrass::{fricke, weber_h, wp};

use crate::error::{Error, Result};
use crate::numerics::{BigComplex, BigReal, Phase, PrecisionContext};
use num_rational::Rational64;

/// A point tau with im(tau) > 0, validated at construction.
#[derive(Clone, Debug)]
pub struct HalfPlanePoint {
    tau: BigComplex,
}

impl HalfPlanePoint {
    pub fn new(tau: BigComplex) -> Result<Self> {
        if tau.im.is_zero() || tau.im.is_negative() {
            return Err(Error::NotInUpperHalfPlane);
        }
        Ok(HalfPlanePoint { tau })
    }

    pub fn from_f64(re: f64, im: f64, ctx: &PrecisionContext) -> Result<Self> {
        let bits = ctx.bits();
        Self::new(BigComplex::new(
            BigReal::from_f64(re, bits),
            BigReal::from_f64(im, bits),
        ))
    }

    /// Purely imaginary point it.
    pub fn imaginary(t: &BigReal) -> Result<Self> {
        let bits = t.bits();
        Self::new(BigComplex::new(BigReal::zero(bits), t.clone()))
    }

    pub fn tau(&self) -> &BigComplex {
        &self.tau
    }

    /// -1/tau, again in the upper half-plane.
    pub fn apply_s(&self) -> HalfPlanePoint {
        HalfPlanePoint {
            tau: -&self.tau.recip(),
        }
    }

    /// tau + 1.
    pub fn apply_t(&self) -> HalfPlanePoint {
        let one = BigComplex::one(self.tau.bits());
        HalfPlanePoint {
            tau: &self.tau + &one,
        }
    }
}

/// The pair r = (num1/N, num2/N) indexing Siegel and Fricke functions.
///
/// Entries may be any integers; the canonical representative has both
/// numerators in [0, N).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct IndexPair {
    pub num1: i64,
    pub num2: i64,
    pub level: u32,
}

impl IndexPair {
    pub fn new(num1: i64, num2: i64, level: u32) -> Self {
        assert!(level >= 1, "level must be positive");
        IndexPair { num1, num2, level }
    }

    /// True when r is congruent to (0,0) mod 1, i.e. both entries are
    /// divisible by the level.
    pub fn is_zero_mod_level(&self) -> bool {
        let n = self.level as i64;
        self.num1.rem_euclid(n) == 0 && self.num2.rem_euclid(n) == 0
    }

    /// Entries reduced into [0, N).
    pub fn canonical(&self) -> IndexPair {
        let n = self.level as i64;
        IndexPair {
            num1: self.num1.rem_euclid(n),
            num2: self.num2.rem_euclid(n),
            level: self.level,
        }
    }

    pub fn is_canonical(&self) -> bool {
        let n = self.level as i64;
        (0..n).contains(&self.num1) && (0..n).contains(&self.num2)
    }

    /// The doubled index 2r at the same level.
    pub fn double(&self) -> IndexPair {
        IndexPair {
            num1: 2 * self.num1,
            num2: 2 * self.num2,
            level: self.level,
        }
    }

    pub fn r1(&self) -> Rational64 {
        Rational64::new(self.num1, self.level as i64)
    }

    pub fn r2(&self) -> Rational64 {
        Rational64::new(self.num2, self.level as i64)
    }
}

/// Reduce an index to its canonical representative, returning the exact
/// transfer factor: g_original = sign * e^{2 pi i phase} * g_canonical.
///
/// The factor is the epsilon of the integer-translation law evaluated
/// symbolically, with its (-1)^{s1 s2 + s1 + s2} part split off as `sign`
/// and the remaining e^{-pi i (s1 r2 - s2 r1)} kept as an exact rational
/// phase.
pub fn reduce_index(r: &IndexPair) -> Result<(IndexPair, Phase, i32)> {
    if r.is_zero_mod_level() {
        return Err(Error::ZeroIndex {
            num1: r.num1,
            num2: r.num2,
            level: r.level,
        });
    }
    let n = r.level as i64;
    let canonical = r.canonical();
    let s1 = (r.num1 - canonical.num1) / n;
    let s2 = (r.num2 - canonical.num2) / n;
    let sign = if (s1 * s2 + s1 + s2).rem_euclid(2) == 1 {
        -1
    } else {
        1
    };
    // e^{-pi i (s1 r2 - s2 r1)} = e^{2 pi i t}, t = -(s1 p2 - s2 p1)/(2N)
    let phase = Phase::new(-(s1 * canonical.num2 - s2 * canonical.num1), 2 * n);
    Ok((canonical, phase, sign))
}

/// The q-order of a Siegel function: (1/2) B2(<r1>) with B2(X) = X^2 - X + 1/6.
pub fn siegel_order(r: &IndexPair) -> Result<Rational64> {
    if r.is_zero_mod_level() {
        return Err(Error::ZeroIndex {
            num1: r.num1,
            num2: r.num2,
            level: r.level,
        });
    }
    let n = r.level as i64;
    let p1 = r.num1.rem_euclid(n);
    Ok(Rational64::new(6 * p1 * p1 - 6 * p1 * n + n * n, 12 * n * n))
}

/// Half the second Bernoulli polynomial at p1/n, as an exact rational.
pub(crate) fn half_b2(p1: i64, n: i64) -> Rational64 {
    Rational64::new(6 * p1 * p1 - 6 * p1 * n + n * n, 12 * n * n)
}

/// q^x = e^{2 pi i tau x} for an exact rational exponent x.
pub(crate) fn q_pow(tau: &HalfPlanePoint, x: Rational64, ctx: &PrecisionContext) -> BigComplex {
    let t = tau.tau();
    let factor = ctx.two_pi().mul_i64(*x.numer()).div_i64(*x.denom());
    ctx.cexp(&(-&(&factor * &t.im)), &(&factor * &t.re))
}

/// q_z = e^{2 pi i (r1 tau + r2)} for the index point z = r1 tau + r2.
pub(crate) fn q_z(r: &IndexPair, tau: &HalfPlanePoint, ctx: &PrecisionContext) -> BigComplex {
    let t = tau.tau();
    let n = r.level as i64;
    let two_pi = ctx.two_pi();
    let re_part = &(-&two_pi.mul_i64(r.num1).div_i64(n)) * &t.im;
    let angle = &(&two_pi.mul_i64(r.num1).div_i64(n) * &t.re) + &two_pi.mul_i64(r.num2).div_i64(n);
    ctx.cexp(&re_part, &angle)
}

/// |q| = e^{-2 pi im(tau)}: the decay rate every tail bound tracks.
pub(crate) fn abs_q(tau: &HalfPlanePoint, ctx: &PrecisionContext) -> BigReal {
    ctx.exp(&(-&(&ctx.two_pi() * &tau.tau().im)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::with_precision;

    #[test]
    fn canonicalization_examples() {
        // already canonical: identity transfer
        let r = IndexPair::new(0, 1, 5);
        let (c, ph, sg) = reduce_index(&r).unwrap();
        assert_eq!(c, r);
        assert!(ph.is_identity());
        assert_eq!(sg, 1);

        // (0, 1 + 1/N): shift s = (0,1), epsilon = (-1)^{0+0+1} = -1
        let r = IndexPair::new(0, 6, 5);
        let (c, ph, sg) = reduce_index(&r).unwrap();
        assert_eq!(c, IndexPair::new(0, 1, 5));
        assert!(ph.is_identity());
        assert_eq!(sg, -1);

        // (0, -1/N): canonical (0, (N-1)/N), s = (0,-1), epsilon = -1
        let r = IndexPair::new(0, -1, 5);
        let (c, ph, sg) = reduce_index(&r).unwrap();
        assert_eq!(c, IndexPair::new(0, 4, 5));
        assert!(ph.is_identity());
        assert_eq!(sg, -1);

        // a shift with a genuine phase: r = (1/5, 2/5), s = (1, 0)
        // epsilon = (-1)^{0+1+0} e^{-pi i (1 * 2/5)} -> sign -1, t = -1/5 mod 1
        let r = IndexPair::new(6, 2, 5);
        let (c, ph, sg) = reduce_index(&r).unwrap();
        assert_eq!(c, IndexPair::new(1, 2, 5));
        assert_eq!(sg, -1);
        assert_eq!(ph, Phase::new(-1, 5));
    }

    #[test]
    fn zero_index_is_rejected() {
        assert!(reduce_index(&IndexPair::new(0, 0, 7)).is_err());
        assert!(reduce_index(&IndexPair::new(7, -14, 7)).is_err());
        assert!(siegel_order(&IndexPair::new(14, 7, 7)).is_err());
    }

    #[test]
    fn siegel_order_values() {
        // r = (0, t/N): B2(0)/2 = 1/12
        let r = IndexPair::new(0, 3, 7);
        assert_eq!(siegel_order(&r).unwrap(), Rational64::new(1, 12));
        // r = (1/3, 0): B2(1/3)/2 = -1/36
        let r = IndexPair::new(1, 0, 3);
        assert_eq!(siegel_order(&r).unwrap(), Rational64::new(-1, 36));
        // r = (1/2, 0): B2(1/2)/2 = -1/24
        let r = IndexPair::new(1, 0, 2);
        assert_eq!(siegel_order(&r).unwrap(), Rational64::new(-1, 24));
        // order depends on r1 only through its fractional part
        let r = IndexPair::new(-2, 1, 3);
        assert_eq!(siegel_order(&r).unwrap(), Rational64::new(-1, 36));
    }

    #[test]
    fn upper_half_plane_is_enforced() {
        let ctx = with_precision(60).unwrap();
        assert!(HalfPlanePoint::from_f64(0.3, 1.1, &ctx).is_ok());
        assert!(HalfPlanePoint::from_f64(0.3, 0.0, &ctx).is_err());
        assert!(HalfPlanePoint::from_f64(0.3, -1.0, &ctx).is_err());
    }
}
