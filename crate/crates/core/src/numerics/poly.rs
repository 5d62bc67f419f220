//! Dense polynomials: root-product expansion over [`BigComplex`] and the
//! rounding step that turns a numerically integral polynomial into an exact
//! [`IntPolynomial`].

use super::{BigComplex, BigReal, PrecisionContext};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::Zero;
use std::fmt;

/// Univariate polynomial with arbitrary-size integer coefficients, stored in
/// ascending degree. The zero polynomial has an empty coefficient list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    /// Coefficients in ascending degree.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| *c == BigInt::from(1))
    }
}

impl fmt::Display for IntPolynomial {
    /// One-line form with explicit `*`, descending powers, e.g.
    /// `X^2 - 3*X + 1`. Suitable for pasting into a CAS.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.magnitude();
            let neg = c.sign() == num_bigint::Sign::Minus;
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let one = mag == &num_bigint::BigUint::from(1u32);
            match (k, one) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "X")?,
                (1, false) => write!(f, "{mag}*X")?,
                (_, true) => write!(f, "X^{k}")?,
                (_, false) => write!(f, "{mag}*X^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Expand prod_i (X - root_i) by repeated multiplication.
///
/// Returns monic coefficients in ascending degree (the leading 1 included).
pub fn poly_from_roots(roots: &[BigComplex], ctx: &PrecisionContext) -> Vec<BigComplex> {
    assert!(!roots.is_empty(), "poly_from_roots needs at least one root");
    let bits = ctx.bits();
    let mut coeffs = vec![BigComplex::one(bits)];
    for root in roots {
        let mut next = vec![BigComplex::zero(bits); coeffs.len() + 1];
        for (k, c) in coeffs.iter().enumerate() {
            next[k + 1] = &next[k + 1] + c;
            next[k] = &next[k] - &(root * c);
        }
        coeffs = next;
    }
    coeffs
}

/// Round numerically integral complex coefficients to an [`IntPolynomial`].
///
/// Every coefficient must have |imag| < tol and distance < tol from the
/// nearest integer; the first violation is reported with its degree.
pub fn round_to_integer_poly(coeffs: &[BigComplex], tol: &BigReal) -> Result<IntPolynomial> {
    assert!(!tol.is_zero() && !tol.is_negative(), "tolerance must be positive");
    let mut out = Vec::with_capacity(coeffs.len());
    for (degree, c) in coeffs.iter().enumerate() {
        if c.im.abs() >= *tol {
            return Err(Error::IntegralityFailure {
                degree,
                residual: c.im.abs().to_f64(),
            });
        }
        let n = c.re.round_to_bigint();
        let residual = (&c.re - &BigReal::from_bigint(&n, c.re.bits())).abs();
        if residual >= *tol {
            return Err(Error::IntegralityFailure {
                degree,
                residual: residual.to_f64(),
            });
        }
        out.push(n);
    }
    Ok(IntPolynomial::new(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::with_precision;

    fn ctx() -> PrecisionContext {
        with_precision(60).unwrap()
    }

    fn c(re: i64, ctx: &PrecisionContext) -> BigComplex {
        BigComplex::from_i64(re, ctx.bits())
    }

    #[test]
    fn difference_of_squares() {
        let ctx = ctx();
        let coeffs = poly_from_roots(&[c(1, &ctx), c(-1, &ctx)], &ctx);
        let p = round_to_integer_poly(&coeffs, &ctx.integrality_tolerance()).unwrap();
        assert_eq!(p.coeffs(), &[BigInt::from(-1), BigInt::from(0), BigInt::from(1)]);
        assert_eq!(p.to_string(), "X^2 - 1");
    }

    #[test]
    fn single_zero_root_gives_x() {
        let ctx = ctx();
        let coeffs = poly_from_roots(&[c(0, &ctx)], &ctx);
        let p = round_to_integer_poly(&coeffs, &ctx.integrality_tolerance()).unwrap();
        assert_eq!(p.coeffs(), &[BigInt::from(0), BigInt::from(1)]);
        assert_eq!(p.to_string(), "X");
        assert!(p.is_monic());
    }

    #[test]
    fn near_integer_coefficient_rounds() {
        let ctx = ctx();
        let bits = ctx.bits();
        // [3 + 1e-40 i, 1] -> X + 3
        let eps = BigReal::from_ratio(1, 10, bits).powi(40);
        let coeffs = vec![
            BigComplex::new(BigReal::from_i64(3, bits), eps),
            BigComplex::one(bits),
        ];
        let tol = BigReal::from_ratio(1, 10, bits).powi(30);
        let p = round_to_integer_poly(&coeffs, &tol).unwrap();
        assert_eq!(p.to_string(), "X + 3");
    }

    #[test]
    fn half_integer_fails_at_reported_degree() {
        let ctx = ctx();
        let bits = ctx.bits();
        let coeffs = vec![
            BigComplex::from_real(BigReal::from_ratio(1, 2, bits)),
            BigComplex::one(bits),
        ];
        let tol = BigReal::from_ratio(1, 10, bits).powi(30);
        match round_to_integer_poly(&coeffs, &tol) {
            Err(Error::IntegralityFailure { degree: 0, residual }) => {
                assert!((residual - 0.5).abs() < 1e-12);
            }
            other => panic!("expected integrality failure at degree 0, got {other:?}"),
        }
    }

    #[test]
    fn permutation_invariance() {
        let ctx = ctx();
        let bits = ctx.bits();
        let roots = [
            BigComplex::new(BigReal::from_ratio(5, 3, bits), BigReal::from_ratio(1, 7, bits)),
            BigComplex::new(BigReal::from_ratio(-2, 9, bits), BigReal::from_ratio(4, 5, bits)),
            BigComplex::new(BigReal::from_i64(2, bits), BigReal::from_i64(-1, bits)),
            BigComplex::from_i64(-3, bits),
        ];
        let base = poly_from_roots(&roots, &ctx);
        let mut perm = roots.to_vec();
        perm.rotate_left(2);
        perm.swap(0, 1);
        let other = poly_from_roots(&perm, &ctx);
        let tol = BigReal::from_ratio(1, 10, bits).powi(40);
        for (a, b) in base.iter().zip(&other) {
            assert!((a - b).smaller_than(&tol));
        }
    }
}
