//! Fundamental discriminants, CM points, and the enumeration of reduced
//! primitive positive definite binary quadratic forms.
//!
//! The form class group C(d_K) is used downstream purely as an index set for
//! Galois conjugates, so no composition law is implemented; the reduced
//! representatives are characterized by
//!
//!   (-a < b <= a < c  or  0 <= b <= a = c),  b^2 - 4ac = d_K,  gcd(a,b,c) = 1,
//!
//! which forces a <= sqrt(-d_K/3).

use crate::error::{Error, Result};
use crate::numerics::{BigComplex, BigReal, PrecisionContext};
use crate::qseries::HalfPlanePoint;
use num_integer::Integer;

/// An imaginary quadratic field of fundamental discriminant d_K, together
/// with its standard CM generator theta_K and the minimal-polynomial data
/// X^2 + B X + C of theta_K.
#[derive(Clone, Debug)]
pub struct CMField {
    d_k: i64,
    b_theta: i64,
    c_theta: i64,
    theta: BigComplex,
}

/// A reduced primitive positive definite form [a, b, c].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ReducedForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl ReducedForm {
    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }
}

impl std::fmt::Display for ReducedForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}, {}, {}]", self.a, self.b, self.c)
    }
}

fn squarefree(mut n: i64) -> bool {
    n = n.abs();
    let mut p = 2i64;
    while p * p <= n {
        if n % (p * p) == 0 {
            return false;
        }
        p += 1;
    }
    true
}

/// d is the discriminant of the ring of integers of an imaginary quadratic
/// field: d < 0 and either d = 1 (mod 4) squarefree, or d = 4m with m
/// squarefree and m = 2, 3 (mod 4).
pub fn is_fundamental_discriminant(d: i64) -> bool {
    if d >= 0 {
        return false;
    }
    match d.rem_euclid(4) {
        1 => squarefree(d),
        0 => {
            let m = d / 4;
            let r = m.rem_euclid(4);
            (r == 2 || r == 3) && squarefree(m)
        }
        _ => false,
    }
}

/// Build the field data for a fundamental discriminant d_K < 0.
///
/// theta_K = sqrt(d_K)/2 when d_K = 0 (mod 4) and (-1 + sqrt(d_K))/2 when
/// d_K = 1 (mod 4); in both cases O_K = [theta_K, 1].
pub fn make_field(d_k: i64, ctx: &PrecisionContext) -> Result<CMField> {
    if !is_fundamental_discriminant(d_k) {
        return Err(Error::BadDiscriminant(d_k));
    }
    let bits = ctx.bits();
    let root = BigReal::from_i64(-d_k, bits).sqrt(); // sqrt(|d_K|)
    let (b_theta, c_theta, theta) = if d_k.rem_euclid(4) == 0 {
        (
            0,
            -d_k / 4,
            BigComplex::new(BigReal::zero(bits), root.div_i64(2)),
        )
    } else {
        (
            1,
            (1 - d_k) / 4,
            BigComplex::new(BigReal::from_ratio(-1, 2, bits), root.div_i64(2)),
        )
    };
    Ok(CMField {
        d_k,
        b_theta,
        c_theta,
        theta,
    })
}

impl CMField {
    pub fn discriminant(&self) -> i64 {
        self.d_k
    }

    pub fn b_theta(&self) -> i64 {
        self.b_theta
    }

    pub fn c_theta(&self) -> i64 {
        self.c_theta
    }

    pub fn theta(&self) -> &BigComplex {
        &self.theta
    }

    /// theta_K as a validated upper-half-plane point.
    pub fn theta_point(&self) -> HalfPlanePoint {
        HalfPlanePoint::new(self.theta.clone()).expect("theta_K has positive imaginary part")
    }
}

/// Exhaustively enumerate the reduced forms of discriminant d_K, sorted by
/// (a, b). The list length is the class number h(d_K).
pub fn reduced_forms(d_k: i64) -> Result<Vec<ReducedForm>> {
    if !is_fundamental_discriminant(d_k) {
        return Err(Error::BadDiscriminant(d_k));
    }
    let mut out = Vec::new();
    let mut a = 1i64;
    while 3 * a * a <= -d_k {
        for b in (-a + 1)..=a {
            if (b - d_k).rem_euclid(2) != 0 {
                continue;
            }
            let num = b * b - d_k;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a {
                continue;
            }
            if a == c && b < 0 {
                continue;
            }
            if a.gcd(&b).gcd(&c) != 1 {
                continue;
            }
            out.push(ReducedForm { a, b, c });
        }
        a += 1;
    }
    out.sort();
    Ok(out)
}

/// The CM point theta_Q = (-b + sqrt(d_K)) / (2a) attached to a reduced form.
pub fn theta_q(q: &ReducedForm, ctx: &PrecisionContext) -> BigComplex {
    let bits = ctx.bits();
    let root = BigReal::from_i64(-q.discriminant(), bits).sqrt();
    BigComplex::new(
        BigReal::from_ratio(-q.b, 2 * q.a, bits),
        root.div_i64(2 * q.a),
    )
}

/// The reduced representative of the unit class.
pub fn unit_form(d_k: i64) -> Result<ReducedForm> {
    if !is_fundamental_discriminant(d_k) {
        return Err(Error::BadDiscriminant(d_k));
    }
    Ok(if d_k.rem_euclid(4) == 0 {
        ReducedForm {
            a: 1,
            b: 0,
            c: -d_k / 4,
        }
    } else {
        ReducedForm {
            a: 1,
            b: 1,
            c: (1 - d_k) / 4,
        }
    })
}
