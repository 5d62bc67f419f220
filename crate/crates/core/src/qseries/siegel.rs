//! Siegel functions, Klein forms, and the y-coordinate quotient.
//!
//! The Siegel function is evaluated only at canonical indices through its
//! infinite product
//!
//!   g_r(tau) = -q^{B2(r1)/2} e^{pi i r2 (r1 - 1)} (1 - q_z)
//!              prod_{n>=1} (1 - q^n q_z)(1 - q^n q_z^{-1}),
//!
//! with z = r1 tau + r2 and q^x = e^{2 pi i tau x}. Non-canonical indices go
//! through [`reduce_index`](super::reduce_index) first, and the resulting
//! sign and root-of-unity factor are applied exactly afterwards.

use super::{abs_q, eta, half_b2, q_pow, q_z, reduce_index, HalfPlanePoint, IndexPair};
use crate::error::Result;
use crate::numerics::{BigComplex, Phase, PrecisionContext};

/// The product at an index already reduced to [0,1)^2.
fn siegel_canonical(
    r: &IndexPair,
    tau: &HalfPlanePoint,
    ctx: &PrecisionContext,
) -> BigComplex {
    debug_assert!(r.is_canonical() && !r.is_zero_mod_level());
    let n = r.level as i64;
    let bits = ctx.bits();
    let one = BigComplex::one(bits);
    let cutoff = ctx.series_cutoff();

    // -q^{B2(r1)/2} e^{pi i r2 (r1 - 1)}
    let lead = q_pow(tau, half_b2(r.num1, n), ctx);
    // e^{pi i r2 (r1 - 1)} = e^{2 pi i t}, t = p2 (p1 - N) / (2 N^2)
    let angle = Phase::new(r.num2 * (r.num1 - n), 2 * n * n);
    let prefactor = -&(&lead * &angle.value(ctx));

    let q = q_pow(tau, num_rational::Rational64::new(1, 1), ctx);
    let qz = q_z(r, tau, ctx);
    let qz_inv = qz.recip();

    let absq = abs_q(tau, ctx);
    // |q^n q_z^{-1}| = |q|^{n - r1} is the slower-decaying factor
    let abs_qz_inv = ctx.exp(
        &(&ctx.two_pi() * &tau.tau().im)
            .mul_i64(r.num1)
            .div_i64(n),
    );

    let mut prod = &one - &qz;
    let mut qn = q.clone();
    let mut abs_qn = absq.clone();
    loop {
        if &abs_qn * &abs_qz_inv < cutoff {
            break;
        }
        let f1 = &one - &(&qn * &qz);
        let f2 = &one - &(&qn * &qz_inv);
        prod = &(&prod * &f1) * &f2;
        qn = &qn * &q;
        abs_qn = &abs_qn * &absq;
    }
    &prefactor * &prod
}

/// Siegel function g_r(tau) for any index not congruent to (0,0) mod 1.
pub fn siegel(r: &IndexPair, tau: &HalfPlanePoint, ctx: &PrecisionContext) -> Result<BigComplex> {
    let (canonical, phase, sign) = reduce_index(r)?;
    let base = siegel_canonical(&canonical, tau, ctx);
    let with_phase = if phase.is_identity() {
        base
    } else {
        &base * &phase.value(ctx)
    };
    Ok(if sign < 0 { -&with_phase } else { with_phase })
}

/// Klein form: the Siegel function with the eta-square factor removed.
pub fn klein(r: &IndexPair, tau: &HalfPlanePoint, ctx: &PrecisionContext) -> Result<BigComplex> {
    let g = siegel(r, tau, ctx)?;
    Ok(&g / &eta(tau, ctx).powi(2))
}

/// y-coordinate function y_r = g_{2r} / g_r^4.
///
/// If 2r is congruent to (0,0) mod 1 (a 2-torsion index) the value is the
/// defined zero. Otherwise both indices are reduced and the combined phase
/// sign * e^{2 pi i (t_{2r} - 4 t_r)} is applied exactly once.
pub fn y_fn(r: &IndexPair, tau: &HalfPlanePoint, ctx: &PrecisionContext) -> Result<BigComplex> {
    // the denominator sign drops out: sign_r^4 = 1
    let (r_canon, r_phase, _) = reduce_index(r)?;
    let doubled = r.double();
    if doubled.is_zero_mod_level() {
        return Ok(BigComplex::zero(ctx.bits()));
    }
    let (d_canon, d_phase, d_sign) = reduce_index(&doubled)?;
    let num = siegel_canonical(&d_canon, tau, ctx);
    let den = siegel_canonical(&r_canon, tau, ctx).powi(4);
    let phase = d_phase + r_phase.pow(-4);
    let mut v = &num / &den;
    if !phase.is_identity() {
        v = &v * &phase.value(ctx);
    }
    Ok(if d_sign < 0 { -&v } else { v })
}
