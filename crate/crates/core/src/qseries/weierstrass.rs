//! The Weierstrass p-function on the lattice [tau, 1] via its double
//! q-series, and the Fricke and Weber normalizations of the x-coordinate.

use super::{abs_q, delta, g2, g3, j, q_z, HalfPlanePoint, IndexPair};
use crate::error::{Error, Result};
use crate::numerics::{BigComplex, BigReal, PrecisionContext};

/// p(r1 tau + r2; [tau, 1]) by the Fourier expansion
///
///   (2 pi i)^2 [ 1/12 + q_z/(1-q_z)^2
///                + sum_{m,n >= 1} n q^{mn} (q_z^n + q_z^{-n} - 2) ].
///
/// Both indices are truncated once the tracked term bound drops below the
/// series cutoff. The index is first reduced mod 1 (the function is periodic
/// on the lattice), so q_z never decays slower than q itself allows.
pub fn wp(r: &IndexPair, tau: &HalfPlanePoint, ctx: &PrecisionContext) -> Result<BigComplex> {
    if r.is_zero_mod_level() {
        return Err(Error::IndexOnLattice);
    }
    let r = r.canonical();
    let bits = ctx.bits();
    // the n-weighted terms rise before they decay when |q|^{1-r1} is close
    // to 1; the extra 2^16 margin keeps the first-crossing break sound
    let cutoff = ctx.series_cutoff().shl(-16);
    let one = BigComplex::one(bits);

    let q = super::q_pow(tau, num_rational::Rational64::new(1, 1), ctx);
    let qz = q_z(&r, tau, ctx);
    let qz_inv = qz.recip();

    let one_minus = &one - &qz;
    let mut total = &BigComplex::from_real(BigReal::from_ratio(1, 12, bits))
        + &(&qz / &(&one_minus * &one_minus));

    // Rows of the double sum are grouped by the q-power partner m. Each
    // term n q^{mn}(q_z^n + q_z^{-n} - 2) is assembled from the bases
    // v_m = q^m q_z, u_m = q^m q_z^{-1} and q^m, all of modulus < 1 for a
    // canonical index, so no intermediate ever underflows the fixed-point
    // scale before a large factor is applied.
    let absq = abs_q(tau, ctx);
    // |u_1| = |q|^{1 - r1}, the slowest-decaying base
    let n_lvl = r.level as i64;
    let abs_u = ctx.exp(
        &(&(-&ctx.two_pi()) * &tau.tau().im)
            .mul_i64(n_lvl - r.num1)
            .div_i64(n_lvl),
    );
    let abs_v = ctx.exp(
        &(&(-&ctx.two_pi()) * &tau.tau().im)
            .mul_i64(n_lvl + r.num1)
            .div_i64(n_lvl),
    );

    let mut v = &q * &qz; // v_m = q^m q_z
    let mut u = &q * &qz_inv; // u_m = q^m q_z^{-1}
    let mut qm = q.clone(); // q^m
    let mut abs_um = abs_u.clone();
    let mut abs_vm = abs_v.clone();
    let mut abs_qm = absq.clone();
    loop {
        // the n = 1 term bounds the whole row up to its geometric tail
        let row_lead = &(&abs_um + &abs_vm) + &abs_qm.mul_i64(2);
        if row_lead < cutoff {
            break;
        }
        let mut vn = v.clone();
        let mut un = u.clone();
        let mut qmn = qm.clone();
        let mut abs_un = abs_um.clone();
        let mut abs_vn = abs_vm.clone();
        let mut abs_qmn = abs_qm.clone();
        let mut n: i64 = 1;
        loop {
            let bound = (&(&abs_un + &abs_vn) + &abs_qmn.mul_i64(2)).mul_i64(n);
            if bound < cutoff {
                break;
            }
            let term = &(&vn + &un) - &qmn.scale_i64(2);
            total = &total + &term.scale_i64(n);
            vn = &vn * &v;
            un = &un * &u;
            qmn = &qmn * &qm;
            abs_un = &abs_un * &abs_um;
            abs_vn = &abs_vn * &abs_vm;
            abs_qmn = &abs_qmn * &abs_qm;
            n += 1;
        }
        v = &v * &q;
        u = &u * &q;
        qm = &qm * &q;
        abs_um = &abs_um * &absq;
        abs_vm = &abs_vm * &absq;
        abs_qm = &abs_qm * &absq;
    }

    // (2 pi i)^2 = -(2 pi)^2
    let c = -ctx.two_pi().powi(2);
    Ok(total.scale(&c))
}

/// Fricke function of level N: -(2^7 3^5 g2 g3 / Delta) p(r1 tau + r2).
pub fn fricke(r: &IndexPair, tau: &HalfPlanePoint, ctx: &PrecisionContext) -> Result<BigComplex> {
    let w = wp(r, tau, ctx)?;
    let scale = &(&g2(tau, ctx) * &g3(tau, ctx)) / &delta(tau, ctx);
    Ok((&w * &scale).scale_i64(-(1 << 7) * 243))
}

/// Weber function h on the curve for the lattice [tau, 1], with the branch
/// picked by the value of j: generic (g2 g3/Delta) p, square branch at
/// j = 1728, cube branch at j = 0. Branch values are recognized within
/// 10^(-digits/2), which at CM points is unambiguous.
pub fn weber_h(r: &IndexPair, tau: &HalfPlanePoint, ctx: &PrecisionContext) -> Result<BigComplex> {
    let w = wp(r, tau, ctx)?;
    let jv = j(tau, ctx);
    let d = delta(tau, ctx);
    let near = ctx.pow10(-(ctx.decimal_digits() as i64) / 2);
    let j_1728 = &jv - &BigComplex::from_i64(1728, ctx.bits());
    if jv.abs() < near {
        // j = 0: h = (g3/Delta) p^3
        let scale = &g3(tau, ctx) / &d;
        Ok(&w.powi(3) * &scale)
    } else if j_1728.abs() < near {
        // j = 1728: h = (g2^2/Delta) p^2
        let scale = &g2(tau, ctx).powi(2) / &d;
        Ok(&w.powi(2) * &scale)
    } else {
        let scale = &(&g2(tau, ctx) * &g3(tau, ctx)) / &d;
        Ok(&w * &scale)
    }
}
