//! The Dedekind eta function, the Eisenstein weights g2 and g3, the modular
//! discriminant and the elliptic modular function j.
//!
//! Normalizations:
//!   eta(tau)  = sqrt(2 pi) zeta_8 q^{1/24} prod (1 - q^n)
//!   g2(tau)   = ((2 pi)^4 / 12) (1 + 240 sum sigma_3(n) q^n)
//!   g3(tau)   = ((2 pi)^6 / 216) (1 - 504 sum sigma_5(n) q^n)
//!   Delta     = (2 pi i)^12 q prod (1 - q^n)^24
//!   j         = 1728 g2^3 / Delta
//! so that eta^24 = Delta = g2^3 - 27 g3^2.

use super::{abs_q, q_pow, HalfPlanePoint};
use crate::numerics::{BigComplex, BigReal, PrecisionContext};
use num_rational::Rational64;

/// prod_{n>=1} (1 - q^n), truncated once |q|^n drops below the cutoff.
fn euler_product(q: &BigComplex, absq: &BigReal, ctx: &PrecisionContext) -> BigComplex {
    let cutoff = ctx.series_cutoff();
    let one = BigComplex::one(ctx.bits());
    let mut prod = one.clone();
    let mut qn = q.clone();
    let mut abs_qn = absq.clone();
    while abs_qn >= cutoff {
        prod = &prod * &(&one - &qn);
        qn = &qn * q;
        abs_qn = &abs_qn * absq;
    }
    prod
}

/// Dedekind eta.
pub fn eta(tau: &HalfPlanePoint, ctx: &PrecisionContext) -> BigComplex {
    let q = q_pow(tau, Rational64::new(1, 1), ctx);
    let absq = abs_q(tau, ctx);
    let prod = euler_product(&q, &absq, ctx);
    let zeta8 = ctx.unit(1, 8);
    let sqrt_two_pi = ctx.two_pi().sqrt();
    let pref = q_pow(tau, Rational64::new(1, 24), ctx).scale(&sqrt_two_pi);
    &(&pref * &zeta8) * &prod
}

/// Divisor-sum sieve for sigma_k up to n_max inclusive. i128 keeps
/// sigma_5 exact far beyond any reachable truncation length.
fn divisor_sums(n_max: usize, k: u32) -> Vec<i128> {
    let mut s = vec![0i128; n_max + 1];
    for d in 1..=n_max {
        let dk = (d as i128).pow(k);
        let mut m = d;
        while m <= n_max {
            s[m] += dk;
            m += d;
        }
    }
    s
}

/// Number of series terms needed so that coef_bound * n^k |q|^n < cutoff.
fn series_length(absq: &BigReal, k: u32, coef_bound: i64, ctx: &PrecisionContext) -> usize {
    let cutoff = ctx.series_cutoff();
    let mut abs_qn = absq.clone();
    let mut n = 1usize;
    loop {
        let nk = num_bigint::BigInt::from(n).pow(k);
        let bound = abs_qn.mul_i64(coef_bound).mul_bigint(&nk);
        if bound < cutoff {
            return n;
        }
        abs_qn = &abs_qn * absq;
        n += 1;
    }
}

fn eisenstein_sum(
    tau: &HalfPlanePoint,
    k: u32,
    scale: i64,
    ctx: &PrecisionContext,
) -> BigComplex {
    let q = q_pow(tau, Rational64::new(1, 1), ctx);
    let absq = abs_q(tau, ctx);
    // sigma_k(n) <= zeta(k) n^k < 2 n^k
    let n_max = series_length(&absq, k, scale.abs() * 2, ctx);
    let sums = divisor_sums(n_max, k);
    let mut acc = BigComplex::one(ctx.bits());
    let mut qn = q.clone();
    for (n, s) in sums.iter().enumerate().skip(1) {
        let coef = num_bigint::BigInt::from(scale) * num_bigint::BigInt::from(*s);
        acc = &acc + &qn.scale_bigint(&coef);
        if n < n_max {
            qn = &qn * &q;
        }
    }
    acc
}

/// Eisenstein weight-4 form g2.
pub fn g2(tau: &HalfPlanePoint, ctx: &PrecisionContext) -> BigComplex {
    let series = eisenstein_sum(tau, 3, 240, ctx);
    let c = ctx.two_pi().powi(4).div_i64(12);
    series.scale(&c)
}

/// Eisenstein weight-6 form g3.
pub fn g3(tau: &HalfPlanePoint, ctx: &PrecisionContext) -> BigComplex {
    let series = eisenstein_sum(tau, 5, -504, ctx);
    let c = ctx.two_pi().powi(6).div_i64(216);
    series.scale(&c)
}

/// The modular discriminant by its product formula.
pub fn delta(tau: &HalfPlanePoint, ctx: &PrecisionContext) -> BigComplex {
    let q = q_pow(tau, Rational64::new(1, 1), ctx);
    let absq = abs_q(tau, ctx);
    let prod = euler_product(&q, &absq, ctx).powi(24);
    // (2 pi i)^12 = (2 pi)^12
    let c = ctx.two_pi().powi(12);
    (&q * &prod).scale(&c)
}

/// The elliptic modular function j = 1728 g2^3 / Delta.
pub fn j(tau: &HalfPlanePoint, ctx: &PrecisionContext) -> BigComplex {
    let num = g2(tau, ctx).powi(3).scale_i64(1728);
    &num / &delta(tau, ctx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::with_precision;

    fn ctx() -> PrecisionContext {
        with_precision(80).unwrap()
    }

    fn sample_tau(ctx: &PrecisionContext) -> HalfPlanePoint {
        // exactly 3/10 + 11/10 i, matching the reference evaluation
        HalfPlanePoint::new(BigComplex::new(
            ctx.real_from_ratio(3, 10),
            ctx.real_from_ratio(11, 10),
        ))
        .unwrap()
    }

    fn rel_err(a: &BigComplex, b: &BigComplex) -> f64 {
        ((a - b).abs() / b.abs()).to_f64()
    }

    // reference values computed with mpmath 1.3 at 90 digits
    const ETA_RE: &str = "1.2223107544704361880872162452265079926027733817789795971818818";
    const ETA_IM: &str = "1.4284017768771360155824632305321436140259308834856716568020311";
    const J_RE: &str = "356.64791175873224283430821814219859518518723809341115352608267";
    const J_IM: &str = "-781.10381249005312911673326548121093710118735875704009900511472";
    const G2_RE: &str = "120.05792111801982677190492523810057994120939382793103607760825";
    const G2_IM: &str = "29.370207407343587158655635346032822348622508802431390520734772";

    fn dec_pair(re: &str, im: &str, ctx: &PrecisionContext) -> BigComplex {
        BigComplex::new(
            BigReal::from_decimal_str(re, ctx.bits()).unwrap(),
            BigReal::from_decimal_str(im, ctx.bits()).unwrap(),
        )
    }

    #[test]
    fn eta_matches_reference_value() {
        let ctx = ctx();
        let tau = sample_tau(&ctx);
        let v = eta(&tau, &ctx);
        assert!(rel_err(&v, &dec_pair(ETA_RE, ETA_IM, &ctx)) < 1e-58);
    }

    #[test]
    fn j_matches_reference_value() {
        let ctx = ctx();
        let tau = sample_tau(&ctx);
        let v = j(&tau, &ctx);
        assert!(rel_err(&v, &dec_pair(J_RE, J_IM, &ctx)) < 1e-58);
    }

    #[test]
    fn g2_matches_reference_value() {
        let ctx = ctx();
        let tau = sample_tau(&ctx);
        let v = g2(&tau, &ctx);
        assert!(rel_err(&v, &dec_pair(G2_RE, G2_IM, &ctx)) < 1e-58);
    }

    #[test]
    fn eta_24_equals_delta() {
        let ctx = ctx();
        let tau = sample_tau(&ctx);
        let lhs = eta(&tau, &ctx).powi(24);
        let rhs = delta(&tau, &ctx);
        assert!(rel_err(&lhs, &rhs) < 1e-70);
    }

    #[test]
    fn weight_discriminant_identity() {
        let ctx = ctx();
        let tau = sample_tau(&ctx);
        let lhs = &g2(&tau, &ctx).powi(3) - &g3(&tau, &ctx).powi(2).scale_i64(27);
        let rhs = delta(&tau, &ctx);
        assert!(rel_err(&lhs, &rhs) < 1e-70);
    }

    #[test]
    fn eta_squared_transformation_laws() {
        let ctx = ctx();
        let tau = sample_tau(&ctx);
        let e2 = eta(&tau, &ctx).powi(2);
        // T: eta^2(tau + 1) = zeta_12 eta^2(tau)
        let lhs_t = eta(&tau.apply_t(), &ctx).powi(2);
        let rhs_t = &ctx.unit(1, 12) * &e2;
        assert!(rel_err(&lhs_t, &rhs_t) < 1e-70);
        // S: eta^2(-1/tau) = zeta_12^9 tau eta^2(tau)
        let lhs_s = eta(&tau.apply_s(), &ctx).powi(2);
        let rhs_s = &(&ctx.unit(9, 12) * tau.tau()) * &e2;
        assert!(rel_err(&lhs_s, &rhs_s) < 1e-65);
    }

    #[test]
    fn j_vanishes_at_the_hexagonal_point() {
        let ctx = ctx();
        let bits = ctx.bits();
        let half = BigReal::from_ratio(1, 2, bits);
        let theta = HalfPlanePoint::new(BigComplex::new(
            -&half,
            &BigReal::from_i64(3, bits).sqrt() / &BigReal::from_i64(2, bits),
        ))
        .unwrap();
        let v = j(&theta, &ctx);
        assert!(v.abs() < ctx.pow10(-58));
    }
}
