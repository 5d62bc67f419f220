//! Singular values of the y-coordinate, their full conjugate orbits, exact
//! integer minimal polynomials, the Kubert-Lang quadratic-relation predicate,
//! numerical verifiers for the two inequality lemmas, the exceptional-field
//! identity, and the normal-basis exponent bound.

use crate::class_forms::{make_field, reduced_forms, CMField, ReducedForm};
use crate::error::{Error, Result};
use crate::numerics::{
    poly_from_roots, round_to_integer_poly, BigComplex, BigReal, IntPolynomial, PrecisionContext,
};
use crate::qseries::{delta, g3, j, siegel, weber_h, y_fn, HalfPlanePoint, IndexPair};
use crate::reciprocity::{act_on_index, galois_labels, w_group, GaloisLabel};
use num_integer::Integer;
use rayon::prelude::*;

/// A finite family of Siegel indices with integer exponents, the object the
/// quadratic relation modulo N speaks about.
#[derive(Clone, Debug)]
pub struct ExponentFamily {
    pub pairs: Vec<(IndexPair, i64)>,
    pub level: u32,
}

impl ExponentFamily {
    pub fn new(pairs: Vec<(IndexPair, i64)>, level: u32) -> Self {
        assert!(pairs.iter().all(|(r, _)| r.level == level));
        ExponentFamily { pairs, level }
    }
}

/// The Kubert-Lang criterion: sum m (N r1)^2 = sum m (N r2)^2 = 0 modulo
/// gcd(2,N) N, sum m (N r1)(N r2) = 0 modulo N, and 12 | gcd(12,N) sum m.
/// All four congruences in exact integer arithmetic.
pub fn quadratic_relation_check(fam: &ExponentFamily) -> bool {
    let n = fam.level as i64;
    let modulus = 2.gcd(&n) * n;
    let (mut s11, mut s22, mut s12, mut se) = (0i64, 0i64, 0i64, 0i64);
    for (r, m) in &fam.pairs {
        s11 += m * r.num1 * r.num1;
        s22 += m * r.num2 * r.num2;
        s12 += m * r.num1 * r.num2;
        se += m;
    }
    s11.rem_euclid(modulus) == 0
        && s22.rem_euclid(modulus) == 0
        && s12.rem_euclid(n) == 0
        && (12.gcd(&n) * se).rem_euclid(12) == 0
}

/// The exponent 12N/gcd(6,N) that makes a single Siegel power land in the
/// level-N modular function field with an exact index action.
pub fn required_exponent(level: u32) -> i64 {
    let n = level as i64;
    12 * n / 6.gcd(&n)
}

fn check_level(level: u32) -> Result<()> {
    if level < 3 {
        return Err(Error::UnsupportedLevel { got: level, min: 3 });
    }
    Ok(())
}

fn check_exactness(level: u32, e: i64) -> Result<()> {
    let required = required_exponent(level);
    if e == 0 || e % required != 0 {
        return Err(Error::ExponentNotExact {
            exponent: e,
            required,
            level,
        });
    }
    Ok(())
}

/// The singular value y_{(0,1/N)}^e(theta_K).
pub fn singular_y(
    field: &CMField,
    level: u32,
    e: i64,
    ctx: &PrecisionContext,
) -> Result<BigComplex> {
    check_level(level)?;
    if field.discriminant() > -7 {
        return Err(Error::UnsupportedField(field.discriminant()));
    }
    if e == 0 {
        return Err(Error::ExponentNotExact {
            exponent: 0,
            required: required_exponent(level),
            level,
        });
    }
    let theta = field.theta_point();
    Ok(y_fn(&IndexPair::new(0, 1, level), &theta, ctx)?.powi(e))
}

/// The full conjugate orbit of y_{(0,1/N)}^e(theta_K) under Gal(K_(N)/K).
#[derive(Clone, Debug)]
pub struct OrbitReport {
    pub labels: Vec<GaloisLabel>,
    pub values: Vec<BigComplex>,
    pub exponent: i64,
    pub field: CMField,
    pub level: u32,
}

/// Evaluate every conjugate y^{alpha u_Q}(theta_Q).
///
/// For each label the composite matrix M = alpha u_Q sends the base indices
/// to (0,2/N)M and (0,1/N)M, and the conjugate is the Siegel quotient
/// (g_{(0,2/N)M} / g_{(0,1/N)M}^4)^e at theta_Q. The exponent must be a
/// nonzero multiple of 12N/gcd(6,N): those powers transform exactly, with no
/// leftover root of unity. Labels are evaluated in parallel.
pub fn conjugate_orbit(
    field: &CMField,
    level: u32,
    e: i64,
    ctx: &PrecisionContext,
) -> Result<OrbitReport> {
    check_level(level)?;
    check_exactness(level, e)?;
    let labels = galois_labels(level, field, ctx)?;
    let num_base = IndexPair::new(0, 2, level);
    let den_base = IndexPair::new(0, 1, level);
    let values = labels
        .par_iter()
        .map(|label| -> Result<BigComplex> {
            let m = label.composite();
            let num_idx = act_on_index(&num_base, &m)?;
            let den_idx = act_on_index(&den_base, &m)?;
            let theta = HalfPlanePoint::new(label.theta_eval.clone())
                .expect("theta_Q lies in the upper half-plane");
            let num = siegel(&num_idx, &theta, ctx)?;
            let den = siegel(&den_idx, &theta, ctx)?;
            Ok((&num / &den.powi(4)).powi(e))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(OrbitReport {
        labels,
        values,
        exponent: e,
        field: field.clone(),
        level,
    })
}

/// [K_(N):K] = |W_{N,theta}/{+-1}| * h(d_K).
pub fn field_degree(field: &CMField, level: u32) -> Result<usize> {
    let w = w_group(level, field)?;
    let forms = reduced_forms(field.discriminant())?;
    Ok(w.len() * forms.len())
}

/// The minimal polynomial of the integral normalization of the invariant.
#[derive(Clone, Debug)]
pub struct MinPolyOutcome {
    pub poly: IntPolynomial,
    /// The orbit values were scaled by N^scale_power before expansion;
    /// zero when y^e itself is an algebraic integer.
    pub scale_power: u32,
}

/// Expand prod (X - value) over the orbit and round to integers.
///
/// y^e(theta_K) is an algebraic integer whenever N has two distinct prime
/// factors, and often otherwise; when rounding fails for a prime-power N
/// the orbit is rescaled and expanded again. The clearing powers come from
/// the integrality of both N^4 y and N y^{-1} over Z[j]: N^{4e} for e > 0,
/// N^{|e|} for e < 0. The emitted polynomial is monic with exact integer
/// coefficients either way.
pub fn min_poly_invariant(
    field: &CMField,
    level: u32,
    e: i64,
    ctx: &PrecisionContext,
) -> Result<MinPolyOutcome> {
    let orbit = conjugate_orbit(field, level, e, ctx)?;
    let tol = ctx.integrality_tolerance();
    let plain = poly_from_roots(&orbit.values, ctx);
    match round_to_integer_poly(&plain, &tol) {
        Ok(poly) => Ok(MinPolyOutcome {
            poly,
            scale_power: 0,
        }),
        Err(first_err) => {
            let n = level as i64;
            if !is_prime_power(n) {
                return Err(first_err);
            }
            let scale_power = if e > 0 { 4 * e } else { -e } as u32;
            let scale = ctx.real_from_i64(n).powi(scale_power as i64);
            let scaled: Vec<BigComplex> =
                orbit.values.iter().map(|v| v.scale(&scale)).collect();
            let coeffs = poly_from_roots(&scaled, ctx);
            let poly = round_to_integer_poly(&coeffs, &tol)?;
            Ok(MinPolyOutcome { poly, scale_power })
        }
    }
}

fn is_prime_power(n: i64) -> bool {
    let mut n = n;
    let mut p = 2i64;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            return n == 1;
        }
        p += 1;
    }
    n > 1
}

/// Outcome of one inequality-lemma sweep.
#[derive(Clone, Debug)]
pub struct InequalityReport {
    pub max_ratio: f64,
    pub threshold: f64,
    /// Every swept point (s, t) with its form and ratio, descending by ratio.
    pub witnesses: Vec<InequalityWitness>,
    pub passed: bool,
}

#[derive(Clone, Debug)]
pub struct InequalityWitness {
    pub s: i64,
    pub t: i64,
    pub form: ReducedForm,
    pub ratio: f64,
}

/// |y_{(s/N, t/N)}(at)| / reference, with the 2-torsion value counted as 0.
fn ratio_at(
    s: i64,
    t: i64,
    level: u32,
    at: &HalfPlanePoint,
    reference: &BigReal,
    ctx: &PrecisionContext,
) -> Result<BigReal> {
    let r = IndexPair::new(s, t, level);
    let y = y_fn(&r, at, ctx)?;
    Ok(&y.abs() / reference)
}

fn sweep(
    level: u32,
    targets: &[(ReducedForm, HalfPlanePoint)],
    exclude_unit_pair: bool,
    threshold_millis: i64,
    field: &CMField,
    ctx: &PrecisionContext,
) -> Result<InequalityReport> {
    let n = level as i64;
    let theta_k = field.theta_point();
    let reference = y_fn(&IndexPair::new(0, 1, level), &theta_k, ctx)?.abs();
    let threshold = ctx.real_from_ratio(threshold_millis, 1000);

    // canonical sweep: s in [0, N/2], t in [0, N) covers Z^2 - NZ^2 up to
    // the symmetries that leave |g| unchanged
    let mut points = Vec::new();
    for s in 0..=(n / 2) {
        for t in 0..n {
            if s == 0 && t == 0 {
                continue;
            }
            if exclude_unit_pair && s == 0 && (t == 1 || t == n - 1) {
                continue;
            }
            points.push((s, t));
        }
    }

    let mut witnesses: Vec<InequalityWitness> = Vec::new();
    let mut max_ratio = BigReal::zero(ctx.bits());
    for (form, point) in targets {
        let ratios = points
            .par_iter()
            .map(|&(s, t)| ratio_at(s, t, level, point, &reference, ctx))
            .collect::<Result<Vec<_>>>()?;
        for (&(s, t), ratio) in points.iter().zip(ratios) {
            if ratio > max_ratio {
                max_ratio = ratio.clone();
            }
            witnesses.push(InequalityWitness {
                s,
                t,
                form: *form,
                ratio: ratio.to_f64(),
            });
        }
    }
    witnesses.sort_by(|a, b| b.ratio.total_cmp(&a.ratio));
    let passed = max_ratio < threshold;
    Ok(InequalityReport {
        max_ratio: max_ratio.to_f64(),
        threshold: threshold_millis as f64 / 1000.0,
        witnesses,
        passed,
    })
}

/// The non-principal-form inequality: for every reduced form with a >= 2 and
/// every (s,t) not congruent to (0,0) mod N,
/// |g_{2r}(theta_Q)/g_r^4(theta_Q)| < 0.996 |g_{(0,2/N)}(theta_K)/g_{(0,1/N)}^4(theta_K)|.
/// Requires d_K <= -20 and N >= 3.
pub fn verify_inequality1(
    field: &CMField,
    level: u32,
    ctx: &PrecisionContext,
) -> Result<InequalityReport> {
    check_level(level)?;
    if field.discriminant() > -20 {
        return Err(Error::Hypothesis(format!(
            "the a >= 2 bound requires d_K <= -20, got {}",
            field.discriminant()
        )));
    }
    let targets: Vec<(ReducedForm, HalfPlanePoint)> = reduced_forms(field.discriminant())?
        .into_iter()
        .filter(|q| q.a >= 2)
        .map(|q| {
            let point = HalfPlanePoint::new(crate::class_forms::theta_q(&q, ctx))
                .expect("theta_Q lies in the upper half-plane");
            (q, point)
        })
        .collect();
    sweep(level, &targets, false, 996, field, ctx)
}

/// The principal-form inequality: at theta_K itself, for (s,t) not congruent
/// to (0,0) or (0,+-1) mod N, the same ratio is below 0.614.
/// Requires d_K <= -11 and N >= 3.
pub fn verify_inequality2(
    field: &CMField,
    level: u32,
    ctx: &PrecisionContext,
) -> Result<InequalityReport> {
    check_level(level)?;
    if field.discriminant() > -11 {
        return Err(Error::Hypothesis(format!(
            "the principal-form bound requires d_K <= -11, got {}",
            field.discriminant()
        )));
    }
    let targets = vec![(
        crate::class_forms::unit_form(field.discriminant())?,
        field.theta_point(),
    )];
    sweep(level, &targets, true, 614, field, ctx)
}

/// Smallest positive integer s with
/// s >= (gcd(4,N)/4) log_{1/0.996} [K_(N):K]; the conjugates of
/// y_{(0,1/N)}^{4s/gcd(4,N)}(theta_K) then form a normal basis.
/// Requires d_K <= -19 and N >= 3.
pub fn normal_basis_exponent(field: &CMField, level: u32) -> Result<u64> {
    check_level(level)?;
    if field.discriminant() > -19 {
        return Err(Error::Hypothesis(format!(
            "the normal-basis bound requires d_K <= -19, got {}",
            field.discriminant()
        )));
    }
    let degree = field_degree(field, level)?;
    Ok(exponent_for_degree(degree as u64, level))
}

/// The bound itself, separated out so degenerate degrees stay testable.
pub fn exponent_for_degree(degree: u64, level: u32) -> u64 {
    if degree <= 1 {
        return 1;
    }
    // evaluated at a fixed small precision; the bound is nowhere near an
    // integer for desk-scale degrees
    let ctx = PrecisionContext::with_precision(64).expect("static precision is valid");
    let g = 4.gcd(&(level as i64));
    let log_deg = ctx.ln(&ctx.real_from_i64(degree as i64));
    let log_base = ctx.ln(&ctx.real_from_ratio(1000, 996));
    let bound = (&log_deg / &log_base).mul_i64(g).div_i64(4);
    let s = bound.ceil_to_bigint();
    use num_traits::ToPrimitive;
    s.to_u64().expect("normal-basis exponent fits in u64").max(1)
}

/// Everything the exceptional-case verification produces.
#[derive(Clone, Debug)]
pub struct ExceptionalReport {
    pub level: u32,
    pub y_squared: BigComplex,
    /// The sign for which (sign/3 sqrt(-3)) y^2 = 4 h + 1/27 closes.
    pub sign: i8,
    /// Absolute residual of the identity at the chosen sign.
    pub residual: BigReal,
    /// Absolute residual at the rejected sign.
    pub rejected_residual: BigReal,
    /// |g3^2/Delta + 1/27| at theta.
    pub g3_delta_residual: BigReal,
    /// |j(theta)|.
    pub j_abs: BigReal,
}

/// The exceptional field K = Q(sqrt(-3)): checks that
/// +-(1/3 sqrt(-3)) y_{(0,1/N)}^2(theta) = 4 h(phi(1/N)) + 1/27 closes for
/// exactly one sign (h on the cube branch, since j(theta) = 0), and records
/// the residuals together with g3^2/Delta = -1/27 and j(theta) = 0.
pub fn exceptional_invariant(level: u32, ctx: &PrecisionContext) -> Result<ExceptionalReport> {
    if level < 2 {
        return Err(Error::UnsupportedLevel { got: level, min: 2 });
    }
    let bits = ctx.bits();
    let half = BigReal::from_ratio(1, 2, bits);
    let theta = HalfPlanePoint::new(BigComplex::new(
        -&half,
        BigReal::from_i64(3, bits).sqrt().div_i64(2),
    ))?;

    let r = IndexPair::new(0, 1, level);
    let y2 = if r.double().is_zero_mod_level() {
        BigComplex::zero(bits)
    } else {
        y_fn(&r, &theta, ctx)?.powi(2)
    };
    let h = weber_h(&r, &theta, ctx)?;
    let rhs = &h.scale_i64(4) + &BigComplex::from_real(BigReal::from_ratio(1, 27, bits));

    // 1/(3 sqrt(-3)) = -i/(3 sqrt(3))
    let factor = BigComplex::new(
        BigReal::zero(bits),
        -&(&BigReal::one(bits) / &BigReal::from_i64(3, bits).sqrt().mul_i64(3)),
    );
    let lhs = &factor * &y2;
    let res_plus = (&lhs - &rhs).abs();
    let res_minus = (&(-&lhs) - &rhs).abs();

    let tol = &ctx.tolerance() * &ctx.pow10(10);
    let (sign, residual, rejected) = if res_plus <= res_minus {
        (1i8, res_plus, res_minus)
    } else {
        (-1i8, res_minus, res_plus)
    };
    if residual >= tol {
        return Err(Error::ExceptionalSign {
            plus: if sign == 1 {
                residual.to_f64()
            } else {
                rejected.to_f64()
            },
            minus: if sign == 1 {
                rejected.to_f64()
            } else {
                residual.to_f64()
            },
        });
    }

    let g3v = g3(&theta, ctx);
    let dv = delta(&theta, ctx);
    let g3_delta_residual = (&(&g3v.powi(2) / &dv)
        + &BigComplex::from_real(BigReal::from_ratio(1, 27, bits)))
        .abs();
    let j_abs = j(&theta, ctx).abs();

    Ok(ExceptionalReport {
        level,
        y_squared: y2,
        sign,
        residual,
        rejected_residual: rejected,
        g3_delta_residual,
        j_abs,
    })
}

/// Convenience constructor used by the CLI and the tests.
pub fn field_for(d_k: i64, ctx: &PrecisionContext) -> Result<CMField> {
    make_field(d_k, ctx)
}
