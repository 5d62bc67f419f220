//! Shimura reciprocity made explicit: the matrix group W_{N,theta_K}, the
//! Stevenhagen matrices u_Q assembled prime-by-prime and recombined by CRT,
//! and the right action of matrices on Siegel indices.
//!
//! Together these label every element of Gal(K_(N)/K) by a pair
//! (alpha, Q) in W_{N,theta_K}/{+-1} x C(d_K); the labeling is a bijection
//! but not a group homomorphism, so labels are never composed.

use crate::class_forms::{reduced_forms, theta_q, unit_form, CMField, ReducedForm};
use crate::error::{Error, Result};
use crate::numerics::{BigComplex, PrecisionContext};
use crate::qseries::IndexPair;
use num_integer::Integer;

/// A 2x2 matrix over Z/NZ with invertible determinant, entries in [0, N).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MatModN {
    entries: [[i64; 2]; 2],
    level: u32,
}

impl MatModN {
    pub fn new(entries: [[i64; 2]; 2], level: u32) -> Self {
        let n = level as i64;
        let entries = entries.map(|row| row.map(|x| x.rem_euclid(n)));
        MatModN { entries, level }
    }

    pub fn identity(level: u32) -> Self {
        MatModN::new([[1, 0], [0, 1]], level)
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn entries(&self) -> [[i64; 2]; 2] {
        self.entries
    }

    pub fn det(&self) -> i64 {
        let m = &self.entries;
        (m[0][0] * m[1][1] - m[0][1] * m[1][0]).rem_euclid(self.level as i64)
    }

    pub fn is_invertible(&self) -> bool {
        self.det().gcd(&(self.level as i64)) == 1
    }

    /// Matrix product modulo N.
    pub fn mul(&self, rhs: &MatModN) -> MatModN {
        assert_eq!(self.level, rhs.level, "level mismatch in matrix product");
        let a = &self.entries;
        let b = &rhs.entries;
        let mut out = [[0i64; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (jj, cell) in row.iter_mut().enumerate() {
                *cell = (0..2).map(|k| a[i][k] * b[k][jj]).sum();
            }
        }
        MatModN::new(out, self.level)
    }

    pub fn neg(&self) -> MatModN {
        MatModN::new(self.entries.map(|row| row.map(|x| -x)), self.level)
    }

    /// True if self equals other up to overall sign mod N.
    pub fn eq_mod_sign(&self, other: &MatModN) -> bool {
        *self == *other || *self == other.neg()
    }
}

impl std::fmt::Display for MatModN {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let m = &self.entries;
        write!(f, "({}, {}; {}, {})", m[0][0], m[0][1], m[1][0], m[1][1])
    }
}

/// One label of Gal(K_(N)/K): a coset representative alpha of
/// W_{N,theta_K}/{+-1}, a reduced form Q, the cached matrix u_Q and the
/// cached CM point theta_Q.
#[derive(Clone, Debug)]
pub struct GaloisLabel {
    pub alpha: MatModN,
    pub form: ReducedForm,
    pub u: MatModN,
    pub theta_eval: BigComplex,
    /// The (s, t) parameters of alpha, kept for reporting.
    pub s: i64,
    pub t: i64,
}

impl GaloisLabel {
    /// The matrix alpha * u_Q that acts on Siegel indices.
    pub fn composite(&self) -> MatModN {
        self.alpha.mul(&self.u)
    }
}

/// W_{N,theta_K} = {(t - B s, -C s; s, t)} with invertible determinant,
/// quotiented by +-1. The representative of {v, -v} is the lexicographically
/// smaller parameter vector (s, t), which places the first nonzero entry of
/// the scan in [1, N/2] and keeps the identity as itself; output is ordered
/// by (s, t).
pub fn w_group(level: u32, field: &CMField) -> Result<Vec<MatModN>> {
    if level < 3 {
        return Err(Error::UnsupportedLevel { got: level, min: 3 });
    }
    if field.discriminant() > -7 {
        return Err(Error::UnsupportedField(field.discriminant()));
    }
    Ok(w_group_with_params(level, field)
        .into_iter()
        .map(|(_, _, m)| m)
        .collect())
}

fn w_group_with_params(level: u32, field: &CMField) -> Vec<(i64, i64, MatModN)> {
    let n = level as i64;
    let b = field.b_theta().rem_euclid(n);
    let c = field.c_theta().rem_euclid(n);
    let mut out = Vec::new();
    for s in 0..n {
        for t in 0..n {
            let m = MatModN::new([[t - b * s, -c * s], [s, t]], level);
            if !m.is_invertible() {
                continue;
            }
            let neg = ((-s).rem_euclid(n), (-t).rem_euclid(n));
            if (s, t) <= neg {
                out.push((s, t, m));
            }
        }
    }
    out.sort_by_key(|&(s, t, _)| (s, t));
    out
}

/// Stevenhagen's matrix u_Q mod N: for every prime p | N pick the local case
/// by the divisibility of a and c by p, then glue the per-prime matrices mod
/// p^{v_p(N)} into one matrix mod N by the Chinese remainder theorem.
pub fn u_q(q: &ReducedForm, level: u32, field: &CMField) -> MatModN {
    let d = field.discriminant();
    // b and d have the same parity class: b even iff d = 0 (mod 4)
    if d.rem_euclid(4) == 0 {
        assert!(q.b % 2 == 0, "form parity inconsistent with discriminant");
    } else {
        assert!(q.b % 2 != 0, "form parity inconsistent with discriminant");
    }
    let local = |p: i64| -> [[i64; 2]; 2] {
        let (a, b, c) = (q.a, q.b, q.c);
        if d.rem_euclid(4) == 0 {
            if a % p != 0 {
                [[a, b / 2], [0, 1]]
            } else if c % p != 0 {
                [[-b / 2, -c], [1, 0]]
            } else {
                [[-a - b / 2, -b / 2 - c], [1, -1]]
            }
        } else if a % p != 0 {
            [[a, (b - 1) / 2], [0, 1]]
        } else if c % p != 0 {
            [[-(b + 1) / 2, -c], [1, 0]]
        } else {
            [[-a - (b + 1) / 2, (1 - b) / 2 - c], [1, -1]]
        }
    };

    let mut entries = [[0i64; 2]; 2];
    for (i, row) in entries.iter_mut().enumerate() {
        for (jj, cell) in row.iter_mut().enumerate() {
            let mut x: i64 = 0;
            let mut modulus: i64 = 1;
            for (p, pe) in prime_power_factors(level as i64) {
                let xi = local(p)[i][jj].rem_euclid(pe);
                x = crt_pair(x, modulus, xi, pe);
                modulus *= pe;
            }
            *cell = x;
        }
    }
    let m = MatModN::new(entries, level);
    debug_assert!(m.is_invertible(), "u_Q must be invertible mod N");
    m
}

/// (p, p^e) for each prime power exactly dividing n.
fn prime_power_factors(mut n: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    let mut p = 2i64;
    while p * p <= n {
        if n % p == 0 {
            let mut pe = 1i64;
            while n % p == 0 {
                n /= p;
                pe *= p;
            }
            out.push((p, pe));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, n));
    }
    out
}

/// Combine x = x1 (mod m1), x = x2 (mod m2) for coprime moduli.
fn crt_pair(x1: i64, m1: i64, x2: i64, m2: i64) -> i64 {
    let e = m1.extended_gcd(&m2);
    debug_assert_eq!(e.gcd, 1);
    let inv = e.x.rem_euclid(m2); // m1 * inv = 1 (mod m2)
    let diff = (x2 - x1).rem_euclid(m2);
    (x1 + m1 * ((diff * inv).rem_euclid(m2))).rem_euclid(m1 * m2)
}

/// All labels of Gal(K_(N)/K): the Cartesian product of the reduced forms
/// and the +-1 coset representatives of W_{N,theta_K}, with u_Q and theta_Q
/// cached on each label. The first label is (identity, unit form), which
/// corresponds to the identity of the Galois group.
pub fn galois_labels(
    level: u32,
    field: &CMField,
    ctx: &PrecisionContext,
) -> Result<Vec<GaloisLabel>> {
    let reps = {
        if level < 3 {
            return Err(Error::UnsupportedLevel { got: level, min: 3 });
        }
        if field.discriminant() > -7 {
            return Err(Error::UnsupportedField(field.discriminant()));
        }
        w_group_with_params(level, field)
    };
    let forms = reduced_forms(field.discriminant())?;
    debug_assert_eq!(forms[0], unit_form(field.discriminant())?);
    let mut labels = Vec::with_capacity(reps.len() * forms.len());
    for form in &forms {
        let u = u_q(form, level, field);
        let theta_eval = theta_q(form, ctx);
        for &(s, t, alpha) in &reps {
            let label = GaloisLabel {
                alpha,
                form: *form,
                u,
                theta_eval: theta_eval.clone(),
                s,
                t,
            };
            debug_assert!(label.composite().is_invertible());
            labels.push(label);
        }
    }
    Ok(labels)
}

/// Right action of a level-N matrix on a level-N index pair:
/// (r1, r2) -> (r1, r2) M, reduced to the canonical representative.
pub fn act_on_index(r: &IndexPair, m: &MatModN) -> Result<IndexPair> {
    if r.level != m.level {
        return Err(Error::LevelMismatch(r.level, m.level));
    }
    let e = &m.entries;
    Ok(IndexPair::new(
        r.num1 * e[0][0] + r.num2 * e[1][0],
        r.num1 * e[0][1] + r.num2 * e[1][1],
        r.level,
    )
    .canonical())
}
