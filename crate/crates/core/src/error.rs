//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Everything that can go wrong while validating inputs or evaluating
/// modular functions and class-field data.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("working precision must be at least {min} decimal digits, got {got}")]
    PrecisionTooLow { got: u32, min: u32 },

    #[error("tau must lie in the upper half-plane (im(tau) > 0)")]
    NotInUpperHalfPlane,

    #[error("index ({num1}/{level}, {num2}/{level}) is congruent to (0,0) modulo 1")]
    ZeroIndex { num1: i64, num2: i64, level: u32 },

    #[error("index z = r1*tau + r2 lies on the period lattice (pole of the Weierstrass function)")]
    IndexOnLattice,

    #[error("{0} is not a negative fundamental discriminant")]
    BadDiscriminant(i64),

    #[error("discriminant {0} is excluded here (the construction requires d_K <= -7)")]
    UnsupportedField(i64),

    #[error("level {got} is below the minimum {min} for this operation")]
    UnsupportedLevel { got: u32, min: u32 },

    #[error("index level {0} does not match matrix level {1}")]
    LevelMismatch(u32, u32),

    #[error("exponent {exponent} is not a nonzero multiple of 12N/gcd(6,N) = {required} for level {level}")]
    ExponentNotExact {
        exponent: i64,
        required: i64,
        level: u32,
    },

    #[error("coefficient of X^{degree} is not within tolerance of an integer (residual {residual:e})")]
    IntegralityFailure { degree: usize, residual: f64 },

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error(
        "the exceptional-case identity closes for neither sign \
         (residuals {plus:e} and {minus:e})"
    )]
    ExceptionalSign { plus: f64, minus: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
