//! Singular values of y-coordinate modular functions at CM points, their
//! Galois orbits over imaginary quadratic fields via the Shimura reciprocity
//! machinery of Stevenhagen, and exact integer minimal polynomials of the
//! resulting ray class field generators.
//!
//! The crate is organized as:
//!
//! - [`numerics`]: fixed-point arbitrary-precision real/complex arithmetic,
//!   exact root-of-unity phases, and big-integer polynomials;
//! - [`qseries`]: q-expansions and infinite products for eta, the Eisenstein
//!   weights, the Weierstrass p-function, Fricke/Weber functions, Siegel
//!   functions and the y-coordinate quotient;
//! - [`class_forms`]: fundamental discriminants, CM points, reduced binary
//!   quadratic forms;
//! - [`reciprocity`]: the matrix group W_{N,theta}, Stevenhagen's u_Q
//!   matrices, and the index action realizing the Galois group;
//! - [`invariants`]: conjugate orbits, minimal polynomials, the Kubert-Lang
//!   quadratic-relation predicate, inequality verifiers and the normal-basis
//!   exponent bound.

pub mod class_forms;
pub mod error;
pub mod invariants;
pub mod numerics;
pub mod qseries;
pub mod reciprocity;

pub use error::{Error, Result};
pub use numerics::{with_precision, PrecisionContext};
