//! Two-track scalar arithmetic and the polynomial/matrix types built on it.
//!
//! The exact track represents elements of cyclotomic fields `Q(zeta_m)` with
//! arbitrary-precision rational coefficients reduced against the m-th
//! cyclotomic polynomial, so equality is syntactic. The approximate track
//! wraps arbitrary-precision binary floats (complex pairs) at a caller-chosen
//! precision. [`Scalar`] is the tagged union over both tracks with explicit
//! contagion rules: any operation touching an approximate value produces an
//! approximate value.

mod appcomplex;
mod bivar;
mod cyclotomic;
mod jsonio;
mod laurent;
mod matrix;
mod rational;
mod scalar;

pub use appcomplex::AppComplex;
pub use bivar::BivarPoly;
pub use cyclotomic::{cyclotomic_polynomial, euler_phi, Cyclotomic};
pub(crate) use jsonio::matrix_from_value as matrix_from_json;
pub use laurent::{laurent_limit_at_zero, laurent_matrix, LaurentLimit, LaurentPoly};
pub use matrix::{mat_i64, Matrix};
pub use rational::Rational;
pub use scalar::{Ring, Scalar};

#[cfg(test)]
mod tests;
