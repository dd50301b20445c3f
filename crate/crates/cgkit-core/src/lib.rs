//! Exact construction and mechanical verification of Clebsch-Gordan varieties
//! for Kleinian groups of types A and D.
//!
//! The crate is organised in layers:
//!
//! - [`exactnum`]: two-track scalar arithmetic (exact cyclotomic numbers and
//!   arbitrary-precision complex floats), Laurent polynomials in a formal
//!   parameter `t`, bivariate polynomials in plane coordinates, and generic
//!   dense matrices over these rings.
//! - [`reptheory`]: the finite subgroups of SL2 of types A and D, their
//!   irreducible representations, characters, and tensor-product (Clebsch-
//!   Gordan) multiplicities.
//! - [`cgvariety`]: Clebsch-Gordan data (systems of equivariant block maps
//!   on all pairwise tensor products), the base point `phi0`, gauge group
//!   actions, one-parameter subgroups, coherence and symmetry factors, and
//!   the distinguished semiinvariant `f0`.
//! - [`quiver`]: the McKay quivers, representations with polynomial entries,
//!   the comparison map from CG data to quiver representations, preprojective
//!   relations, and King's semistability criterion.
//! - [`stability`]: Hilbert-Mumford checks, explicit destabilising subgroups,
//!   nullcone families for both types, theta-semiinvariants, Reynolds
//!   operators, and the type-D4 boundary-case catalogue.
//! - [`invariants`]: generators of the invariant rings on both sides of the
//!   comparison map, the Kleinian hypersurface relations, stabiliser
//!   subgroups of the base point, and the power map on the D-type middle leg.
//! - [`zcompare`]: the auxiliary model of the D4 variety (beta, A, B data),
//!   its membership equations, and the comparison with CG data.

pub mod cgvariety;
pub mod exactnum;
pub mod invariants;
pub mod quiver;
pub mod stability;
pub mod zcompare;

pub mod reptheory;

pub use exactnum::{
    AppComplex, BivarPoly, Cyclotomic, LaurentPoly, Matrix, Rational, Scalar,
};
pub use reptheory::{cg_coefficient, irreps_of, CGTable, Family, GroupElement, Irrep, IrrepLabel, KleinianGroup};

/// Default binary precision for the approximate track.
pub const DEFAULT_PRECISION: usize = 256;

/// Default absolute tolerance for approximate comparisons at the default
/// precision.
pub const DEFAULT_TOLERANCE: &str = "1e-30";

/// Resolve the working precision: explicit argument, else the
/// `CGKIT_PRECISION` environment variable, else [`DEFAULT_PRECISION`].
pub fn resolve_precision(explicit: Option<usize>) -> usize {
    if let Some(p) = explicit {
        return p;
    }
    if let Ok(s) = std::env::var("CGKIT_PRECISION") {
        if let Ok(p) = s.trim().parse::<usize>() {
            if p >= 32 {
                return p;
            }
        }
    }
    DEFAULT_PRECISION
}
