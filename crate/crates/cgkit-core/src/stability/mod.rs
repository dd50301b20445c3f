//! Hilbert-Mumford checks, destabilising subgroups, and the nullcone.
//!
//! A datum-plus-plane-point pair `(phi, x)` is destabilised by a one-parameter
//! subgroup `s` when the pairing of `s` with the stability parameter is
//! positive and the limit of `s(t)^-1 . (phi, x)` as `t -> 0` exists. This
//! module provides the certificate check itself, an explicit destabilising
//! subgroup for every unstable cyclic pair, the nullcone limit families for
//! both group types, the semiinvariants `f_q` cutting out the unstable locus,
//! and the binary-dihedral `n = 4` case catalogue.

mod d4cases;
mod destabilize;
mod hm;
mod nullcone_a;
mod nullcone_d;
mod semiinvariants;

pub use d4cases::{d4_case, d4_case_ids, d4_catalogue_check, D4Case, D4CaseReport, D4Outcome};
pub use destabilize::destabilize_an;
pub use hm::{hm_check, HmDivergence, HmReport};
pub use nullcone_a::nullcone_an;
pub use nullcone_d::{nullcone_dn, rho_a_arrows};
pub use semiinvariants::{
    check_fq_restriction, fq_semiinvariant, fq_vertex_weights, reynolds_image, reynolds_survivors,
};

use crate::cgvariety::{CGDatum, OneParamSubgroup};
use crate::exactnum::Scalar;
use crate::quiver::QuiverRep;
use crate::reptheory::KleinianGroup;

/// Errors from stability constructions.
#[derive(Debug, thiserror::Error)]
pub enum StabilityError {
    /// The pair generates every vertex space, so no destabilising subgroup
    /// exists.
    #[error("the pair is semistable: no destabilising subgroup exists")]
    Semistable,
    /// The construction is only defined for the other group family.
    #[error("construction not defined for {0}")]
    WrongFamily(String),
    /// The construction's data are only available for some ranks.
    #[error("no ansatz data for rank {0}")]
    UnsupportedRank(u32),
}

/// One nullcone family: a one-parameter subgroup, the limit datum it
/// produces from the reference datum, and the comparison representation of
/// the limit at the family's plane point.
#[derive(Clone, Debug)]
pub struct NullconeFamily {
    pub group: KleinianGroup,
    /// Family index: the socle vertex singled out by the limit.
    pub k: usize,
    /// Plane parameters of the representative.
    pub params: Vec<Scalar>,
    pub subgroup: OneParamSubgroup,
    pub limit: CGDatum,
    pub rep: QuiverRep,
}
