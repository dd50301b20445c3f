//! The Hilbert-Mumford certificate check.
//!
//! A one-parameter subgroup `s` destabilises the pair `(phi, x)` for the
//! stability parameter `theta` when `<s, theta> > 0` and the limit of
//! `s(t)^-1 . (phi, x)` exists as `t -> 0`. The inverse acts because the
//! unstable locus is where some `s` drives the point to a limit while the
//! pairing stays positive; a nonzero entry whose net exponent is negative
//! rules the subgroup out.

use crate::cgvariety::{apply_one_param, apply_one_param_x, CGDatum, OneParamSubgroup};
use crate::exactnum::{laurent_limit_at_zero, LaurentLimit, Ring, Scalar};
use crate::quiver::ThetaParam;

/// First diverging entry found while taking the limit.
#[derive(Clone, Debug)]
pub enum HmDivergence {
    /// Entry `(row, col)` of block `(i, j)` carries a nonzero coefficient at
    /// the given negative exponent.
    Block {
        block: (usize, usize),
        row: usize,
        col: usize,
        exponent: i64,
    },
    /// Plane coordinate `index` (0 or 1) diverges.
    Plane { index: usize, exponent: i64 },
}

/// Outcome of one certificate check.
#[derive(Clone, Debug)]
pub struct HmReport {
    /// Pairing of the subgroup with the stability parameter.
    pub pairing: i64,
    /// The limit pair, when every entry converges.
    pub limit: Option<(CGDatum, [Scalar; 2])>,
    pub divergence: Option<HmDivergence>,
    /// True when the limit exists and every non-unit block and both plane
    /// coordinates vanish there.
    pub limit_vanishes: bool,
}

impl HmReport {
    pub fn limit_exists(&self) -> bool {
        self.limit.is_some()
    }

    /// A certificate of instability: positive pairing and existing limit.
    pub fn is_certificate(&self) -> bool {
        self.pairing > 0 && self.limit.is_some()
    }
}

/// Run the certificate check for `s` on `(phi, x)` at parameter `theta`.
///
/// The limit is taken entrywise on `s(t)^-1 . (phi, x)`; the report records
/// the first diverging entry if there is one. `tol` only matters on the
/// approximate scalar track, where coefficients below it count as zero.
pub fn hm_check(
    s: &OneParamSubgroup,
    phi: &CGDatum,
    x: &[Scalar; 2],
    theta: &ThetaParam,
    tol: &str,
) -> HmReport {
    let pairing = s.pairing(theta.weights());
    let s_inv = s.inverse();

    let moved = apply_one_param(&s_inv, phi);
    let mut blocks = std::collections::BTreeMap::new();
    let mut divergence = None;
    'blocks: for ((i, j), m) in &moved {
        match laurent_limit_at_zero(m, tol) {
            LaurentLimit::Exists(b) => {
                blocks.insert((*i, *j), b);
            }
            LaurentLimit::Diverges { row, col, exponent } => {
                divergence = Some(HmDivergence::Block {
                    block: (*i, *j),
                    row,
                    col,
                    exponent,
                });
                break 'blocks;
            }
        }
    }

    let mut x_limit = [Scalar::zero(), Scalar::zero()];
    if divergence.is_none() {
        let moved_x = apply_one_param_x(&s_inv, x);
        for (index, poly) in moved_x.iter().enumerate() {
            match poly.limit_at_zero(tol) {
                Ok(v) => x_limit[index] = v,
                Err(exponent) => {
                    divergence = Some(HmDivergence::Plane { index, exponent });
                    break;
                }
            }
        }
    }

    if divergence.is_some() {
        return HmReport {
            pairing,
            limit: None,
            divergence,
            limit_vanishes: false,
        };
    }

    let limit_phi = CGDatum::new(*phi.group(), blocks);
    let vanishes = limit_phi
        .blocks()
        .filter(|((i, j), _)| *i >= 1 && *j >= 1)
        .all(|(_, m)| m.data().iter().all(|v| v.approx_zero(tol)))
        && x_limit.iter().all(|v| v.approx_zero(tol));

    HmReport {
        pairing,
        limit: Some((limit_phi, x_limit)),
        divergence: None,
        limit_vanishes: vanishes,
    }
}
