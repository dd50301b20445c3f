//! Clebsch-Gordan data and their gauge theory.
//!
//! A Clebsch-Gordan datum assigns to every ordered pair of irreducibles
//! `(U_i, U_j)` a linear map `U_i (x) U_j -> (+)_k U_k^(c_ijk)`, stored as one
//! block matrix per pair. Columns are ordered left-factor-major (`e_a (x) e_b`
//! at column `a * dim_j + b`); rows stack the codomain components in the fixed
//! irrep order. This module provides the reference datum `phi0`, the gauge
//! action, one-parameter subgroups with Laurent-polynomial limits, the
//! coherence and symmetry factors, and the semiinvariant `f0`.

mod coherence;
mod datum;
mod oneparam;
mod phi0;

pub use coherence::{
    bottom_path, coherence_factor, coherence_table, symmetry_factor, symmetry_table, top_path,
    verify_against_reference, verify_coherence, verify_symmetry, CoherenceFactor, SymmetryFactor,
};
pub use datum::{f0, gauge_act, random_gauge, BlockReport, CGDatum, GaugeElement};
pub use oneparam::{apply_one_param, apply_one_param_x, OneParamSubgroup};
pub use phi0::{check_equivariance, phi0};

use crate::exactnum::{Matrix, Ring, Scalar};
use crate::reptheory::{CGTable, KleinianGroup};
use std::sync::Arc;

/// Bundled per-group lookup data used by every operation in this module.
#[derive(Clone)]
pub(crate) struct Ctx {
    pub group: KleinianGroup,
    pub table: Arc<CGTable>,
    dims: Vec<usize>,
}

impl Ctx {
    pub fn new(group: &KleinianGroup) -> Self {
        let table = CGTable::shared(group);
        let dims = group.irreps().iter().map(|r| r.dim() as usize).collect();
        Ctx {
            group: *group,
            table,
            dims,
        }
    }

    pub fn r(&self) -> usize {
        self.dims.len()
    }

    pub fn dim(&self, i: usize) -> usize {
        self.dims[i]
    }

    pub fn comps(&self, i: usize, j: usize) -> Vec<usize> {
        self.table.components(i, j)
    }

    /// Codomain row layout of the block `(i, j)`: one `(irrep, offset)` entry
    /// per component, in the fixed irrep order.
    pub fn row_layout(&self, i: usize, j: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut offset = 0;
        for k in self.comps(i, j) {
            out.push((k, offset));
            offset += self.dim(k);
        }
        out
    }

    pub fn block_rows(&self, i: usize, j: usize) -> usize {
        self.comps(i, j).iter().map(|&k| self.dim(k)).sum()
    }
}

/// Permutation matrix sending the left-factor-major basis of
/// `U_i (x) (U_{l_1} (+) ... (+) U_{l_s})` to the summand-major basis of
/// `(U_i (x) U_{l_1}) (+) ... (+) (U_i (x) U_{l_s})`.
pub(crate) fn distribute_left(d_i: usize, dims: &[usize]) -> Matrix<Scalar> {
    let total: usize = dims.iter().sum();
    let size = d_i * total;
    let mut m = Matrix::zero(size, size);
    let mut offset = 0;
    let mut block_offset = 0;
    for &d_l in dims {
        for a in 0..d_i {
            for b in 0..d_l {
                let source = a * total + offset + b;
                let target = block_offset + a * d_l + b;
                m[(target, source)] = Scalar::one();
            }
        }
        offset += d_l;
        block_offset += d_i * d_l;
    }
    m
}

/// Permutation matrix of the tensor flip `U_i (x) U_j -> U_j (x) U_i`.
pub(crate) fn flip_matrix(d_i: usize, d_j: usize) -> Matrix<Scalar> {
    let size = d_i * d_j;
    let mut m = Matrix::zero(size, size);
    for a in 0..d_i {
        for b in 0..d_j {
            m[(b * d_i + a, a * d_j + b)] = Scalar::one();
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::mat_i64;

    #[test]
    fn flip_is_an_involution() {
        for (di, dj) in [(1, 2), (2, 2), (2, 3)] {
            let f_ij = flip_matrix(di, dj);
            let f_ji = flip_matrix(dj, di);
            assert_eq!(f_ji.mul(&f_ij), Matrix::identity(di * dj));
        }
    }

    #[test]
    fn distribute_left_reorders_blocks() {
        // U_i two-dimensional against summands of dims 1 and 2.
        let p = distribute_left(2, &[1, 2]);
        // Source basis: a-major over (l-offset + b) = (a, c) with c in 0..3.
        // Target: block (i x l1) entries (a,0), then block (i x l2) (a, b).
        let v = mat_i64(6, 1, &[10, 11, 12, 20, 21, 22]);
        let w = p.mul(&v);
        let expected = mat_i64(6, 1, &[10, 20, 11, 12, 21, 22]);
        assert_eq!(w, expected);
    }
}
