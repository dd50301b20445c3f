//! Construction of the reference datum phi0.
//!
//! For type A every block is the 1x1 matrix [1]. For type D the blocks on the
//! well-trodden pairs — E-pairs, pairs with right factor O_1 — are fixed
//! explicit matrices (with imaginary-unit entries replacing some signs when n
//! is odd, where the relation x^2 = a^(n-2) = -1 on E_3, E_4 forces them);
//! blocks whose transpose pair is fixed are filled by the tensor flip; every
//! remaining block is the unique-up-to-scale equivariant map computed by a
//! deterministic nullspace solve, normalized so its first nonzero entry is 1.
//! The result is pinned against versioned data files to keep the basis choice
//! stable.

use super::datum::{BlockReport, CGDatum};
use super::{flip_matrix, Ctx};
use crate::exactnum::{mat_i64, Matrix, Ring, Scalar};
use crate::reptheory::{Family, KleinianGroup};
use std::collections::BTreeMap;

/// The reference regular datum.
pub fn phi0(group: &KleinianGroup) -> CGDatum {
    let ctx = Ctx::new(group);
    let r = ctx.r();
    let mut blocks = BTreeMap::new();
    for i in 0..r {
        for j in 0..r {
            let m = match group.family() {
                Family::A => Matrix::identity(1),
                Family::D => d_block(&ctx, i, j),
            };
            blocks.insert((i, j), m);
        }
    }
    let datum = CGDatum::new(*group, blocks);
    for report in check_equivariance(&datum) {
        assert!(
            report.equivariant && report.invertible,
            "phi0 block {:?} is broken",
            report.pair
        );
    }
    datum
}

fn d_block(ctx: &Ctx, i: usize, j: usize) -> Matrix<Scalar> {
    if i == 0 {
        return Matrix::identity(ctx.dim(j));
    }
    if j == 0 {
        return Matrix::identity(ctx.dim(i));
    }
    if let Some(m) = listed_block(ctx, i, j) {
        return m;
    }
    if let Some(m) = listed_block(ctx, j, i) {
        // phi_(i,j) := phi_(j,i) o flip; the codomain row order is shared.
        return m.mul(&flip_matrix(ctx.dim(i), ctx.dim(j)));
    }
    let mut parts = Vec::new();
    for k in ctx.comps(i, j) {
        parts.push(solve_equivariant(ctx, i, j, k));
    }
    Matrix::vstack(&parts)
}

/// The explicitly chosen blocks: all E-pairs and all pairs with right factor
/// O_1. Rows follow the fixed irrep order of the codomain.
fn listed_block(ctx: &Ctx, i: usize, j: usize) -> Option<Matrix<Scalar>> {
    let n = ctx.group.n();
    let even = n % 2 == 0;
    let plus_i = Scalar::i();
    let minus_i = Scalar::i().neg();
    if i < 4 && j < 4 {
        return Some(Matrix::identity(1));
    }
    if j != 4 {
        return None;
    }
    // Right factor O_1 from here on.
    let m = match i {
        1 => mat_i64(2, 2, &[1, 0, 0, -1]),
        2 => {
            // E_3 (x) O_1 -> V_(n-3).
            if even {
                mat_i64(2, 2, &[0, 1, -1, 0])
            } else {
                let mut m = mat_i64(2, 2, &[0, 1, 0, 0]);
                m[(1, 0)] = plus_i;
                m
            }
        }
        3 => {
            if even {
                mat_i64(2, 2, &[0, 1, 1, 0])
            } else {
                let mut m = mat_i64(2, 2, &[0, 1, 0, 0]);
                m[(1, 0)] = minus_i;
                m
            }
        }
        4 => {
            if n == 4 {
                // O_1 (x) O_1 -> E_1 (+) E_2 (+) E_3 (+) E_4.
                mat_i64(4, 4, &[0, 1, -1, 0, 0, 1, 1, 0, 1, 0, 0, 1, 1, 0, 0, -1])
            } else {
                // O_1 (x) O_1 -> E_1 (+) E_2 (+) I_2.
                mat_i64(4, 4, &[0, 1, -1, 0, 0, 1, 1, 0, 2, 0, 0, 0, 0, 0, 0, 2])
            }
        }
        _ => {
            let k = (i - 3) as u32;
            if k == n - 3 {
                // V_(n-3) (x) O_1 -> E_3 (+) E_4 (+) V_(n-4), rows in the
                // fixed order (the E-rows first).
                let mut m = mat_i64(4, 4, &[1, 0, 0, 1, 1, 0, 0, -1, 0, 1, 0, 0, 0, 0, -1, 0]);
                if !even {
                    m[(0, 3)] = plus_i;
                    m[(1, 3)] = minus_i;
                }
                m
            } else {
                // Interior V_k (x) O_1 -> V_(k-1) (+) V_(k+1).
                mat_i64(4, 4, &[0, 1, 0, 0, 0, 0, -1, 0, 2, 0, 0, 0, 0, 0, 0, 2])
            }
        }
    };
    Some(m)
}

/// The unique-up-to-scale equivariant map `U_i (x) U_j -> U_k`, found as the
/// nullspace of the intertwining equations over the group generators and
/// normalized so the first nonzero entry equals 1.
fn solve_equivariant(ctx: &Ctx, i: usize, j: usize, k: usize) -> Matrix<Scalar> {
    let irreps = ctx.group.irreps();
    let (di, dj, dk) = (ctx.dim(i), ctx.dim(j), ctx.dim(k));
    let unknowns = dk * di * dj;
    let generators = ctx.group.generators();
    let mut system: Matrix<Scalar> = Matrix::zero(generators.len() * dk * di * dj, unknowns);
    let mut row = 0;
    for g in &generators {
        // M (rho_i (x) rho_j)(g) - rho_k(g) M = 0, linear in the entries of M.
        let domain = irreps[i].matrix(g).kron(&irreps[j].matrix(g));
        let codomain = irreps[k].matrix(g);
        for p in 0..dk {
            for c in 0..di * dj {
                for s in 0..di * dj {
                    let idx = p * di * dj + s;
                    system[(row, idx)] = system[(row, idx)].add(&domain[(s, c)]);
                }
                for s in 0..dk {
                    let idx = s * di * dj + c;
                    system[(row, idx)] = system[(row, idx)].sub(&codomain[(p, s)]);
                }
                row += 1;
            }
        }
    }
    let basis = system.nullspace();
    assert_eq!(
        basis.len(),
        1,
        "hom space for ({i},{j})->{k} is not one-dimensional"
    );
    let v = &basis[0];
    let lead = v
        .iter()
        .find(|s| !s.is_zero())
        .expect("nonzero nullspace vector");
    let scale = lead.inv();
    let mut m = Matrix::zero(dk, di * dj);
    for p in 0..dk {
        for c in 0..di * dj {
            m[(p, c)] = v[p * di * dj + c].mul(&scale);
        }
    }
    m
}

/// Checks every block for exact equivariance under the group generators and
/// for invertibility; violations are reported, not thrown.
pub fn check_equivariance(phi: &CGDatum) -> Vec<BlockReport> {
    let ctx = Ctx::new(phi.group());
    let irreps = ctx.group.irreps();
    let generators = ctx.group.generators();
    let mut out = Vec::new();
    for (&(i, j), m) in phi.blocks() {
        let mut equivariant = true;
        for g in &generators {
            let domain = irreps[i].matrix(g).kron(&irreps[j].matrix(g));
            let codomain: Vec<Matrix<Scalar>> = ctx
                .comps(i, j)
                .iter()
                .map(|&k| irreps[k].matrix(g))
                .collect();
            if m.mul(&domain) != Matrix::direct_sum(&codomain).mul(m) {
                equivariant = false;
                break;
            }
        }
        out.push(BlockReport {
            pair: (i, j),
            equivariant,
            invertible: m.is_invertible(),
        });
    }
    out
}
