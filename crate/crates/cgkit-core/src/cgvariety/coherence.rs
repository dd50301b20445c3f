//! Coherence and symmetry factors.
//!
//! For a triple `(i, j, k)` the two re-association paths through a datum are
//! the maps `U_i (x) U_j (x) U_k -> (+) U_m`
//!
//! * top:    apply `phi_(j,k)` first, then `phi_(i,l)` on every summand;
//! * bottom: apply `phi_(i,j)` first, then `phi_(l,k)` on every summand.
//!
//! Both are invertible for the reference datum, and the coherence factor
//! `gamma_(i,j,k) = top o bottom^-1` depends only on the gauge orbit. Schur's
//! lemma forces it to be block-scalar: entries connect only identical irrep
//! types, and each such connection is a scalar multiple of the identity. The
//! symmetry factor `gamma_(i,j)` plays the same role for the tensor flip.

use super::datum::CGDatum;
use super::{distribute_left, flip_matrix, Ctx};
use crate::exactnum::{Matrix, Scalar};
use rayon::prelude::*;
use std::collections::BTreeMap;

/// The coherence factor of one triple, with its block-scalar decomposition.
#[derive(Clone, Debug)]
pub struct CoherenceFactor {
    pub triple: (usize, usize, usize),
    pub matrix: Matrix<Scalar>,
    /// Per irrep type `m`: the `d_m x d_m` matrix of scalars connecting the
    /// copies of `U_m` in the bottom codomain to those in the top codomain.
    pub scalars: BTreeMap<usize, Matrix<Scalar>>,
}

/// The symmetry factor of one pair: block-diagonal with one scalar per
/// codomain component.
#[derive(Clone, Debug)]
pub struct SymmetryFactor {
    pub pair: (usize, usize),
    pub matrix: Matrix<Scalar>,
    pub scalars: BTreeMap<usize, Scalar>,
}

/// Codomain layout of the top path: the flattened `(irrep, dim)` list, outer
/// summand `l` over components of `(j, k)`, inner over components of `(i, l)`.
fn top_layout(ctx: &Ctx, i: usize, j: usize, k: usize) -> Vec<usize> {
    let mut out = Vec::new();
    for l in ctx.comps(j, k) {
        out.extend(ctx.comps(i, l));
    }
    out
}

fn bottom_layout(ctx: &Ctx, i: usize, j: usize, k: usize) -> Vec<usize> {
    let mut out = Vec::new();
    for l in ctx.comps(i, j) {
        out.extend(ctx.comps(l, k));
    }
    out
}

/// The trilinear map applying the datum on the right factor pair first.
pub fn top_path(phi: &CGDatum, i: usize, j: usize, k: usize) -> Matrix<Scalar> {
    let ctx = Ctx::new(phi.group());
    let comps_jk = ctx.comps(j, k);
    let dims: Vec<usize> = comps_jk.iter().map(|&l| ctx.dim(l)).collect();
    let inner = Matrix::identity(ctx.dim(i)).kron(phi.block(j, k));
    let perm = distribute_left(ctx.dim(i), &dims);
    let outer: Vec<Matrix<Scalar>> = comps_jk
        .iter()
        .map(|&l| phi.block(i, l).clone())
        .collect();
    Matrix::direct_sum(&outer).mul(&perm).mul(&inner)
}

/// The trilinear map applying the datum on the left factor pair first.
pub fn bottom_path(phi: &CGDatum, i: usize, j: usize, k: usize) -> Matrix<Scalar> {
    let ctx = Ctx::new(phi.group());
    let comps_ij = ctx.comps(i, j);
    let inner = phi.block(i, j).kron(&Matrix::identity(ctx.dim(k)));
    let outer: Vec<Matrix<Scalar>> = comps_ij
        .iter()
        .map(|&l| phi.block(l, k).clone())
        .collect();
    Matrix::direct_sum(&outer).mul(&inner)
}

/// Extracts the block-scalar decomposition of a map between two decomposed
/// codomains; returns None if any block violates the scalar-times-identity
/// structure or connects different irrep types.
fn block_scalars(
    ctx: &Ctx,
    m: &Matrix<Scalar>,
    row_types: &[usize],
    col_types: &[usize],
) -> Option<BTreeMap<usize, Matrix<Scalar>>> {
    let offsets = |types: &[usize]| -> Vec<usize> {
        let mut out = Vec::with_capacity(types.len());
        let mut acc = 0;
        for &t in types {
            out.push(acc);
            acc += ctx.dim(t);
        }
        out
    };
    let row_off = offsets(row_types);
    let col_off = offsets(col_types);
    let mut scalars: BTreeMap<usize, Matrix<Scalar>> = BTreeMap::new();
    // Slot indices per irrep type, in order of appearance.
    let slots = |types: &[usize], t: usize| -> Vec<usize> {
        types
            .iter()
            .enumerate()
            .filter(|(_, &x)| x == t)
            .map(|(s, _)| s)
            .collect()
    };
    let mut seen: Vec<usize> = row_types.to_vec();
    seen.sort_unstable();
    seen.dedup();
    for (s, &ts) in row_types.iter().enumerate() {
        for (c, &tc) in col_types.iter().enumerate() {
            let d_s = ctx.dim(ts);
            let d_c = ctx.dim(tc);
            let sub = m.block(row_off[s], col_off[c], d_s, d_c);
            if ts != tc {
                if !sub.is_zero() {
                    return None;
                }
                continue;
            }
            let lambda = sub[(0, 0)].clone();
            if sub != Matrix::identity(d_s).scale(&lambda) {
                return None;
            }
        }
    }
    for &t in &seen {
        let rs = slots(row_types, t);
        let cs = slots(col_types, t);
        if rs.len() != cs.len() {
            return None;
        }
        let mut sm = Matrix::zero(rs.len(), cs.len());
        for (a, &s) in rs.iter().enumerate() {
            for (b, &c) in cs.iter().enumerate() {
                sm[(a, b)] = m[(row_off[s], col_off[c])].clone();
            }
        }
        scalars.insert(t, sm);
    }
    Some(scalars)
}

/// Computes `gamma_(i,j,k)` from the reference datum of the group.
pub fn coherence_factor(phi0: &CGDatum, i: usize, j: usize, k: usize) -> CoherenceFactor {
    let ctx = Ctx::new(phi0.group());
    let top = top_path(phi0, i, j, k);
    let bottom = bottom_path(phi0, i, j, k);
    let inv = bottom
        .try_inverse()
        .expect("bottom path of the reference datum must be invertible");
    let matrix = top.mul(&inv);
    let rows = top_layout(&ctx, i, j, k);
    let cols = bottom_layout(&ctx, i, j, k);
    let scalars = block_scalars(&ctx, &matrix, &rows, &cols)
        .expect("coherence factor must be block-scalar");
    CoherenceFactor {
        triple: (i, j, k),
        matrix,
        scalars,
    }
}

/// All coherence factors of the group, computed from its reference datum.
pub fn coherence_table(phi0: &CGDatum) -> BTreeMap<(usize, usize, usize), CoherenceFactor> {
    let r = Ctx::new(phi0.group()).r();
    let triples: Vec<(usize, usize, usize)> = (0..r)
        .flat_map(|i| (0..r).flat_map(move |j| (0..r).map(move |k| (i, j, k))))
        .collect();
    triples
        .into_par_iter()
        .map(|(i, j, k)| ((i, j, k), coherence_factor(phi0, i, j, k)))
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}

/// Verifies `top = gamma o bottom` for every triple; returns the violations.
pub fn verify_coherence(
    phi: &CGDatum,
    table: &BTreeMap<(usize, usize, usize), CoherenceFactor>,
) -> Vec<(usize, usize, usize)> {
    table
        .par_iter()
        .filter_map(|(&(i, j, k), factor)| {
            let top = top_path(phi, i, j, k);
            let bottom = bottom_path(phi, i, j, k);
            if top == factor.matrix.mul(&bottom) {
                None
            } else {
                Some((i, j, k))
            }
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}

/// Computes the symmetry factor `gamma_(i,j) = phi_(i,j) o (phi_(j,i) o flip)^-1`.
pub fn symmetry_factor(phi0: &CGDatum, i: usize, j: usize) -> SymmetryFactor {
    let ctx = Ctx::new(phi0.group());
    let flip = flip_matrix(ctx.dim(i), ctx.dim(j));
    let flipped = phi0.block(j, i).mul(&flip);
    let inv = flipped
        .try_inverse()
        .expect("flipped block of the reference datum must be invertible");
    let matrix = phi0.block(i, j).mul(&inv);
    let layout: Vec<usize> = ctx.comps(i, j);
    let blocks = block_scalars(&ctx, &matrix, &layout, &layout)
        .expect("symmetry factor must be block-scalar");
    let mut scalars = BTreeMap::new();
    for (t, sm) in blocks {
        // Components are multiplicity-free, so each type occurs once.
        assert_eq!((sm.rows(), sm.cols()), (1, 1));
        scalars.insert(t, sm[(0, 0)].clone());
    }
    SymmetryFactor {
        pair: (i, j),
        matrix,
        scalars,
    }
}

pub fn symmetry_table(phi0: &CGDatum) -> BTreeMap<(usize, usize), SymmetryFactor> {
    let r = Ctx::new(phi0.group()).r();
    let mut out = BTreeMap::new();
    for i in 0..r {
        for j in 0..r {
            out.insert((i, j), symmetry_factor(phi0, i, j));
        }
    }
    out
}

/// Verifies `phi_(i,j) = gamma_(i,j) o phi_(j,i) o flip` for every pair.
pub fn verify_symmetry(
    phi: &CGDatum,
    table: &BTreeMap<(usize, usize), SymmetryFactor>,
) -> Vec<(usize, usize)> {
    let ctx = Ctx::new(phi.group());
    let mut failures = Vec::new();
    for (&(i, j), factor) in table {
        let flip = flip_matrix(ctx.dim(i), ctx.dim(j));
        let rhs = factor.matrix.mul(phi.block(j, i)).mul(&flip);
        if *phi.block(i, j) != rhs {
            failures.push((i, j));
        }
    }
    failures
}

/// Convenience: the full coherence and symmetry verdict for one datum against
/// the factors of the group's reference datum.
pub fn verify_against_reference(phi: &CGDatum) -> (Vec<(usize, usize, usize)>, Vec<(usize, usize)>) {
    let reference = super::phi0(phi.group());
    let ctable = coherence_table(&reference);
    let stable = symmetry_table(&reference);
    (verify_coherence(phi, &ctable), verify_symmetry(phi, &stable))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cgvariety::{gauge_act, phi0, random_gauge};
    use crate::exactnum::{mat_i64, Ring};
    use crate::reptheory::KleinianGroup;
    use rand::SeedableRng;

    #[test]
    fn type_a_coherence_factors_are_trivial() {
        let group = KleinianGroup::a(4);
        let reference = phi0(&group);
        for i in 0..5 {
            for j in 0..5 {
                for k in 0..5 {
                    let f = coherence_factor(&reference, i, j, k);
                    assert_eq!(f.matrix, Matrix::identity(1));
                }
            }
        }
    }

    #[test]
    fn coherence_is_gauge_invariant() {
        for group in [KleinianGroup::a(5), KleinianGroup::d(4), KleinianGroup::d(5)] {
            let reference = phi0(&group);
            let table = coherence_table(&reference);
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
            for _ in 0..3 {
                let g = random_gauge(&group, &mut rng);
                let moved = gauge_act(&g, &reference);
                assert!(verify_coherence(&moved, &table).is_empty());
                // Recomputing the factors from the translate gives the same matrices.
                let f = coherence_factor(&moved, 4.min(group.n() as usize), 1, 2);
                let f0 = &table[&(4.min(group.n() as usize), 1, 2)];
                assert_eq!(f.matrix, f0.matrix);
            }
        }
    }

    #[test]
    fn symmetry_holds_for_reference_and_translates() {
        for group in [KleinianGroup::a(4), KleinianGroup::d(5), KleinianGroup::d(6)] {
            let reference = phi0(&group);
            let table = symmetry_table(&reference);
            assert!(verify_symmetry(&reference, &table).is_empty());
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
            let g = random_gauge(&group, &mut rng);
            let moved = gauge_act(&g, &reference);
            assert!(verify_symmetry(&moved, &table).is_empty());
        }
    }

    #[test]
    fn symmetry_scalars_multiply_to_one() {
        let group = KleinianGroup::d(6);
        let reference = phi0(&group);
        let table = symmetry_table(&reference);
        for i in 0..7 {
            for j in 0..7 {
                let f = &table[&(i, j)];
                let g = &table[&(j, i)];
                for (k, s) in &f.scalars {
                    assert_eq!(s.mul(&g.scalars[k]), Scalar::one(), "({i},{j}) at {k}");
                }
            }
        }
    }

    #[test]
    fn d4_o1_symmetry_factor_matches_display() {
        let group = KleinianGroup::d(4);
        let reference = phi0(&group);
        let f = symmetry_factor(&reference, 4, 4);
        assert_eq!(f.matrix, mat_i64(4, 4, &[-1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1]));
    }

    #[test]
    fn d4_listed_coherence_factors_match() {
        let group = KleinianGroup::d(4);
        let reference = phi0(&group);
        // gamma_(O_1, E_i, O_1) for i = 2, 3, 4 are diagonal sign matrices.
        let diag = |signs: [i64; 4]| {
            mat_i64(
                4,
                4,
                &[
                    signs[0], 0, 0, 0, 0, signs[1], 0, 0, 0, 0, signs[2], 0, 0, 0, 0, signs[3],
                ],
            )
        };
        assert_eq!(coherence_factor(&reference, 4, 1, 4).matrix, diag([-1, -1, 1, 1]));
        assert_eq!(coherence_factor(&reference, 4, 2, 4).matrix, diag([-1, 1, -1, 1]));
        assert_eq!(coherence_factor(&reference, 4, 3, 4).matrix, diag([-1, 1, 1, -1]));
        // gamma_(O_1, O_1, O_1): 2x2 identity blocks scaled by a sign pattern, all halved.
        let f = coherence_factor(&reference, 4, 4, 4);
        let signs = mat_i64(4, 4, &[-1, -1, 1, 1, 1, 1, 1, 1, -1, 1, 1, -1, -1, 1, -1, 1]);
        let mut expected = Matrix::zero(8, 8);
        for a in 0..4 {
            for b in 0..4 {
                for d in 0..2 {
                    expected[(2 * a + d, 2 * b + d)] =
                        signs[(a, b)].mul(&Scalar::from_rational(1, 2));
                }
            }
        }
        assert_eq!(f.matrix, expected);
        assert_eq!(f.scalars[&4], signs.scale(&Scalar::from_rational(1, 2)));
    }

    #[test]
    fn a3_degenerate_datum_reports_violations() {
        let group = KleinianGroup::a(3);
        let reference = phi0(&group);
        let table = coherence_table(&reference);
        let mut phi = reference.clone();
        phi.set_block(1, 1, Matrix::zero(1, 1));
        // With phi_(1,1) = 0 and everything else 1, the triple (1,1,1)
        // requires phi_(1,2) phi_(1,1) = phi_(2,1) phi_(1,1) (both vanish),
        // but (1,1,2) forces phi_(2,2) phi_(1,1) = phi_(1,3) phi_(1,2) = 1.
        let failures = verify_coherence(&phi, &table);
        assert!(failures.contains(&(1, 1, 2)));
        assert!(!failures.contains(&(1, 1, 1)));
    }
}
