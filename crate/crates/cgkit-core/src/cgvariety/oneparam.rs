//! One-parameter subgroups of the gauge group and their action on data.
//!
//! A subgroup is stored by its integer exponents per vertex, optionally
//! conjugated: `g_k(t) = Q_k diag(t^(e_1), ..) Q_k^-1`. Acting on a datum
//! produces matrices of Laurent polynomials in `t`, so existence of the
//! `t -> 0` limit is decidable exactly.

use super::datum::CGDatum;
use super::Ctx;
use crate::exactnum::{LaurentPoly, Matrix, Ring, Scalar};
use crate::reptheory::{Family, KleinianGroup};
use std::collections::BTreeMap;

/// A one-parameter subgroup `t -> (g_k(t))` of the gauge group; the component
/// at the trivial vertex is always 1.
#[derive(Clone, Debug)]
pub struct OneParamSubgroup {
    group: KleinianGroup,
    /// Diagonal exponents per vertex, `exponents[0] == [0]`.
    exponents: Vec<Vec<i64>>,
    /// Optional conjugators per vertex; identity where absent.
    conjugators: Option<Vec<Matrix<Scalar>>>,
}

impl OneParamSubgroup {
    /// Builds a diagonal subgroup from exponents over the nontrivial vertices.
    pub fn new(group: &KleinianGroup, weights: Vec<Vec<i64>>) -> Self {
        let ctx = Ctx::new(group);
        assert_eq!(weights.len(), ctx.r() - 1, "one weight list per nontrivial vertex");
        let mut exponents = vec![vec![0]];
        exponents.extend(weights);
        for (k, e) in exponents.iter().enumerate() {
            assert_eq!(e.len(), ctx.dim(k), "wrong exponent count at vertex {k}");
        }
        OneParamSubgroup {
            group: *group,
            exponents,
            conjugators: None,
        }
    }

    /// Convenience for families whose vertices are all one-dimensional.
    pub fn from_scalars(group: &KleinianGroup, alpha: &[i64]) -> Self {
        OneParamSubgroup::new(group, alpha.iter().map(|&a| vec![a]).collect())
    }

    /// Attaches conjugators `Q_k` (one per nontrivial vertex, in order).
    pub fn with_conjugators(mut self, conjugators: Vec<Matrix<Scalar>>) -> Self {
        let ctx = Ctx::new(&self.group);
        assert_eq!(conjugators.len(), ctx.r() - 1);
        let mut full = vec![Matrix::identity(1)];
        for (k, q) in conjugators.into_iter().enumerate() {
            assert_eq!(q.rows(), ctx.dim(k + 1));
            assert!(q.is_invertible(), "conjugator at vertex {} is singular", k + 1);
            full.push(q);
        }
        self.conjugators = Some(full);
        self
    }

    pub fn group(&self) -> &KleinianGroup {
        &self.group
    }

    pub fn exponents(&self, k: usize) -> &[i64] {
        &self.exponents[k]
    }

    /// The subgroup `t -> g(t)^-1`.
    pub fn inverse(&self) -> OneParamSubgroup {
        OneParamSubgroup {
            group: self.group,
            exponents: self
                .exponents
                .iter()
                .map(|e| e.iter().map(|x| -x).collect())
                .collect(),
            conjugators: self.conjugators.clone(),
        }
    }

    fn diag_poly(&self, k: usize, sign: i64) -> Matrix<LaurentPoly> {
        let d = self.exponents[k].len();
        let mut m = Matrix::zero(d, d);
        for (i, &e) in self.exponents[k].iter().enumerate() {
            m[(i, i)] = LaurentPoly::t_power(sign * e);
        }
        m
    }

    fn conjugate(&self, k: usize, diag: Matrix<LaurentPoly>) -> Matrix<LaurentPoly> {
        match &self.conjugators {
            None => diag,
            Some(qs) => {
                let q = crate::exactnum::laurent_matrix(&qs[k]);
                let q_inv = crate::exactnum::laurent_matrix(&qs[k].inverse());
                q.mul(&diag).mul(&q_inv)
            }
        }
    }

    /// The gauge component `g_k(t)` as a Laurent matrix.
    pub fn gauge_poly(&self, k: usize) -> Matrix<LaurentPoly> {
        self.conjugate(k, self.diag_poly(k, 1))
    }

    /// The inverse component `g_k(t)^-1`.
    pub fn gauge_poly_inv(&self, k: usize) -> Matrix<LaurentPoly> {
        self.conjugate(k, self.diag_poly(k, -1))
    }

    /// Pairing with a character of the gauge group given by integer weights
    /// over the nontrivial vertices: the exponent of `theta(g(t))`.
    pub fn pairing(&self, theta: &[i64]) -> i64 {
        assert_eq!(theta.len(), self.exponents.len() - 1);
        theta
            .iter()
            .zip(&self.exponents[1..])
            .map(|(&w, e)| w * e.iter().sum::<i64>())
            .sum()
    }
}

/// Applies `g(t)` to every block of a datum:
/// `phi_(i,j) -> dsum_k g_k(t) . phi_(i,j) . (g_i(t)^-1 (x) g_j(t)^-1)`.
pub fn apply_one_param(
    s: &OneParamSubgroup,
    phi: &CGDatum,
) -> BTreeMap<(usize, usize), Matrix<LaurentPoly>> {
    let ctx = Ctx::new(phi.group());
    let r = ctx.r();
    let gauge: Vec<Matrix<LaurentPoly>> = (0..r).map(|k| s.gauge_poly(k)).collect();
    let gauge_inv: Vec<Matrix<LaurentPoly>> = (0..r).map(|k| s.gauge_poly_inv(k)).collect();
    let mut out = BTreeMap::new();
    for i in 0..r {
        for j in 0..r {
            let codomain: Vec<Matrix<LaurentPoly>> = ctx
                .comps(i, j)
                .iter()
                .map(|&k| gauge[k].clone())
                .collect();
            let m = Matrix::direct_sum(&codomain)
                .mul(&crate::exactnum::laurent_matrix(phi.block(i, j)))
                .mul(&gauge_inv[i].kron(&gauge_inv[j]));
            out.insert((i, j), m);
        }
    }
    out
}

/// Applies `g(t)` to a point of the two-dimensional natural representation.
pub fn apply_one_param_x(s: &OneParamSubgroup, x: &[Scalar; 2]) -> [LaurentPoly; 2] {
    match s.group.family() {
        Family::A => {
            let comps = s.group.natural_rep();
            [
                LaurentPoly::monomial(x[0].clone(), s.exponents[comps[0]][0]),
                LaurentPoly::monomial(x[1].clone(), s.exponents[comps[1]][0]),
            ]
        }
        Family::D => {
            let g = s.gauge_poly(4);
            let mut out = [LaurentPoly::zero(), LaurentPoly::zero()];
            for (row, slot) in out.iter_mut().enumerate() {
                for (col, xc) in x.iter().enumerate() {
                    *slot = slot.add(&g[(row, col)].scale(xc));
                }
            }
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cgvariety::phi0;
    use crate::exactnum::mat_i64;

    #[test]
    fn type_a_blocks_scale_by_weight_differences() {
        let group = KleinianGroup::a(4);
        let reference = phi0(&group);
        let alpha = [3i64, -1, 2, 5];
        let s = OneParamSubgroup::from_scalars(&group, &alpha);
        let moved = apply_one_param(&s, &reference);
        let weight = |v: usize| if v == 0 { 0 } else { alpha[v - 1] };
        for i in 0..5usize {
            for j in 0..5usize {
                let k = (i + j) % 5;
                let expected = LaurentPoly::t_power(weight(k) - weight(i) - weight(j));
                assert_eq!(moved[&(i, j)][(0, 0)], expected, "block ({i},{j})");
            }
        }
    }

    #[test]
    fn trivial_subgroup_fixes_everything() {
        let group = KleinianGroup::d(5);
        let reference = phi0(&group);
        let s = OneParamSubgroup::new(&group, vec![vec![0], vec![0], vec![0], vec![0, 0], vec![0, 0]]);
        let moved = apply_one_param(&s, &reference);
        for (pair, m) in &moved {
            assert_eq!(*m, crate::exactnum::laurent_matrix(reference.block(pair.0, pair.1)));
        }
        let x = [Scalar::from_int(2), Scalar::from_int(-3)];
        let gx = apply_one_param_x(&s, &x);
        assert_eq!(gx[0], LaurentPoly::from_scalar(x[0].clone()));
        assert_eq!(gx[1], LaurentPoly::from_scalar(x[1].clone()));
    }

    #[test]
    fn inverse_negates_every_exponent() {
        let group = KleinianGroup::d(4);
        let s = OneParamSubgroup::new(&group, vec![vec![2], vec![-1], vec![0], vec![3, -4]]);
        let inv = s.inverse();
        for k in 0..5 {
            let product = s.gauge_poly(k).mul(&inv.gauge_poly(k));
            let d = s.exponents(k).len();
            assert_eq!(product, crate::exactnum::laurent_matrix(&Matrix::identity(d)));
        }
        assert_eq!(s.pairing(&[1, 1, 1, 1]), 2 + (-1) + 0 + (3 - 4));
        assert_eq!(s.pairing(&[1, 2, 3, 4]), 2 - 2 + 0 - 4);
        assert_eq!(inv.pairing(&[1, 2, 3, 4]), -s.pairing(&[1, 2, 3, 4]));
    }

    #[test]
    fn conjugated_component_acts_through_its_basis() {
        let group = KleinianGroup::d(4);
        let q = mat_i64(2, 2, &[1, 1, 0, 1]);
        let s = OneParamSubgroup::new(&group, vec![vec![0], vec![0], vec![0], vec![1, 0]])
            .with_conjugators(vec![
                Matrix::identity(1),
                Matrix::identity(1),
                Matrix::identity(1),
                q.clone(),
            ]);
        let g = s.gauge_poly(4);
        // Q diag(t, 1) Q^-1 with Q = [[1,1],[0,1]].
        assert_eq!(g[(0, 0)], LaurentPoly::t_power(1));
        assert_eq!(g[(0, 1)], LaurentPoly::from_scalar(Scalar::one()).sub(&LaurentPoly::t_power(1)));
        assert_eq!(g[(1, 0)], LaurentPoly::zero());
        assert_eq!(g[(1, 1)], LaurentPoly::from_scalar(Scalar::one()));
        let product = g.mul(&s.gauge_poly_inv(4));
        assert_eq!(product, crate::exactnum::laurent_matrix(&Matrix::identity(2)));
    }

    #[test]
    fn natural_action_on_type_d_uses_the_two_dimensional_vertex() {
        let group = KleinianGroup::d(6);
        let s = OneParamSubgroup::new(
            &group,
            vec![vec![0], vec![0], vec![0], vec![2, -1], vec![0, 0], vec![0, 0]],
        );
        let x = [Scalar::from_int(5), Scalar::from_int(7)];
        let gx = apply_one_param_x(&s, &x);
        assert_eq!(gx[0], LaurentPoly::monomial(Scalar::from_int(5), 2));
        assert_eq!(gx[1], LaurentPoly::monomial(Scalar::from_int(7), -1));
    }
}
