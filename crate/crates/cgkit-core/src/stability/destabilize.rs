//! An explicit destabilising subgroup for unstable cyclic pairs.
//!
//! For a cyclic-group datum `phi` and plane point `x` whose comparison
//! representation fails the semistability criterion, the exponents below give
//! a one-parameter subgroup with positive pairing whose inverse limit exists.
//! Only the zero patterns of the first and last block columns are consulted:
//! `alpha_i` grows past each zero of `phi_(j,1)` when `x` has a first
//! coordinate, mirrored through `psi_(j,1) = phi_(n+1-j,n)` when it only has
//! a second, and clamped to zero along whichever chain stays nonzero when it
//! has both. A vanishing `x` is destabilised by the uniform exponent 1.

use super::StabilityError;
use crate::cgvariety::{CGDatum, OneParamSubgroup};
use crate::exactnum::{Ring, Scalar};
use crate::quiver::{comparison_r, constant_x, is_theta2_semistable};
use crate::reptheory::Family;

/// `alpha_i = max{ j <= i-1 : zero_j } + 1`, or `0` when no such `j` exists.
fn prefix_alpha(zeros: &[bool]) -> Vec<i64> {
    let n = zeros.len();
    let mut alpha = vec![0i64; n];
    let mut last_zero: Option<usize> = None;
    for i in 1..=n {
        alpha[i - 1] = last_zero.map_or(0, |j| j as i64 + 1);
        if zeros[i - 1] {
            last_zero = Some(i);
        }
    }
    alpha
}

/// Constructs a destabilising one-parameter subgroup for an unstable pair.
///
/// Returns [`StabilityError::Semistable`] when the comparison representation
/// of `(phi, x)` is semistable, so no such subgroup exists. The result always
/// satisfies the key inequality `alpha_(i+j) <= alpha_i + alpha_j` (indices
/// mod `n + 1`, `alpha_0 = 0`) on the nonzero blocks of `phi`, which is what
/// makes the inverse limit exist.
pub fn destabilize_an(phi: &CGDatum, x: &[Scalar; 2]) -> Result<OneParamSubgroup, StabilityError> {
    let group = *phi.group();
    if group.family() != Family::A {
        return Err(StabilityError::WrongFamily(format!("{:?}", group.family())));
    }
    let n = group.n() as usize;

    let rep = comparison_r(phi, &constant_x(x));
    if is_theta2_semistable(&rep).semistable {
        return Err(StabilityError::Semistable);
    }

    // zeros1[j-1] <=> phi_(j,1) = 0, zeros_n[j-1] <=> phi_(j,n) = 0.
    let zeros1: Vec<bool> = (1..=n).map(|j| phi.block(j, 1).is_zero()).collect();
    let zeros_n: Vec<bool> = (1..=n).map(|j| phi.block(j, n).is_zero()).collect();
    let x1_zero = x[0].is_zero();
    let xn_zero = x[1].is_zero();

    let alpha: Vec<i64> = if x1_zero && xn_zero {
        vec![1; n]
    } else if xn_zero {
        prefix_alpha(&zeros1)
    } else if x1_zero {
        // Mirror through psi_(j,1) = phi_(n+1-j,n).
        let zeros_psi: Vec<bool> = (1..=n).map(|j| zeros_n[n - j]).collect();
        let psi_alpha = prefix_alpha(&zeros_psi);
        (1..=n).map(|i| psi_alpha[n - i]).collect()
    } else {
        let grown = prefix_alpha(&zeros1);
        (1..=n)
            .map(|i| {
                let forward = (1..i).all(|j| !zeros1[j - 1]);
                let backward = (i + 1..=n).all(|j| !zeros_n[j - 1]);
                if forward || backward {
                    0
                } else {
                    grown[i - 1]
                }
            })
            .collect()
    };

    assert!(
        alpha.iter().any(|&a| a != 0),
        "unstable pair produced the trivial subgroup"
    );
    for i in 1..=n {
        for j in 1..=n {
            if !phi.block(i, j).is_zero() {
                let k = (i + j) % (n + 1);
                let lhs = if k == 0 { 0 } else { alpha[k - 1] };
                assert!(
                    lhs <= alpha[i - 1] + alpha[j - 1],
                    "key inequality fails at ({i}, {j})"
                );
            }
        }
    }
    if !x1_zero {
        assert_eq!(alpha[0], 0, "x_1 != 0 requires alpha_1 = 0");
    }
    if !xn_zero {
        assert_eq!(alpha[n - 1], 0, "x_n != 0 requires alpha_n = 0");
    }

    Ok(OneParamSubgroup::from_scalars(&group, &alpha))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cgvariety::phi0;
    use crate::exactnum::Matrix;
    use crate::quiver::ThetaParam;
    use crate::reptheory::KleinianGroup;
    use crate::stability::hm_check;

    const TOL: &str = "1e-30";

    /// phi0 for A_3 with the blocks (1,1), (3,1), (1,3) zeroed; the latter
    /// two are forced by coherence and symmetry once phi_(1,1) vanishes.
    fn a3_datum_with_11_zero() -> CGDatum {
        let group = KleinianGroup::a(3);
        let mut phi = phi0(&group);
        for (i, j) in [(1, 1), (3, 1), (1, 3)] {
            phi.set_block(i, j, Matrix::zero(1, 1));
        }
        phi
    }

    #[test]
    fn semistable_pair_is_rejected() {
        let group = KleinianGroup::a(3);
        let phi = phi0(&group);
        let x = [Scalar::from_int(1), Scalar::from_int(1)];
        assert!(matches!(
            destabilize_an(&phi, &x),
            Err(StabilityError::Semistable)
        ));
    }

    #[test]
    fn first_column_zero_gives_grown_exponents() {
        let phi = a3_datum_with_11_zero();
        let x = [Scalar::from_int(1), Scalar::zero()];
        let s = destabilize_an(&phi, &x).unwrap();
        let alpha: Vec<i64> = (1..=3).map(|k| s.exponents(k)[0]).collect();
        assert_eq!(alpha, vec![0, 2, 2]);

        let theta = ThetaParam::theta2(phi.group());
        let report = hm_check(&s, &phi, &x, &theta, TOL);
        assert!(report.is_certificate());
        assert_eq!(report.pairing, 4);
    }

    #[test]
    fn mirror_case_swaps_the_chain() {
        // Reflect the datum: zero (3,3) so that psi_(1,1) = phi_(3,3) = 0,
        // with the coherence-forced companions (1,3) and (3,1).
        let group = KleinianGroup::a(3);
        let mut phi = phi0(&group);
        for (i, j) in [(3, 3), (1, 3), (3, 1)] {
            phi.set_block(i, j, Matrix::zero(1, 1));
        }
        let x = [Scalar::zero(), Scalar::from_int(1)];
        let s = destabilize_an(&phi, &x).unwrap();
        let alpha: Vec<i64> = (1..=3).map(|k| s.exponents(k)[0]).collect();
        assert_eq!(alpha, vec![2, 2, 0]);

        let theta = ThetaParam::theta2(phi.group());
        let report = hm_check(&s, &phi, &x, &theta, TOL);
        assert!(report.is_certificate());
    }

    #[test]
    fn vanishing_x_gets_uniform_exponents() {
        let group = KleinianGroup::a(4);
        let phi = phi0(&group);
        let x = [Scalar::zero(), Scalar::zero()];
        let s = destabilize_an(&phi, &x).unwrap();
        let alpha: Vec<i64> = (1..=4).map(|k| s.exponents(k)[0]).collect();
        assert_eq!(alpha, vec![1, 1, 1, 1]);

        let theta = ThetaParam::theta2(phi.group());
        let report = hm_check(&s, &phi, &x, &theta, TOL);
        assert!(report.is_certificate());
    }

    #[test]
    fn wrong_family_is_rejected() {
        let group = KleinianGroup::d(4);
        let phi = phi0(&group);
        let x = [Scalar::from_int(1), Scalar::zero()];
        assert!(matches!(
            destabilize_an(&phi, &x),
            Err(StabilityError::WrongFamily(_))
        ));
    }
}
