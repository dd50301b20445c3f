//! The cyclic nullcone families.
//!
//! For each `k` in `1..=n+1` the exponents
//!
//! * `alpha_i = -i (n - k + 1)` for `1 <= i <= k - 1`,
//! * `alpha_i = -(n - i + 1)(k - 1)` for `k <= i <= n`,
//!
//! with either factor clamped to 1 when `k` sits at an end of the range, are
//! superadditive, so the direct limit `lim g(t) . phi0` exists. The limit
//! keeps exactly the blocks whose exponent balances: first column nonzero up
//! to `k - 2`, last column nonzero from `k + 1`. Its comparison
//! representation is the family representative with `a`-arrows along
//! `A_1..A_(k-1)` and `b`-arrows along the starred rest.

use super::NullconeFamily;
use crate::cgvariety::{apply_one_param, phi0, CGDatum, OneParamSubgroup};
use crate::exactnum::{laurent_limit_at_zero, LaurentLimit, Ring, Scalar};
use crate::quiver::{comparison_r, constant_x};
use crate::reptheory::KleinianGroup;
use std::collections::BTreeMap;

/// Builds the `k`-th nullcone family over the cyclic group of rank `n`.
///
/// The boundary families have a single parameter: `k = 1` has no `a`-arrows
/// and `k = n + 1` no `b`-arrows, so the unused parameter must be zero.
pub fn nullcone_an(n: u32, k: usize, a: &Scalar, b: &Scalar) -> NullconeFamily {
    let nn = n as usize;
    assert!(nn >= 2, "rank must be at least 2");
    assert!((1..=nn + 1).contains(&k), "family index must lie in 1..=n+1");
    if k == 1 {
        assert!(a.is_zero(), "the first family has no a-arrows; pass a = 0");
    }
    if k == nn + 1 {
        assert!(b.is_zero(), "the last family has no b-arrows; pass b = 0");
    }

    let group = KleinianGroup::a(n);
    let up = (nn + 1 - k).max(1) as i64;
    let down = (k - 1).max(1) as i64;
    let alpha: Vec<i64> = (1..=nn)
        .map(|i| {
            if i <= k - 1 {
                -(i as i64) * up
            } else {
                -((nn - i + 1) as i64) * down
            }
        })
        .collect();

    for i in 1..=nn {
        for j in 1..=nn {
            let t = (i + j) % (nn + 1);
            let at = if t == 0 { 0 } else { alpha[t - 1] };
            assert!(
                alpha[i - 1] + alpha[j - 1] <= at,
                "superadditivity fails at ({i}, {j})"
            );
        }
    }

    let s = OneParamSubgroup::from_scalars(&group, &alpha);
    let phi = phi0(&group);
    let mut blocks = BTreeMap::new();
    for ((i, j), m) in apply_one_param(&s, &phi) {
        match laurent_limit_at_zero(&m, crate::DEFAULT_TOLERANCE) {
            LaurentLimit::Exists(limit) => {
                blocks.insert((i, j), limit);
            }
            LaurentLimit::Diverges { .. } => {
                unreachable!("superadditive exponents guarantee the limit")
            }
        }
    }
    let limit = CGDatum::new(group, blocks);
    let rep = comparison_r(&limit, &constant_x(&[a.clone(), b.clone()]));

    NullconeFamily {
        group,
        k,
        params: vec![a.clone(), b.clone()],
        subgroup: s,
        limit,
        rep,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cgvariety::f0;
    use crate::exactnum::BivarPoly;
    use crate::quiver::is_theta2_semistable;

    fn family_params(n: usize, k: usize) -> (Scalar, Scalar) {
        let a = if k == 1 {
            Scalar::zero()
        } else {
            Scalar::from_int(2)
        };
        let b = if k == n + 1 {
            Scalar::zero()
        } else {
            Scalar::from_int(3)
        };
        (a, b)
    }

    #[test]
    fn exponents_match_the_closed_form() {
        let fam = nullcone_an(4, 2, &Scalar::from_int(1), &Scalar::from_int(1));
        let alpha: Vec<i64> = (1..=4).map(|v| fam.subgroup.exponents(v)[0]).collect();
        assert_eq!(alpha, vec![-3, -3, -2, -1]);

        // End families use the clamped factor.
        let fam = nullcone_an(4, 1, &Scalar::zero(), &Scalar::from_int(1));
        let alpha: Vec<i64> = (1..=4).map(|v| fam.subgroup.exponents(v)[0]).collect();
        assert_eq!(alpha, vec![-4, -3, -2, -1]);

        let fam = nullcone_an(4, 5, &Scalar::from_int(1), &Scalar::zero());
        let alpha: Vec<i64> = (1..=4).map(|v| fam.subgroup.exponents(v)[0]).collect();
        assert_eq!(alpha, vec![-1, -2, -3, -4]);
    }

    #[test]
    fn limit_has_the_stated_column_patterns() {
        for n in 2..=6usize {
            for k in 1..=n + 1 {
                let (a, b) = family_params(n, k);
                let fam = nullcone_an(n as u32, k, &a, &b);
                for i in 1..=n {
                    let first = fam.limit.block(i, 1).data()[0].clone();
                    let expect1 = if (1..=k.saturating_sub(2)).contains(&i) {
                        Scalar::one()
                    } else {
                        Scalar::zero()
                    };
                    assert_eq!(first, expect1, "n={n} k={k} block ({i},1)");
                    let last = fam.limit.block(i, n).data()[0].clone();
                    let expectn = if (k + 1..=n).contains(&i) {
                        Scalar::one()
                    } else {
                        Scalar::zero()
                    };
                    assert_eq!(last, expectn, "n={n} k={k} block ({i},{n})");
                }
            }
        }
    }

    #[test]
    fn representative_matches_the_arrow_pattern() {
        for n in 2..=6usize {
            for k in 1..=n + 1 {
                let (a, b) = family_params(n, k);
                let fam = nullcone_an(n as u32, k, &a, &b);
                for i in 1..=n + 1 {
                    let fwd = if i <= k - 1 {
                        BivarPoly::from_scalar(a.clone())
                    } else {
                        BivarPoly::zero()
                    };
                    assert_eq!(fam.rep.rho(i).data()[0], fwd, "n={n} k={k} arrow {i}");
                    let bwd = if i >= k + 1 {
                        BivarPoly::from_scalar(b.clone())
                    } else {
                        BivarPoly::zero()
                    };
                    assert_eq!(
                        fam.rep.rho_star(i).data()[0],
                        bwd,
                        "n={n} k={k} starred arrow {i}"
                    );
                }
                assert!(is_theta2_semistable(&fam.rep).semistable, "n={n} k={k}");
                assert!(f0(&fam.limit).is_zero(), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn limit_is_fixed_by_the_subgroup() {
        for (n, k) in [(3u32, 2usize), (4, 3), (5, 1), (5, 6)] {
            let (a, b) = family_params(n as usize, k);
            let fam = nullcone_an(n, k, &a, &b);
            for scale in [1, 3] {
                let alpha: Vec<i64> = (1..=n as usize)
                    .map(|v| scale * fam.subgroup.exponents(v)[0])
                    .collect();
                let s = OneParamSubgroup::from_scalars(&fam.group, &alpha);
                for ((i, j), m) in apply_one_param(&s, &fam.limit) {
                    for poly in m.data() {
                        assert!(
                            poly.terms().all(|(e, _)| e == 0),
                            "moving entry in block ({i}, {j}) at scale {scale}"
                        );
                    }
                }
            }
        }
    }
}
