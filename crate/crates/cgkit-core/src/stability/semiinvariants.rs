//! The standard semiinvariants `f_q` and the Reynolds operator.
//!
//! For the cyclic group of rank `n` and `0 <= q <= n`, the product
//!
//! `f_q = prod_(i=1)^(n-q) rho(A_i)^(n-q+1-i) . prod_(i=n-q+2)^(n+1) rho(A_i*)^(i-(n-q+1))`
//!
//! has gauge weight 1 at every nontrivial vertex, so it scales by `theta_2`
//! under the gauge action. Restricted along the comparison map of the
//! reference datum it becomes a single plane monomial. The Reynolds operator
//! averages a monomial against `theta_2` over the group; which monomials
//! survive is a congruence on `p - q`.

use crate::exactnum::{BivarPoly, Ring, Scalar};
use crate::quiver::QuiverRep;
use crate::reptheory::{Family, KleinianGroup};

/// The semiinvariant `f_q` evaluated on a cyclic quiver representation.
pub fn fq_semiinvariant(n: u32, q: u32, rep: &QuiverRep) -> BivarPoly {
    assert_eq!(rep.quiver().group().family(), Family::A);
    assert_eq!(rep.quiver().group().n(), n);
    assert!(q <= n, "q must lie in 0..=n");
    let m = (n - q) as usize;
    let mut f = BivarPoly::from_scalar(Scalar::one());
    for i in 1..=m {
        f = f.mul(&rep.rho(i).data()[0].pow((m + 1 - i) as u32));
    }
    for i in m + 2..=(n as usize + 1) {
        f = f.mul(&rep.rho_star(i).data()[0].pow((i - m - 1) as u32));
    }
    f
}

/// Gauge weight of `f_q` at every vertex (trivial vertex first): each arrow
/// factor adds its exponent at the head and subtracts it at the tail, a
/// starred arrow the other way round.
pub fn fq_vertex_weights(n: u32, q: u32) -> Vec<i64> {
    assert!(q <= n);
    let nn = n as usize;
    let m = nn - q as usize;
    let mut w = vec![0i64; nn + 1];
    let wrap = |v: usize| v % (nn + 1);
    for i in 1..=m {
        let e = (m + 1 - i) as i64;
        w[wrap(i)] += e;
        w[wrap(i - 1)] -= e;
    }
    for i in m + 2..=nn + 1 {
        let e = (i - m - 1) as i64;
        w[wrap(i - 1)] += e;
        w[wrap(i)] -= e;
    }
    w
}

/// Checks that `f_q` restricted along the reference comparison map is the
/// monomial `X^((n-q)(n-q+1)/2) Y^(q(q+1)/2)`.
pub fn check_fq_restriction(n: u32, q: u32) -> bool {
    let group = KleinianGroup::a(n);
    let rep = crate::quiver::comparison_r(&crate::cgvariety::phi0(&group), &crate::quiver::symbolic_x());
    let f = fq_semiinvariant(n, q, &rep);
    let expected = BivarPoly::monomial(Scalar::one(), (n - q) * (n - q + 1) / 2, q * (q + 1) / 2);
    f == expected
}

/// Monomials `X^p Y^q` with `p + q <= degree_bound` surviving the Reynolds
/// operator `R(h) = (1/|G|) sum_g theta_2(g) g.h`, computed by brute force
/// over the group elements with exact scalars.
pub fn reynolds_image(n: u32, degree_bound: u32) -> Vec<(u32, u32)> {
    assert!(degree_bound <= 40, "degree bound capped at 40");
    let group = KleinianGroup::a(n);
    let irreps = group.irreps();
    let nat = group.natural_rep();
    let elements = group.elements();

    // Per element: theta_2 value and the two coordinate scaling factors.
    let factors: Vec<(Scalar, Scalar, Scalar)> = elements
        .iter()
        .map(|g| {
            let theta2 = (1..irreps.len()).fold(Scalar::one(), |acc, v| {
                acc.mul(&irreps[v].matrix(g).data()[0])
            });
            let r1 = irreps[nat[0]].matrix(g).data()[0].clone();
            let rn = irreps[nat[1]].matrix(g).data()[0].clone();
            (theta2, r1.inv(), rn.inv())
        })
        .collect();

    let mut out = Vec::new();
    for p in 0..=degree_bound {
        for q in 0..=degree_bound - p {
            let mut sum = Scalar::zero();
            for (theta2, x_scale, y_scale) in &factors {
                let term = theta2
                    .mul(&x_scale.pow(p as i64))
                    .mul(&y_scale.pow(q as i64));
                sum = sum.add(&term);
            }
            if !sum.is_zero() {
                out.push((p, q));
            }
        }
    }
    out
}

/// The closed-form survivor set: for odd `n` the congruence
/// `p - q = (n+1)/2 mod (n+1)`, for even `n` the invariant monomials
/// `p - q = 0 mod (n+1)`.
pub fn reynolds_survivors(n: u32, degree_bound: u32) -> Vec<(u32, u32)> {
    let modulus = (n + 1) as i64;
    let target = if n % 2 == 1 { (n as i64 + 1) / 2 } else { 0 };
    let mut out = Vec::new();
    for p in 0..=degree_bound {
        for q in 0..=degree_bound - p {
            if (p as i64 - q as i64 - target).rem_euclid(modulus) == 0 {
                out.push((p, q));
            }
        }
    }
    out
}
