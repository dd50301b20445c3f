//! Property tests for the scalar tower.

use super::*;
use proptest::prelude::*;

fn arb_rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| Rational::new(n, d))
}

fn arb_cyclotomic() -> impl Strategy<Value = Cyclotomic> {
    (2u32..=16, proptest::collection::vec(arb_rational(), 1..6)).prop_map(|(order, coeffs)| {
        Cyclotomic::new(order, coeffs)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cyclotomic_field_axioms(a in arb_cyclotomic(), b in arb_cyclotomic(), c in arb_cyclotomic()) {
        // Associativity and commutativity.
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        // Distributivity.
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        // Additive inverse.
        prop_assert!(a.sub(&a).is_zero());
        // Multiplicative inverse.
        if !a.is_zero() {
            let prod = a.mul(&a.inv());
            prop_assert_eq!(prod.rational_part(), Some(Rational::one()));
        }
    }

    #[test]
    fn embed_is_ring_homomorphism(a in arb_cyclotomic(), b in arb_cyclotomic()) {
        let bits = 192usize;
        // Tolerance 2^-(bits/2) comfortably absorbs rounding of the embedding.
        let tol = "1e-28";
        let sa = Scalar::from_cyc(a.clone());
        let sb = Scalar::from_cyc(b.clone());
        let lhs_mul = sa.mul(&sb).embed(bits);
        let rhs_mul = sa.embed(bits).mul(&sb.embed(bits));
        prop_assert!(lhs_mul.approx_eq(&rhs_mul, tol));
        let lhs_add = sa.add(&sb).embed(bits);
        let rhs_add = sa.embed(bits).add(&sb.embed(bits));
        prop_assert!(lhs_add.approx_eq(&rhs_add, tol));
    }

    #[test]
    fn laurent_valuation_additive(
        e1 in -6i64..=6, e2 in -6i64..=6,
        c1 in arb_rational(), c2 in arb_rational(),
    ) {
        prop_assume!(!c1.is_zero() && !c2.is_zero());
        let f = LaurentPoly::monomial(Scalar::Rat(c1), e1).add(&LaurentPoly::t_power(e1 + 3));
        let g = LaurentPoly::monomial(Scalar::Rat(c2), e2);
        let fg = f.mul(&g);
        prop_assert_eq!(fg.valuation(), Some(e1 + e2));
    }

    #[test]
    fn laurent_limit_multiplicative(
        a0 in arb_rational(), b0 in arb_rational(),
        ahi in 1i64..=4, bhi in 1i64..=4,
    ) {
        let f = LaurentPoly::from_scalar(Scalar::Rat(a0)).add(&LaurentPoly::t_power(ahi));
        let g = LaurentPoly::from_scalar(Scalar::Rat(b0)).add(&LaurentPoly::t_power(bhi));
        let lhs = f.mul(&g).limit_at_zero("1e-30").unwrap();
        let rhs = f.limit_at_zero("1e-30").unwrap().mul(&g.limit_at_zero("1e-30").unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn scalar_mixed_order_arithmetic(j in 0i64..8, k in 0i64..12) {
        // zeta_8^j * zeta_12^k = zeta_24^(3j + 2k).
        let a = Scalar::root_of_unity(8, j);
        let b = Scalar::root_of_unity(12, k);
        let prod = a.mul(&b);
        prop_assert_eq!(prod, Scalar::root_of_unity(24, 3 * j + 2 * k));
    }
}
