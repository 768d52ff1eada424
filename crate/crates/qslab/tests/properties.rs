//! Property tests for the rewrite engine over the 7-sphere: linearity and
//! multiplicativity of reduction, compatibility with the involution, and
//! idempotence confirm the ideal is two-sided and star-closed.

use proptest::prelude::*;
use qslab::lab::Lab;
use qslab::ncpoly::{NCPoly, Word};
use qslab::scalar::ScalarQ;
use std::sync::OnceLock;

fn lab() -> &'static Lab {
    static LAB: OnceLock<Lab> = OnceLock::new();
    LAB.get_or_init(|| Lab::builtin().expect("presets load"))
}

fn arb_scalar() -> impl Strategy<Value = ScalarQ> {
    (-3i64..=3, -4i64..=4).prop_map(|(c, e)| ScalarQ::term(c, e))
}

fn arb_word() -> impl Strategy<Value = Word> {
    proptest::collection::vec(0u8..8, 0..=3).prop_map(Word)
}

fn arb_poly() -> impl Strategy<Value = NCPoly> {
    proptest::collection::vec((arb_word(), arb_scalar()), 1..=3).prop_map(|terms| {
        let mut p = NCPoly::zero();
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normal_form_is_idempotent(p in arb_poly()) {
        let rs = &lab().s7q;
        let n1 = rs.normal_form(&p).unwrap();
        let n2 = rs.normal_form(&n1).unwrap();
        prop_assert_eq!(n1, n2);
    }

    #[test]
    fn normal_form_is_linear(p in arb_poly(), r in arb_poly(), a in arb_scalar()) {
        let rs = &lab().s7q;
        let lhs = rs.normal_form(&p.scale(&a).add(&r)).unwrap();
        let rhs = rs.normal_form(&p).unwrap().scale(&a).add(&rs.normal_form(&r).unwrap());
        // the right-hand side may need a merge of equal words but no rewriting
        prop_assert_eq!(lhs, rs.normal_form(&rhs).unwrap());
    }

    #[test]
    fn normal_form_respects_products(p in arb_poly(), r in arb_poly()) {
        let rs = &lab().s7q;
        let lhs = rs.normal_form(&p.mul(&r)).unwrap();
        let rhs = rs
            .normal_form(&rs.normal_form(&p).unwrap().mul(&rs.normal_form(&r).unwrap()))
            .unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn star_commutes_with_reduction(p in arb_poly()) {
        let rs = &lab().s7q;
        let alg = &rs.algebra;
        let lhs = rs.normal_form(&p.star(alg)).unwrap();
        let rhs = rs.normal_form(&rs.normal_form(&p).unwrap().star(alg)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn star_is_involutive_and_antimultiplicative(p in arb_poly(), r in arb_poly()) {
        let alg = &lab().s7q.algebra;
        prop_assert_eq!(p.star(alg).star(alg), p.clone());
        prop_assert_eq!(p.mul(&r).star(alg), r.star(alg).mul(&p.star(alg)));
    }
}
