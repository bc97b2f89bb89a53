use std::sync::{Arc, OnceLock};

use proptest::prelude::*;

use hprime_core::braiding::{braid_act, BraidWord};
use hprime_core::coalgebra::mobius_roundtrip;
use hprime_core::rmatrix::{tensor_inverse, RMatrix};
use hprime_core::series::{int, rat};
use hprime_core::subset::SubsetIndex;
use hprime_core::text::parse_tensor;
use hprime_core::{AlgebraElement, HopfAlgebra, InstanceKind, Pbw, ScalarSeries, TensorElement};

const ORDER: usize = 3;

fn alg() -> &'static Arc<HopfAlgebra> {
    static ALG: OnceLock<Arc<HopfAlgebra>> = OnceLock::new();
    ALG.get_or_init(|| HopfAlgebra::new(InstanceKind::UhSl2, ORDER))
}

fn r_matrix() -> &'static RMatrix {
    static R: OnceLock<RMatrix> = OnceLock::new();
    R.get_or_init(|| RMatrix::build(alg()).unwrap())
}

fn series() -> impl Strategy<Value = ScalarSeries> {
    proptest::collection::vec((-3i64..=3, 1i64..=3), ORDER).prop_map(|cs| {
        ScalarSeries::from_coeffs(cs.into_iter().map(|(n, d)| rat(n, d)).collect()).unwrap()
    })
}

fn pbw(max_degree: u16) -> impl Strategy<Value = Pbw> {
    (0..=max_degree, 0..=max_degree, 0..=max_degree)
        .prop_filter("degree", move |(f, h, e)| f + h + e <= max_degree)
        .prop_map(|(f, h, e)| Pbw::new(f, h, e))
}

fn element() -> impl Strategy<Value = AlgebraElement> {
    proptest::collection::vec((pbw(2), series()), 1..4).prop_map(|terms| {
        let mut x = AlgebraElement::zero(ORDER);
        for (m, c) in terms {
            x.add_term(m, c);
        }
        x
    })
}

fn subset() -> impl Strategy<Value = SubsetIndex> {
    proptest::collection::btree_set(1usize..=3, 0..=3)
        .prop_map(|s| SubsetIndex::new(3, s.into_iter().collect()).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn series_inverse_is_involutive(mut s in series()) {
        if s.constant_term() == &int(0) {
            s = &s + &ScalarSeries::one(ORDER);
        }
        let inv = s.inv().unwrap();
        prop_assert!((&s * &inv).is_one());
        prop_assert_eq!(inv.inv().unwrap(), s);
    }

    #[test]
    fn series_text_round_trip(s in series()) {
        prop_assert_eq!(ScalarSeries::parse(&s.to_string(), ORDER).unwrap(), s);
    }

    #[test]
    fn exp_turns_sums_into_products(a in series(), b in series()) {
        let a = a.shift_up(1);
        let b = b.shift_up(1);
        prop_assert_eq!((&a + &b).exp().unwrap(), &a.exp().unwrap() * &b.exp().unwrap());
    }

    #[test]
    fn multiplication_is_associative(a in element(), b in element(), c in element()) {
        let alg = alg();
        prop_assert_eq!(alg.mul(&alg.mul(&a, &b), &c), alg.mul(&a, &alg.mul(&b, &c)));
    }

    #[test]
    fn multiplication_distributes(a in element(), b in element(), c in element()) {
        let alg = alg();
        prop_assert_eq!(alg.mul(&a, &b.add(&c)), alg.mul(&a, &b).add(&alg.mul(&a, &c)));
    }

    #[test]
    fn coproduct_is_multiplicative(a in element(), b in element()) {
        let alg = alg();
        let lhs = alg.coproduct(&alg.mul(&a, &b));
        let rhs = alg.tensor_mul(&alg.coproduct(&a), &alg.coproduct(&b));
        prop_assert!(lhs.sub(&rhs).is_zero());
    }

    #[test]
    fn antipode_reverses_products(a in element(), b in element()) {
        let alg = alg();
        let lhs = alg.antipode(&alg.mul(&a, &b));
        let rhs = alg.mul(&alg.antipode(&b), &alg.antipode(&a));
        prop_assert!(lhs.sub(&rhs).is_zero());
        prop_assert_eq!(alg.mul(&a, &b).counit(), &a.counit() * &b.counit());
    }

    #[test]
    fn antipode_axiom(a in element()) {
        let alg = alg();
        let d = alg.coproduct(&a);
        let lhs = alg.multiply_legs(&alg.antipode_on_leg(&d, 0)).unwrap();
        prop_assert!(lhs.sub(&alg.one().scale(&a.counit())).is_zero());
    }

    #[test]
    fn r_intertwines_coproducts(a in element()) {
        let alg = alg();
        let r = r_matrix();
        let lhs = r.ad(&alg.coproduct(&a)).unwrap();
        prop_assert!(lhs.sub(&alg.coproduct(&a).flip()).is_zero());
    }

    #[test]
    fn tensor_inverse_is_involutive(a in element(), b in element()) {
        let alg = alg();
        let one = alg.one();
        let t = TensorElement::pure(&[&a, &b]).scale(&ScalarSeries::h(ORDER)).add(&TensorElement::pure(&[&one, &one]));
        let inv = tensor_inverse(alg, &t).unwrap();
        prop_assert!(alg.tensor_mul(&t, &inv).sub(&TensorElement::unit(2, ORDER)).is_zero());
        prop_assert_eq!(tensor_inverse(alg, &inv).unwrap(), t);
    }

    #[test]
    fn subset_inversion_round_trips(a in element(), sigma in subset()) {
        let x = TensorElement::from_algebra(&a);
        prop_assert!(mobius_roundtrip(&**alg(), &x, &sigma, "x").overall);
    }

    #[test]
    fn canonical_text_round_trips(a in element(), b in element()) {
        let t = TensorElement::pure(&[&a, &b]);
        prop_assert_eq!(parse_tensor(&t.canonical_text(), ORDER, 2).unwrap(), t);
    }

    #[test]
    fn braid_words_cancel(letters in proptest::collection::vec(prop_oneof![Just(1), Just(-1)], 0..4), a in element(), b in element()) {
        let w = BraidWord::new(2, letters).unwrap();
        let x = TensorElement::pure(&[&a, &b]);
        let y = braid_act(r_matrix(), &w.then(&w.inverse()), &x).unwrap();
        prop_assert!(y.sub(&x).is_zero());
    }
}
