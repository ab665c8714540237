use proptest::prelude::*;

use voracious::{CoxeterGroup, CoxeterMatrix, FieldContext, FieldScalar, Side, Word};

fn hyperbolic() -> CoxeterGroup {
    CoxeterGroup::new(CoxeterMatrix::triangle(3, 3, 4))
}

fn word(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0usize..3, 0..=max_len).prop_map(Word)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn canonical_word_is_a_member(v in word(9)) {
        let g = hyperbolic();
        let e = g.element_of_word(&v);
        let c = g.canonical_word(&e);
        prop_assert!(g.is_voracious(&c));
        prop_assert_eq!(g.element_of_word(&c), e.clone());
        prop_assert_eq!(c.len(), e.length());
    }

    #[test]
    fn members_are_geodesic(v in word(8)) {
        let g = hyperbolic();
        if g.is_voracious(&v) {
            prop_assert_eq!(g.element_of_word(&v).length(), v.len());
        }
    }

    #[test]
    fn projection_is_a_proper_prefix(v in word(9)) {
        let g = hyperbolic();
        let e = g.element_of_word(&v);
        let p = g.voracious_projection(&e);
        prop_assert!(g.is_prefix(&p, &e));
        prop_assert!(e.is_identity() || p.length() < e.length());
        prop_assert_eq!(g.inversion_walls(&e).len(), e.length());
        prop_assert!(g.frontier_set(&e).iter().all(|w| g.wall_separates(w, &p, &e)));
    }

    #[test]
    fn generators_are_involutions(v in word(8), s in 0usize..3) {
        let g = hyperbolic();
        let e = g.element_of_word(&v);
        for side in [Side::Left, Side::Right] {
            let f = g.apply_generator(&g.apply_generator(&e, s, side), s, side);
            prop_assert_eq!(&f, &e);
        }
        prop_assert_eq!(g.multiply(&e, &e.inverse()), g.identity());
    }

    #[test]
    fn wall_distance_is_translation_invariant(a in word(5), b in word(5), s in 0usize..3) {
        let g = hyperbolic();
        let x = g.element_of_word(&a);
        let h = g.element_of_word(&b);
        let w = g.wall_of_root(g.image_of_simple(&x, s));
        let hx = g.multiply(&h, &x);
        let hw = g.translate_wall(&h, &w);
        prop_assert_eq!(g.wall_distance(&x, &w), 0);
        prop_assert_eq!(g.wall_distance(&hx, &hw), 0);
        let id = g.identity();
        prop_assert_eq!(g.wall_distance(&h, &hw), g.wall_distance(&id, &w));
    }

    #[test]
    fn field_arithmetic(a in prop::collection::vec(-20i64..20, 4), b in prop::collection::vec(-20i64..20, 4)) {
        let f = FieldContext::new(12);
        let mk = |c: &[i64]| {
            FieldScalar::from_coefficients(c.iter().map(|&n| num_rational::BigRational::from_integer(n.into())).collect())
        };
        let (x, y) = (mk(&a), mk(&b));
        prop_assert_eq!(f.mul(&x, &y), f.mul(&y, &x));
        if let Some(yi) = f.inv(&y) {
            prop_assert_eq!(f.mul(&f.mul(&x, &y), &yi), x.clone());
        } else {
            prop_assert!(y.is_zero());
        }
        let approx = f.to_f64(&(&x - &y));
        let ord = f.cmp(&x, &y);
        if approx.abs() > 1e-6 {
            prop_assert_eq!(ord, approx.partial_cmp(&0.0).unwrap());
        }
    }

    #[test]
    fn matrix_json_round_trip(p in 2u64..7, q in 2u64..7, r in 0u64..7) {
        prop_assume!(r != 1);
        let m = CoxeterMatrix::triangle(p, q, r);
        prop_assert_eq!(CoxeterMatrix::parse(&m.to_json()).unwrap(), m);
    }
}
