use proptest::prelude::*;
use rigidfield::field::KElement;
use rigidfield::maplemma::RationalMap2;
use rigidfield::poly::{poly2, IntPoly2};
use num_traits::{One, Zero};
use rigidfield::syntax::{format_poly2, parse_expr, poly2 as to_poly2};

fn arb_poly2() -> impl Strategy<Value = IntPoly2> {
    prop::collection::vec((0u32..4, 0u32..4, -20i64..=20), 1..6).prop_map(|t| poly2(&t))
}

proptest! {
    #[test]
    fn polynomial_text_round_trip(p in arb_poly2()) {
        let s = format_poly2(&p, ("x", "y"));
        prop_assert_eq!(to_poly2(&parse_expr(&s).unwrap()).unwrap(), p);
    }

    #[test]
    fn field_element_text_round_trip(n in arb_poly2(), d in arb_poly2()) {
        prop_assume!(!d.is_zero());
        let e = KElement::new(n, d).unwrap();
        prop_assert_eq!(e.to_string().parse::<KElement>().unwrap(), e);
    }

    #[test]
    fn field_arithmetic_identities(a in arb_poly2(), b in arb_poly2(), c in arb_poly2()) {
        prop_assume!(!c.is_zero());
        let (a, b) = (KElement::from_poly(a), KElement::from_poly(b));
        let c = KElement::new(IntPoly2::one(), c).unwrap();
        prop_assert_eq!(a.add(&b).mul(&c), a.mul(&c).add(&b.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn map_text_round_trip(p in arb_poly2(), q in arb_poly2(), r in arb_poly2(), s in arb_poly2()) {
        prop_assume!(!q.is_zero() && !s.is_zero());
        let text = format!(
            "map({}, {}, {}, {})",
            format_poly2(&p, ("x", "y")),
            format_poly2(&q, ("x", "y")),
            format_poly2(&r, ("x", "y")),
            format_poly2(&s, ("x", "y"))
        );
        let f: RationalMap2 = text.parse().unwrap();
        prop_assert_eq!(f.to_string().parse::<RationalMap2>().unwrap(), f);
    }
}
