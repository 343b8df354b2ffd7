mod common;

use num_bigint::BigInt;
use proptest::prelude::*;

use novikov_core::rings::{expand, invert_as_series};
use novikov_core::{Direction, LaurentPoly, RationalFunction, TruncatedSeries};

use common::oracle;

fn poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-3i64..=3, -4i64..=4), 0..5).prop_map(LaurentPoly::from_terms)
}

fn nonzero_poly() -> impl Strategy<Value = LaurentPoly> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

/// A Novikov unit on the plus side: lowest coefficient ±1.
fn plus_unit() -> impl Strategy<Value = LaurentPoly> {
    (-2i64..=2, prop::bool::ANY, poly()).prop_map(|(k, neg, tail)| {
        let lead = LaurentPoly::monomial(if neg { -1 } else { 1 }, k);
        let higher = LaurentPoly::from_terms(tail.terms().map(|(e, c)| (k + 1 + e.rem_euclid(4), c.clone())));
        &lead + &higher
    })
}

fn direction() -> impl Strategy<Value = Direction> {
    prop_oneof![Just(Direction::Plus), Just(Direction::Minus)]
}

proptest! {
    #[test]
    fn laurent_ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, LaurentPoly::zero());
        prop_assert_eq!(&a * &LaurentPoly::one(), a.clone());
    }

    #[test]
    fn reverse_variable_is_involutive_homomorphism(a in poly(), b in poly()) {
        prop_assert_eq!(a.reverse_variable().reverse_variable(), a.clone());
        prop_assert_eq!((&a * &b).reverse_variable(), &a.reverse_variable() * &b.reverse_variable());
    }

    #[test]
    fn unit_test_swaps_under_reversal(a in poly(), d in direction()) {
        prop_assert_eq!(a.is_novikov_unit(d), a.reverse_variable().is_novikov_unit(d.opposite()));
    }

    #[test]
    fn units_are_closed_under_products(a in plus_unit(), b in plus_unit()) {
        prop_assert!((&a * &b).is_novikov_unit(Direction::Plus));
    }

    #[test]
    fn inverse_times_p_is_one(p in plus_unit(), n in 0usize..12) {
        let inv = invert_as_series(&p, Direction::Plus, n).unwrap();
        let lo = p.ord().unwrap();
        let window = TruncatedSeries::from_poly(&p, Direction::Plus, lo + n as i64 + 8);
        let prod = inv.mul(&window);
        prop_assert!(prod.known_through() >= n as i64);
        prop_assert!(prod.agrees_with(&TruncatedSeries::from_poly(&LaurentPoly::one(), Direction::Plus, 100)));
    }

    #[test]
    fn minus_inverse_via_reversal(p in plus_unit(), n in 0usize..8) {
        let q = p.reverse_variable();
        let inv = invert_as_series(&q, Direction::Minus, n).unwrap();
        let window = TruncatedSeries::from_poly(&q, Direction::Minus, 100);
        prop_assert!(inv.mul(&window).agrees_with(&TruncatedSeries::from_poly(&LaurentPoly::one(), Direction::Minus, 100)));
    }

    #[test]
    fn non_units_are_rejected(p in nonzero_poly()) {
        let lowest = p.extreme(Direction::Plus).unwrap().1.clone();
        let result = invert_as_series(&p, Direction::Plus, 4);
        prop_assert_eq!(result.is_ok(), lowest == BigInt::from(1) || lowest == BigInt::from(-1));
    }

    #[test]
    fn normalization_is_idempotent_and_associated(p in nonzero_poly(), d in direction()) {
        let n = p.novikov_normalized(d);
        prop_assert_eq!(n.novikov_normalized(d), n.clone());
        prop_assert!(oracle::associated(&n, &p, d));
        let a = p.alexander_normalized();
        prop_assert_eq!(a.alexander_normalized(), a);
    }

    #[test]
    fn unit_multiples_are_associated(p in nonzero_poly(), u in plus_unit()) {
        prop_assert!(oracle::associated(&(&p * &u), &p, Direction::Plus));
        prop_assert!(novikov_core::linalg::novikov_associated(&(&p * &u), &p, Direction::Plus));
        let ur = u.reverse_variable();
        prop_assert!(novikov_core::linalg::novikov_associated(&(&p * &ur), &p, Direction::Minus));
    }

    #[test]
    fn rational_field_axioms(a in poly(), b in plus_unit(), c in poly(), d in plus_unit()) {
        let x = RationalFunction::new(a, b).unwrap();
        let y = RationalFunction::new(c, d).unwrap();
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x - &y) + &y, x.clone());
        if !x.is_zero() && x.numerator().is_novikov_unit(Direction::Plus) {
            prop_assert_eq!(&x * &x.inverse().unwrap(), RationalFunction::one());
        }
    }

    #[test]
    fn expansion_recovers_numerator(a in poly(), b in plus_unit(), k in 0i64..10) {
        let r = RationalFunction::new(a.clone(), b.clone()).unwrap();
        let s = expand(&r, Direction::Plus, k).unwrap();
        let bw = TruncatedSeries::from_poly(&b, Direction::Plus, 100);
        let aw = TruncatedSeries::from_poly(&a, Direction::Plus, 100);
        prop_assert!(s.mul(&bw).agrees_with(&aw));
    }
}
