use proptest::prelude::*;

use poinf::oracle::{bf_check, bf_compose, random_element, random_plus, truncate, RandomParams};
use poinf::{Element, Point, Z2};

fn small() -> RandomParams {
    RandomParams { max_window: 5, max_shift: 2, hole_budget: 4 }
}

prop_compose! {
    fn element()(seed in any::<u64>()) -> Element {
        random_element(seed, small()).unwrap()
    }
}

prop_compose! {
    fn plus_element()(seed in any::<u64>()) -> Element {
        random_plus(seed, small()).unwrap()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn compose_is_associative(a in element(), b in element(), c in element()) {
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
    }

    #[test]
    fn identity_is_neutral(a in element()) {
        let i = Element::identity();
        prop_assert_eq!(i.compose(&a), a.clone());
        prop_assert_eq!(a.compose(&i), a);
    }

    #[test]
    fn products_stay_valid(a in element(), b in element()) {
        let ab = a.compose(&b);
        prop_assert!(ab.plus().validate().is_valid());
        prop_assert!(bf_check(&truncate(&ab, 16)).is_valid());
    }

    #[test]
    fn compose_matches_pointwise(a in element(), b in element()) {
        let wide = 12 + a.plus().max_shift();
        let oracle = bf_compose(&truncate(&a, wide), &truncate(&b, wide));
        for (x, y) in truncate(&a.compose(&b), 12).entries() {
            prop_assert_eq!(oracle.get(*x), Some(*y));
        }
    }

    #[test]
    fn normalize_is_idempotent_and_faithful(a in element(), extra in 0u32..4) {
        let big = a.expand(a.bound() + extra);
        prop_assert_eq!(&big, &a);
        let n = big.normalize();
        prop_assert!(n.is_normalized());
        prop_assert_eq!(n.normalize().bound(), n.bound());
        prop_assert_eq!(truncate(&n, 14), truncate(&big, 14));
    }

    #[test]
    fn json_round_trips(a in element()) {
        let back = Element::from_json(&a.to_json()).unwrap();
        prop_assert_eq!(back.to_json(), a.to_json());
    }

    #[test]
    fn swap_is_an_involutive_automorphism(a in plus_element(), b in plus_element()) {
        let h = |x: &Element| x.automorphism_h();
        prop_assert_eq!(h(&h(&a)), a.clone());
        prop_assert_eq!(h(&a.compose(&b)), h(&a).compose(&h(&b)));
        let w = Element::swap();
        prop_assert_eq!(w.compose(&a).compose(&w), h(&a));
    }

    #[test]
    fn orientation_is_additive(a in element(), b in element()) {
        prop_assert_eq!(a.compose(&b).g(), a.g() + b.g());
        prop_assert_eq!(a.orientation().unwrap(), a.g());
    }

    #[test]
    fn decompose_splits_off_the_swap(a in element()) {
        let (p, g) = a.decompose();
        prop_assert_eq!(p.g(), Z2::Zero);
        let back = if g.is_one() { p.compose(&Element::swap()) } else { p };
        prop_assert_eq!(back, a);
    }

    #[test]
    fn powers_agree_with_repeated_products(a in element(), k in 0u32..5) {
        let mut acc = Element::identity();
        for _ in 0..k {
            acc = acc.compose(&a);
        }
        prop_assert_eq!(a.pow(k), acc);
    }

    #[test]
    fn apply_respects_the_product_order(a in element(), x in 1u32..10, y in 1u32..10, u in 1u32..10, v in 1u32..10) {
        let (p, q) = (Point::new(x, y), Point::new(u, v));
        if let (true, Some(pa), Some(qa)) = (p.leq(q), a.apply(p), a.apply(q)) {
            prop_assert!(pa.leq(qa));
        }
    }
}
