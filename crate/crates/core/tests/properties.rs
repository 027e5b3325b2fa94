use std::cmp::Ordering;

use num_rational::BigRational;
use proptest::prelude::*;

use solvline::counterexample::{act_bconfig, compare_bconfig, inv_gb, mul_gb, random_gb};
use solvline::lamination::{act_leaf_tagged, relate, Leaf};
use solvline::orders::{element_to_max_plus_frame, to_max_plus_frame};
use solvline::realization::{enumerate, Realization};
use solvline::{between, compare, LaurentPoly, OrderTag, WreathElement};

type P = LaurentPoly<i64>;
type E = WreathElement<i64>;

fn poly() -> impl Strategy<Value = P> {
    prop::collection::vec((-6i64..=6, -4i64..=4), 0..5).prop_map(LaurentPoly::from_terms)
}

fn element() -> impl Strategy<Value = E> {
    (poly(), -3i64..=3).prop_map(|(p, k)| E::new(p, k))
}

fn tag() -> impl Strategy<Value = OrderTag> {
    prop::sample::select(OrderTag::ALL.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn frame_is_an_order_isomorphism(p in poly(), q in poly(), e in element(), t in tag()) {
        let mp = OrderTag::MaxPlus;
        prop_assert_eq!(compare(&p, &q, t), compare(&to_max_plus_frame(&p, t), &to_max_plus_frame(&q, t), mp));
        let f = element_to_max_plus_frame(&e, t);
        prop_assert_eq!(to_max_plus_frame(&e.act(&p), t), f.act(&to_max_plus_frame(&p, t)));
        prop_assert_eq!(to_max_plus_frame(&to_max_plus_frame(&p, t), t), p);
    }

    #[test]
    fn between_is_strict(p in poly(), q in poly(), t in tag()) {
        let (lo, hi) = match compare(&p, &q, t) {
            Ordering::Less => (p, q),
            Ordering::Greater => (q, p),
            Ordering::Equal => return Ok(()),
        };
        let m = between(&lo, &hi, t).unwrap();
        prop_assert_eq!(compare(&lo, &m, t), Ordering::Less);
        prop_assert_eq!(compare(&m, &hi, t), Ordering::Less);
    }

    #[test]
    fn tagged_leaves_stay_laminar(n1 in -3i64..=3, n2 in -3i64..=3, p in poly(), q in poly(), e in element(), t in tag()) {
        let (a, b) = (Leaf::of_tagged(n1, &p, t), Leaf::of_tagged(n2, &q, t));
        let r = relate(&a, &b, t);
        prop_assert_eq!(relate(&act_leaf_tagged(&e, &a, t), &act_leaf_tagged(&e, &b, t), t), r);
        prop_assert!(a.contains_tagged(&p, t));
    }

    #[test]
    fn realized_action_is_monotone(seed in 0u64..1000, t in tag()) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let e: E = solvline::sample::element(&mut rng, 3, 2, 2);
        let mut r = Realization::<i64, BigRational>::build(60, t);
        let qs: Vec<BigRational> = r.assignments().map(|(q, _)| q.clone()).collect();
        let images: Vec<BigRational> = qs.iter().map(|q| r.act_point(&e, q).unwrap()).collect();
        prop_assert!(images.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(r.is_order_preserving());
    }

    #[test]
    fn gb_action_is_an_action(seed in 0u64..1000) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let (a, b, f) = (random_gb(&mut rng, 3), random_gb(&mut rng, 3), random_gb(&mut rng, 3).config);
        prop_assert_eq!(act_bconfig(&mul_gb(&a, &b), &f), act_bconfig(&a, &act_bconfig(&b, &f)));
        prop_assert!(act_bconfig(&mul_gb(&a, &inv_gb(&a)), &f) == f);
        let g = random_gb(&mut rng, 3).config;
        prop_assert_eq!(compare_bconfig(&act_bconfig(&a, &f), &act_bconfig(&a, &g)), compare_bconfig(&f, &g));
    }
}

#[test]
fn enumeration_prefix_is_distinct() {
    let mut seen = std::collections::HashSet::new();
    for i in 0..3125 {
        assert!(seen.insert(enumerate(i)), "repeat at {i}");
    }
}
