mod common;

use polarkit::pl::{compare, join, meet};
use polarkit::transforms::{legendre_pl, polar_pl};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn polar_is_an_involution(seed in any::<u64>()) {
        let f = common::random_pl(&mut common::rng(seed), 12);
        prop_assert_eq!(polar_pl(&polar_pl(&f)), f);
    }

    #[test]
    fn legendre_is_an_involution(seed in any::<u64>()) {
        let f = common::random_pl(&mut common::rng(seed), 12);
        prop_assert_eq!(legendre_pl(&legendre_pl(&f)), f);
    }

    #[test]
    fn lattice_laws(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let (a, b, c) = (common::random_pl(&mut r, 6), common::random_pl(&mut r, 6), common::random_pl(&mut r, 6));
        prop_assert_eq!(join(&a, &b), join(&b, &a));
        prop_assert_eq!(meet(&a, &b), meet(&b, &a));
        prop_assert_eq!(join(&join(&a, &b), &c), join(&a, &join(&b, &c)));
        prop_assert_eq!(meet(&meet(&a, &b), &c), meet(&a, &meet(&b, &c)));
        prop_assert_eq!(meet(&a, &join(&a, &b)), a.clone());
        prop_assert_eq!(join(&a, &meet(&a, &b)), a.clone());
    }

    #[test]
    fn polar_exchanges_join_and_meet(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let (a, b) = (common::random_pl(&mut r, 8), common::random_pl(&mut r, 8));
        prop_assert_eq!(polar_pl(&join(&a, &b)), meet(&polar_pl(&a), &polar_pl(&b)));
        prop_assert_eq!(polar_pl(&meet(&a, &b)), join(&polar_pl(&a), &polar_pl(&b)));
    }

    #[test]
    fn order_reversal(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let a = common::random_pl(&mut r, 8);
        let b = join(&a, &common::random_pl(&mut r, 8));
        prop_assert!(compare(&a, &b).is_le());
        prop_assert!(compare(&polar_pl(&b), &polar_pl(&a)).is_le());
        prop_assert!(compare(&legendre_pl(&b), &legendre_pl(&a)).is_le());
    }
}
