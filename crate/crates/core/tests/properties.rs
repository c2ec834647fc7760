mod common;

use bhf_core::ktd::{compare, verify_elliptic_invariance, Algorithm, flip_ktd_direct, ktd_basefree, min_basefree_framing, Verdict};
use bhf_core::morphism::{find_isomorphism, is_isomorphism, DEFAULT_ATTEMPTS};
use bhf_core::type_d::ReductionOrder;
use bhf_core::type_da::{box_da_d, elliptic, identity, tau_lambda, tau_mu};
use bhf_core::{AlgebraElement, Idempotent};
use proptest::prelude::*;
use proptest::sample::select;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn element() -> impl Strategy<Value = AlgebraElement> {
    select(AlgebraElement::BASIS.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiplication_is_associative(a in element(), b in element(), c in element()) {
        prop_assert_eq!(a.multiply(b).multiply(c), a.multiply(b.multiply(c)));
    }

    #[test]
    fn random_modules_are_valid(seed in any::<u64>()) {
        prop_assert!(common::random_module(seed).is_valid());
    }

    #[test]
    fn every_cancel_keeps_d_squared_zero(seed in any::<u64>(), order in any::<u64>()) {
        let mut m = common::random_module(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(order);
        loop {
            let pairs: Vec<(String, String)> = m
                .arrows()
                .filter(|a| a.label.is_idempotent() && a.from != a.to)
                .map(|a| (a.from.clone(), a.to.clone()))
                .collect();
            let Some((x, y)) = pairs.choose(&mut rng) else { break };
            m = m.cancel(x, y).unwrap();
            prop_assert!(m.is_valid(), "{:?}", m.validate());
        }
        prop_assert!(m.is_reduced());
    }

    #[test]
    fn reduction_is_confluent(seed in any::<u64>(), a in any::<u64>(), b in any::<u64>()) {
        let m = common::random_module(seed);
        let (x, _) = m.reduce(&ReductionOrder::Seeded(a)).unwrap();
        let (y, _) = m.reduce(&ReductionOrder::Seeded(b)).unwrap();
        let verdict = compare(&x.minimize_arrows(), &y.minimize_arrows(), 0);
        prop_assert!(verdict.is_verified(), "{}", verdict);
    }

    #[test]
    fn base_changes_are_detected(seed in any::<u64>(), scramble in any::<u64>()) {
        let m = common::random_module(seed).reduced();
        let mut rng = ChaCha8Rng::seed_from_u64(scramble);
        let names: Vec<String> = m.generators().keys().cloned().collect();
        prop_assume!(!names.is_empty());
        let mut n = m.clone();
        for _ in 0..6 {
            let (y, z) = (names.choose(&mut rng).unwrap(), names.choose(&mut rng).unwrap());
            let fitting: Vec<AlgebraElement> = AlgebraElement::BASIS
                .into_iter()
                .filter(|c| c.left_idem().ok() == n.idem(y) && c.right_idem().ok() == n.idem(z))
                .collect();
            if let (false, Some(c)) = (y == z, fitting.choose(&mut rng)) {
                n = n.base_change(y, z, *c).unwrap();
            }
        }
        prop_assert!(n.is_reduced());
        let f = find_isomorphism(&m, &n, 0, DEFAULT_ATTEMPTS);
        prop_assert!(f.is_some_and(|f| is_isomorphism(&m, &n, &f)));
    }

    #[test]
    fn bimodules_preserve_d_squared(seed in any::<u64>()) {
        let m = common::random_module(seed);
        for b in [elliptic(), tau_mu(), tau_lambda()] {
            let t = box_da_d(&b, &m).unwrap();
            prop_assert!(t.is_valid(), "{:?}", t.validate());
        }
    }

    #[test]
    fn identity_is_a_unit(seed in any::<u64>()) {
        let m = common::random_module(seed);
        let t = box_da_d(&identity(), &m).unwrap();
        prop_assert_eq!(t.len(), m.len());
        prop_assert!(t.isomorphism(&m).is_some());
    }

    #[test]
    fn flip_is_an_involution(seed in any::<u64>()) {
        let c = common::random_complex(seed);
        prop_assert!(c.is_valid());
        let f = c.flip().unwrap();
        prop_assert_eq!(f.flip().unwrap(), c.clone());
        let vertical: Vec<_> = c.vertical_arrows().map(|a| (a.from.clone(), a.to.clone())).collect();
        let horizontal: Vec<_> = f.horizontal_arrows().map(|a| (a.from.clone(), a.to.clone())).collect();
        prop_assert_eq!(vertical, horizontal);
        let horizontal: Vec<_> = c.horizontal_arrows().map(|a| (a.from.clone(), a.to.clone())).collect();
        let vertical: Vec<_> = f.vertical_arrows().map(|a| (a.from.clone(), a.to.clone())).collect();
        prop_assert_eq!(horizontal, vertical);
    }

    #[test]
    fn basefree_output_shape(seed in any::<u64>(), extra in 0i64..3) {
        let c = common::random_complex(seed);
        let n = min_basefree_framing(&c) + extra;
        let d = ktd_basefree(&c, n).unwrap();
        prop_assert!(d.is_valid(), "{:?}", d.validate());
        prop_assert_eq!(d.count_idem(Idempotent::Iota0), c.len());
        prop_assert!(d.arrows().all(|a| a.label != AlgebraElement::Rho12));
        if extra == 0 {
            prop_assert_eq!(flip_ktd_direct(&d).unwrap(), ktd_basefree(&c.flip().unwrap(), n).unwrap());
        }
    }

    #[test]
    fn extra_generator_is_a_failure(seed in any::<u64>()) {
        let m = common::random_module(seed).reduced();
        let mut n = m.clone();
        n.add_generator("extra", Idempotent::Iota1).unwrap();
        prop_assert!(matches!(compare(&m, &n, 0), Verdict::Failed(_)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn elliptic_invariance_on_random_complexes(seed in any::<u64>()) {
        let c = common::random_complex(seed);
        let r = verify_elliptic_invariance(&c, Algorithm::Basefree(None), seed).unwrap();
        prop_assert!(r.verdict.is_verified(), "{}", r.verdict);
    }
}
