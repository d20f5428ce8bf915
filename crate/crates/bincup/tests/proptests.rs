//! Property-based tests for the exact arithmetic kernels.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use proptest::prelude::*;

use bincup::intpoly::{polya_to_zeta, zeta_binomial, MultiIndex, ZetaPoly};
use bincup::ring::Ring;

fn small_index() -> impl Strategy<Value = MultiIndex> {
    (0u32..=3, 0u32..=3).prop_map(|(i, j)| MultiIndex::from_pairs(&[("x", i), ("y", j)]))
}

fn small_poly() -> impl Strategy<Value = ZetaPoly> {
    proptest::collection::vec((small_index(), -9i64..=9), 1..4).prop_map(|terms| {
        let mut p = ZetaPoly::zero(Ring::Z);
        for (idx, c) in terms {
            p = p.add(&ZetaPoly::basis(Ring::Z, idx, BigInt::from(c)));
        }
        p
    })
}

fn point() -> impl Strategy<Value = BTreeMap<String, BigInt>> {
    (-6i64..=6, -6i64..=6).prop_map(|(x, y)| {
        let mut m = BTreeMap::new();
        m.insert("x".to_string(), BigInt::from(x));
        m.insert("y".to_string(), BigInt::from(y));
        m
    })
}

proptest! {
    #[test]
    fn mul_commutative(f in small_poly(), g in small_poly()) {
        prop_assert_eq!(f.mul(&g).unwrap(), g.mul(&f).unwrap());
    }

    #[test]
    fn mul_associative(f in small_poly(), g in small_poly(), h in small_poly()) {
        let lhs = f.mul(&g).unwrap().mul(&h).unwrap();
        let rhs = f.mul(&g.mul(&h).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn mul_distributes_over_add(f in small_poly(), g in small_poly(), h in small_poly()) {
        let lhs = f.mul(&g.add(&h)).unwrap();
        let rhs = f.mul(&g).unwrap().add(&f.mul(&h).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn evaluation_is_a_ring_map(f in small_poly(), g in small_poly(), a in point()) {
        let sum = f.add(&g);
        prop_assert_eq!(
            sum.evaluate(&a).unwrap(),
            f.evaluate(&a).unwrap() + g.evaluate(&a).unwrap()
        );
        let prod = f.mul(&g).unwrap();
        prop_assert_eq!(
            prod.evaluate(&a).unwrap(),
            f.evaluate(&a).unwrap() * g.evaluate(&a).unwrap()
        );
    }

    #[test]
    fn pascal_rule(a in -50i64..=50, n in 1u64..=8) {
        let lhs = zeta_binomial(&BigInt::from(a), n);
        let rhs = zeta_binomial(&BigInt::from(a - 1), n - 1)
            + zeta_binomial(&BigInt::from(a - 1), n);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn rational_expansion_round_trips(f in small_poly()) {
        prop_assert_eq!(polya_to_zeta(&f.to_rational()).unwrap(), f);
    }

    #[test]
    fn reduction_is_additive(f in small_poly(), g in small_poly()) {
        for p in [3u64, 5] {
            let lhs = f.add(&g).reduce_mod_p(p);
            let rhs = f.reduce_mod_p(p).add(&g.reduce_mod_p(p));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
