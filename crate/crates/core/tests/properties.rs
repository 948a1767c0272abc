use std::sync::Arc;

use proptest::prelude::*;

use lrc_core::bounds::{cm_bound_griesmer, griesmer, singleton_locality_bound};
use lrc_core::code::{macwilliams_transform, LinearCode};
use lrc_core::field::{Elem, FieldContext};
use lrc_core::geometry::{Geometry, PointMultiset};
use lrc_core::locality::{dual_minimum_distance, locality, locality_by_subsets};

const ORDERS: [u32; 7] = [2, 3, 4, 5, 7, 8, 9];

fn field_elems() -> impl Strategy<Value = (u32, Elem, Elem, Elem)> {
    prop::sample::select(&ORDERS[..]).prop_flat_map(|q| {
        let e = 0..q as Elem;
        (Just(q), e.clone(), e.clone(), e)
    })
}

/// Random generator rows over a small field; dependent rows are dropped by
/// the constructor.
fn random_code(max_k: usize, max_n: usize) -> impl Strategy<Value = LinearCode> {
    (prop::sample::select(&[2u32, 3, 4][..]), 1..=max_k, 2..=max_n).prop_flat_map(|(q, k, n)| {
        prop::collection::vec(prop::collection::vec(0..q as Elem, n), k).prop_filter_map("zero code", move |rows| {
            let c = LinearCode::from_rows(FieldContext::new(q).unwrap(), rows).unwrap();
            (c.k() > 0).then_some(c)
        })
    })
}

fn random_multiset() -> impl Strategy<Value = PointMultiset> {
    (prop::sample::select(&[(2u32, 3usize), (2, 4), (3, 3), (4, 2), (5, 2)][..])).prop_flat_map(|(q, k)| {
        let g = Geometry::shared(q, k).unwrap();
        let p = g.num_points();
        prop::collection::vec(0u32..3, p).prop_map(move |mut mults| {
            for i in 0..k {
                let u = g.unit_point(i);
                mults[u] = mults[u].max(1);
            }
            PointMultiset::from_mults(Arc::clone(&g), mults).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn field_axioms((q, a, b, c) in field_elems()) {
        let f = FieldContext::new(q).unwrap();
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), 0);
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        prop_assert_eq!(f.mul(a, 1), a);
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a)), 1);
            prop_assert_eq!(f.pow(a, q as u64 - 1), 1);
        }
        // Frobenius is additive
        let p = f.characteristic() as u64;
        prop_assert_eq!(f.pow(f.add(a, b), p), f.add(f.pow(a, p), f.pow(b, p)));
    }

    #[test]
    fn macwilliams_matches_enumerated_dual(code in random_code(4, 8)) {
        let wd = code.weight_distribution().unwrap();
        let dual = code.dual();
        let direct = dual.weight_distribution().unwrap();
        let transformed = macwilliams_transform(&wd, code.n(), code.k(), code.q()).unwrap();
        prop_assert_eq!(transformed, direct);
    }

    #[test]
    fn dual_distance_by_columns_matches_enumeration(code in random_code(4, 8)) {
        let dual = code.dual();
        let expected = if dual.k() == 0 { None } else { dual.weight_distribution().unwrap().minimum_distance() };
        prop_assert_eq!(dual_minimum_distance(&code), expected);
    }

    #[test]
    fn locality_certificate_replays(code in random_code(4, 9), seed in any::<u64>()) {
        let rep = locality(&code);
        rep.certificate.check(&code).unwrap();
        if !rep.degenerate {
            prop_assert_eq!(rep.r, locality_by_subsets(&code));
        }
        let f = code.field();
        let mut s = seed;
        for _ in 0..8 {
            let msg: Vec<Elem> = (0..code.k())
                .map(|_| {
                    s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    ((s >> 33) % code.q() as u64) as Elem
                })
                .collect();
            let word = code.encode(&msg);
            for rec in &rep.certificate.recovery {
                prop_assert_eq!(rec.recover(f, &word), word[rec.coordinate]);
            }
        }
    }

    #[test]
    fn distance_from_hyperplanes_matches_enumeration(m in random_multiset()) {
        let code = LinearCode::from_multiset(&m).unwrap();
        let wd = code.weight_distribution().unwrap();
        prop_assert_eq!(wd.minimum_distance().unwrap() as u64, m.minimum_distance());
        prop_assert_eq!(code.n() as u64, m.cardinality());
        prop_assert_eq!(code.k(), m.geometry().dim());
    }

    #[test]
    fn codes_respect_the_bounds(code in random_code(4, 9)) {
        let n = code.n() as u64;
        let d = code.minimum_distance().unwrap() as u64;
        prop_assert!(griesmer(code.k(), d, code.q()) <= n);
        if let Some(r) = locality(&code).r {
            prop_assert!(cm_bound_griesmer(n, d, r, code.q()) >= code.k());
            if r <= code.k() {
                prop_assert!(d as i64 <= singleton_locality_bound(n, code.k(), r).unwrap());
            }
        }
    }
}
