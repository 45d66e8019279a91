use std::sync::Arc;

use num_bigint::BigInt;
use proptest::prelude::*;

use charirr::grouplaurent::{GroupLaurentPoly, Symmetry};
use charirr::rootsys::RootSystem;
use charirr::weight::Weight;

fn rs(name: &str) -> Arc<RootSystem> {
    Arc::new(RootSystem::parse(name).unwrap())
}

fn poly(rs: &Arc<RootSystem>, terms: &[(Vec<i64>, i64)]) -> GroupLaurentPoly {
    GroupLaurentPoly::from_terms(
        rs,
        terms.iter().map(|(w, c)| (Weight::new(w.iter().copied().take(rs.rank())), *c)),
    )
}

fn terms(max_len: usize) -> impl Strategy<Value = Vec<(Vec<i64>, i64)>> {
    prop::collection::vec(
        (prop::collection::vec(-3i64..=3, 3), (-5i64..=5).prop_filter("nonzero", |c| *c != 0)),
        1..=max_len,
    )
}

fn symmetrize(f: &GroupLaurentPoly) -> GroupLaurentPoly {
    let mut acc = GroupLaurentPoly::zero(f.rs());
    for w in f.rs().weyl() {
        acc = acc.add(&f.weyl_act(w)).unwrap();
    }
    acc
}

const SYSTEMS: [&str; 4] = ["A2", "B2", "G2", "A3"];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn division_undoes_multiplication(which in 0usize..2, f in terms(12), g in terms(12)) {
        let rs = rs(["A2", "B2"][which]);
        let (f, g) = (poly(&rs, &f), poly(&rs, &g));
        prop_assume!(!f.is_zero() && !g.is_zero());
        let fg = f.mul(&g).unwrap();
        prop_assert_eq!(fg.exact_divide(&g).unwrap(), Some(f.clone()));
        prop_assert_eq!(fg.exact_divide(&f).unwrap(), Some(g));
    }

    #[test]
    fn ring_laws(which in 0usize..4, f in terms(5), g in terms(5), h in terms(5)) {
        let rs = rs(SYSTEMS[which]);
        let (f, g, h) = (poly(&rs, &f), poly(&rs, &g), poly(&rs, &h));
        prop_assert_eq!(f.mul(&g).unwrap(), g.mul(&f).unwrap());
        prop_assert_eq!(f.mul(&g).unwrap().mul(&h).unwrap(), f.mul(&g.mul(&h).unwrap()).unwrap());
        prop_assert_eq!(
            f.mul(&g.add(&h).unwrap()).unwrap(),
            f.mul(&g).unwrap().add(&f.mul(&h).unwrap()).unwrap()
        );
        prop_assert!(f.sub(&f).unwrap().is_zero());
    }

    #[test]
    fn weyl_action_is_multiplicative(which in 0usize..4, f in terms(6), g in terms(6)) {
        let rs = rs(SYSTEMS[which]);
        let (f, g) = (poly(&rs, &f), poly(&rs, &g));
        let fg = f.mul(&g).unwrap();
        for s in rs.generators() {
            prop_assert_eq!(fg.weyl_act(s), f.weyl_act(s).mul(&g.weyl_act(s)).unwrap());
        }
    }

    #[test]
    fn scaling_composes(which in 0usize..4, f in terms(6), d in 1i64..4, e in 1i64..4) {
        let rs = rs(SYSTEMS[which]);
        let f = poly(&rs, &f);
        prop_assert_eq!(f.scale(d).scale(e), f.scale(d * e));
    }

    #[test]
    fn scaling_is_a_ring_map(which in 0usize..4, f in terms(5), g in terms(5), d in 1i64..4) {
        let rs = rs(SYSTEMS[which]);
        let (f, g) = (poly(&rs, &f), poly(&rs, &g));
        prop_assert_eq!(f.mul(&g).unwrap().scale(d), f.scale(d).mul(&g.scale(d)).unwrap());
    }

    #[test]
    fn cofactor_reassembly(which in 0usize..4, f in terms(10)) {
        let rs = rs(SYSTEMS[which]);
        let f = poly(&rs, &f);
        for alpha in rs.corners() {
            let cof = f.cofactor_expand(alpha).unwrap();
            prop_assert_eq!(cof.reassemble().unwrap(), f.clone());
            let total: usize = cof.pieces.values().map(|p| p.len()).sum();
            prop_assert_eq!(total, f.len());
        }
    }

    #[test]
    fn invariant_elements_have_invariant_pieces(which in 0usize..3, f in terms(3)) {
        let rs = rs(SYSTEMS[which]);
        let f = symmetrize(&poly(&rs, &f));
        prop_assume!(!f.is_zero());
        prop_assert_eq!(f.symmetry_check(), Symmetry::Invariant);
        for alpha in rs.corners() {
            for piece in f.cofactor_expand(alpha).unwrap().pieces.values() {
                prop_assert_eq!(piece.symmetry_check(), Symmetry::Invariant);
            }
        }
    }

    #[test]
    fn canonical_key_ignores_units(which in 0usize..4, f in terms(6), shift in prop::collection::vec(-4i64..=4, 3), neg: bool) {
        let rs = rs(SYSTEMS[which]);
        let f = poly(&rs, &f);
        let mut g = f.shift(&Weight::new(shift.into_iter().take(rs.rank())));
        if neg {
            g = g.neg();
        }
        prop_assert_eq!(f.canonical_key(), g.canonical_key());
    }
}

#[test]
fn division_by_non_divisor_is_absent() {
    let rs = rs("A2");
    let f = poly(&rs, &[(vec![2, 0], 1), (vec![0, 0], 1)]);
    let g = poly(&rs, &[(vec![1, 0], 1), (vec![0, 0], 1)]);
    assert_eq!(f.exact_divide(&g).unwrap(), None);
    let two = GroupLaurentPoly::constant(&rs, BigInt::from(2));
    assert_eq!(g.exact_divide(&two).unwrap(), None);
    assert!(g.exact_divide(&GroupLaurentPoly::zero(&rs)).is_err());
}
