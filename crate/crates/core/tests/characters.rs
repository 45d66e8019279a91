use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Signed;
use proptest::prelude::*;

use charirr::harness::dominant_box;
use charirr::rootsys::RootSystem;
use charirr::schurweyl::{
    character, dimension, leading_piece_divides, schur_weyl_sum, tensor_decompose,
    verify_leading_cofactor_terms, weyl_denominator_factors,
};
use charirr::weight::Weight;

fn rs(name: &str) -> Arc<RootSystem> {
    Arc::new(RootSystem::parse(name).unwrap())
}

/// Closed-form dimensions for rank-two systems.
fn closed_form_dim(name: &str, a: i64, b: i64) -> i64 {
    let (a, b) = (a + 1, b + 1);
    match name {
        "A2" => a * b * (a + b) / 2,
        // short root first: (a, b) = (m_short + 1, m_long + 1)
        "B2" => a * b * (a + b) * (a + 2 * b) / 6,
        "G2" => a * b * (a + b) * (a + 2 * b) * (a + 3 * b) * (2 * a + 3 * b) / 120,
        _ => unreachable!(),
    }
}

#[test]
fn rank_two_dimensions_match_closed_forms() {
    for name in ["A2", "B2", "G2"] {
        let rs = rs(name);
        for w in dominant_box(2, 0, 4) {
            let (a, b) = (w.coords()[0], w.coords()[1]);
            let chi = character(&rs, &w).unwrap();
            let want = BigInt::from(closed_form_dim(name, a, b));
            assert_eq!(chi.sum_of_coefficients(), want, "{name} {w}");
            assert_eq!(dimension(&rs, &w).unwrap(), want);
        }
    }
}

#[test]
fn characters_are_nonnegative_invariant_and_self_decompose() {
    for name in ["A1", "A2", "A3", "B2", "C3", "G2"] {
        let rs = rs(name);
        for w in dominant_box(rs.rank(), 0, 2) {
            let chi = character(&rs, &w).unwrap();
            assert!(chi.terms().all(|(_, c)| c.is_positive()), "{name} {w}");
            assert!(chi.is_invariant(), "{name} {w}");
            assert_eq!(tensor_decompose(&rs, std::slice::from_ref(&w)).unwrap(), vec![(w.clone(), 1)]);
        }
    }
}

#[test]
fn tensor_dimensions_multiply() {
    for name in ["A2", "B2", "G2"] {
        let rs = rs(name);
        let ws = dominant_box(2, 0, 2);
        for a in &ws {
            for b in &ws {
                let parts = tensor_decompose(&rs, &[a.clone(), b.clone()]).unwrap();
                let sum: BigInt = parts
                    .iter()
                    .map(|(w, m)| dimension(&rs, w).unwrap() * BigInt::from(*m))
                    .sum();
                assert_eq!(sum, dimension(&rs, a).unwrap() * dimension(&rs, b).unwrap());
            }
        }
    }
}

#[test]
fn a2_octet_squared() {
    let rs = rs("A2");
    let mut parts = tensor_decompose(&rs, &[Weight::new(vec![1, 1]), Weight::new(vec![1, 1])]).unwrap();
    parts.sort();
    let want: Vec<(Weight, u64)> = vec![
        (Weight::new(vec![0, 0]), 1),
        (Weight::new(vec![0, 3]), 1),
        (Weight::new(vec![1, 1]), 2),
        (Weight::new(vec![2, 2]), 1),
        (Weight::new(vec![3, 0]), 1),
    ];
    assert_eq!(parts, want);
}

#[test]
fn leading_piece_divides_lower_pieces_for_denominators() {
    for name in ["A2", "A3", "B2", "B3", "C3", "G2"] {
        let rs = rs(name);
        let duals: &[bool] = if rs.is_simply_laced() { &[false] } else { &[false, true] };
        for &dual in duals {
            for d in 1..=3 {
                let (unit, atoms) = weyl_denominator_factors(&rs, d, dual).unwrap();
                let mut whole = unit;
                for a in &atoms {
                    whole = whole.mul(&a.poly).unwrap();
                }
                for alpha in rs.corners() {
                    assert!(leading_piece_divides(&whole, alpha, None).unwrap(), "{name} d={d}");
                    for a in &atoms {
                        assert!(leading_piece_divides(&a.poly, alpha, None).unwrap());
                    }
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn scaling_commutes_with_alternation(which in 0usize..4, coords in prop::collection::vec(1i64..=4, 3), d in 1i64..=3) {
        let rs = rs(["A2", "B2", "G2", "A3"][which]);
        let lambda = Weight::new(coords.into_iter().take(rs.rank()));
        prop_assert_eq!(schur_weyl_sum(&rs, &lambda).unwrap().scale(d), schur_weyl_sum(&rs, &lambda.scale(d)).unwrap());
    }

    #[test]
    fn cofactor_window_is_empty(which in 0usize..5, coords in prop::collection::vec(1i64..=5, 4)) {
        let rs = rs(["A2", "B2", "G2", "A3", "C3"][which]);
        let lambda = Weight::new(coords.into_iter().take(rs.rank()));
        for alpha in rs.corners() {
            let chk = verify_leading_cofactor_terms(&rs, &lambda, alpha).unwrap();
            prop_assert!(chk.ok(), "{:?}", chk);
        }
    }

    #[test]
    fn alternating_sums_divide_by_scaled_rho(which in 0usize..4, coords in prop::collection::vec(1i64..=3, 3), f in 1i64..=2) {
        let rs = rs(["A2", "B2", "G2", "A3"][which]);
        let lambda = Weight::new(coords.into_iter().take(rs.rank())).scale(f);
        let s = schur_weyl_sum(&rs, &lambda).unwrap();
        let q = s.exact_divide(&schur_weyl_sum(&rs, &rs.rho().scale(f)).unwrap()).unwrap();
        prop_assert!(q.is_some_and(|q| q.is_invariant()));
    }
}
