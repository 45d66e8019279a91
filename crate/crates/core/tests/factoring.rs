use std::sync::Arc;

use num_integer::Integer;
use proptest::prelude::*;

use charirr::polyfactor::{
    absolute_factor_count, absolute_factor_count_with, factor_over_rationals, laurent_to_poly,
    separability_check, AbsConfig, Basis, OrdinaryPoly,
};
use charirr::rootsys::RootSystem;
use charirr::schurweyl::schur_weyl_sum;

const KRON: usize = 200;

fn rs(name: &str) -> Arc<RootSystem> {
    Arc::new(RootSystem::parse(name).unwrap())
}

fn small_poly() -> impl Strategy<Value = OrdinaryPoly> {
    prop::collection::vec((prop::collection::vec(0u32..=2, 2), -3i64..=3), 1..=4)
        .prop_map(|ts| OrdinaryPoly::from_terms(2, ts))
        .prop_filter("non-constant", |p| !p.is_zero() && !p.is_constant())
}

/// `S(dρ)` is a monomial times `Π_{β>0} (e^{dβ} - 1)`. With `g` the gcd of
/// the coordinates of `β`, the binomial `e^{dβ} - 1` splits over `ℂ` into
/// `d·g` irreducible binomials, and distinct positive roots share none.
fn predicted_count(rs: &RootSystem, d: i64) -> usize {
    rs.positive_roots()
        .iter()
        .map(|b| (d * b.coords().iter().fold(0i64, |g, &c| g.gcd(&c))) as usize)
        .sum()
}

#[test]
fn denominator_counts_match_root_binomials() {
    for name in ["A1", "A2", "B2", "G2"] {
        let rs = rs(name);
        for d in 1..=3 {
            let s = schur_weyl_sum(&rs, &rs.rho().scale(d)).unwrap();
            let p = laurent_to_poly(&s, Basis::FundamentalCoords).unwrap();
            assert_eq!(absolute_factor_count(&p).unwrap(), predicted_count(&rs, d), "{name} d={d}");
        }
    }
}

#[test]
fn ambient_denominators_are_vandermonde_powers() {
    // S(dρ) for GL(n) is Π_{i<j} (x_i^d - x_j^d): d·n(n-1)/2 linear factors
    for (name, n) in [("A1", 2usize), ("A2", 3)] {
        let rs = rs(name);
        for d in 1..=3 {
            let s = schur_weyl_sum(&rs, &rs.rho().scale(d)).unwrap();
            let p = laurent_to_poly(&s, Basis::AmbientX).unwrap();
            assert_eq!(absolute_factor_count(&p).unwrap(), d as usize * n * (n - 1) / 2);
            let f = factor_over_rationals(&p, KRON).unwrap();
            let tau = (1..=d).filter(|k| d % k == 0).count();
            assert_eq!(f.proper_factors().len(), tau * n * (n - 1) / 2, "{name} d={d}");
        }
    }
}

#[test]
fn specializations_agree_across_seeds() {
    let rs = rs("A2");
    let s = schur_weyl_sum(&rs, &charirr::weight::Weight::new(vec![3, 2])).unwrap();
    let p = laurent_to_poly(&s, Basis::AmbientX).unwrap();
    let counts: Vec<usize> = (0..5)
        .map(|seed| {
            let mut cfg = AbsConfig::default();
            cfg.gao.seed = seed;
            absolute_factor_count_with(&p, &cfg).unwrap().count
        })
        .collect();
    assert!(counts.windows(2).all(|w| w[0] == w[1]), "{counts:?}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn factorization_expands_to_input(a in small_poly(), b in small_poly(), c in small_poly()) {
        let p = a.mul(&b).mul(&c);
        let f = factor_over_rationals(&p, KRON).unwrap();
        prop_assert_eq!(f.expand(p.nvars()), p.clone());
    }

    #[test]
    fn absolute_count_bounds_rational_count(a in small_poly(), b in small_poly()) {
        let p = a.mul(&b);
        prop_assume!(separability_check(&p));
        let f = factor_over_rationals(&p, KRON).unwrap();
        let q = f.proper_factors().iter().filter(|(g, _)| !g.is_monomial()).count();
        prop_assume!(q > 0);
        if let Ok(k) = absolute_factor_count(&p) {
            prop_assert!(k >= q, "count {} < {} rational factors of {}", k, q, p);
        }
    }
}
