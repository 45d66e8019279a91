use num_integer::Integer;
use proptest::prelude::*;

use charirr::cyclotomic::{
    arith_obstruction_report, cyclo_norm, phi_geometric, phi_quotient, poly_mul, unit_one_minus_zeta,
    Conclusion, CycloElem,
};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn norm_is_multiplicative(
        n in 2u64..=24,
        a in prop::collection::vec(-3i64..=3, 1..6),
        b in prop::collection::vec(-3i64..=3, 1..6),
    ) {
        let (x, y) = (CycloElem::from_poly(n, &a), CycloElem::from_poly(n, &b));
        let lhs = cyclo_norm(n, &x.mul(&y)).unwrap();
        prop_assert_eq!(lhs, cyclo_norm(n, &x).unwrap() * cyclo_norm(n, &y).unwrap());
    }
}

#[test]
fn quotients_multiply_back() {
    for e in 2..=36u64 {
        let divs: Vec<u64> = (2..e).filter(|f| e % f == 0).collect();
        let mut sets: Vec<Vec<u64>> = vec![vec![]];
        sets.extend(divs.iter().map(|&f| vec![f]));
        for (i, &a) in divs.iter().enumerate() {
            for &b in &divs[i + 1..] {
                if a.gcd(&b) == 1 {
                    sets.push(vec![a, b]);
                }
            }
        }
        for fs in sets {
            let mut p = phi_quotient(e, &fs).unwrap();
            for &f in &fs {
                p = poly_mul(&p, &phi_geometric(f));
            }
            assert_eq!(p, phi_geometric(e), "e={e} fs={fs:?}");
        }
    }
    assert!(phi_quotient(12, &[4, 6]).is_err());
    assert!(phi_quotient(12, &[5]).is_err());
}

#[test]
fn one_minus_zeta_units() {
    let prime_powers = [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32];
    for e in 2..=32 {
        assert_eq!(unit_one_minus_zeta(e).unwrap(), !prime_powers.contains(&e), "e={e}");
    }
}

#[test]
fn obstruction_witnesses_are_consistent() {
    let r = arith_obstruction_report(4, 6, 2, 400).unwrap();
    assert_eq!(r.conclusion, Conclusion::ContradictionConfirmed);
    let w = r.witness.expect("witness");
    assert_ne!(w.lhs_factor_norm.trim_start_matches('-'), "1");
    assert_eq!(w.rhs_norm.trim_start_matches('-'), "1");

    let r = arith_obstruction_report(4, 8, 2, 400).unwrap();
    assert_eq!(r.conclusion, Conclusion::NoObstruction);
    let (u, v) = r.free_bipartition.expect("bipartition");
    assert!(!u.is_empty() && !v.is_empty());

    assert!(arith_obstruction_report(6, 6, 6, 400).is_err());
    assert!(arith_obstruction_report(2, 3, 1, 400).is_err());
    assert!(arith_obstruction_report(19, 20, 1, 360).is_err());
}
