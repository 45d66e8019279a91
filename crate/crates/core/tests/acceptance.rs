//! Acceptance suite. Prints one line per criterion and exits non-zero if any
//! criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::Instant;

use num_integer::Integer;
use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use charirr::cyclotomic::{arith_obstruction_report, unit_one_minus_zeta, Conclusion};
use charirr::harness::{
    self, regular_weights, Check, Outcome, SweepConfig, SweepSummary,
};
use charirr::polyfactor::{
    absolute_factor_count, analyze, factor_over_rationals, laurent_to_poly, separability_check,
    Basis, FactorConfig, OrdinaryPoly, Verdict,
};
use charirr::rootsys::RootSystem;
use charirr::schurweyl::{
    big_d_and_c, character, denominator_product, schur_weyl_sum, tensor_decompose,
    verify_leading_cofactor_terms,
};
use charirr::weight::Weight;

/// Root systems of the denominator and separability checks.
const SUITE: [&str; 9] = ["A1", "A2", "A3", "B2", "B3", "C3", "D4", "G2", "F4"];
const SCALES: [i64; 3] = [1, 2, 3];
/// Base seed for every randomized step.
const SEED: u64 = 20240611;
/// Random weights per root system for the cofactor comparison.
const COFACTOR_SAMPLES: usize = 50;
/// Coordinate range of those random weights.
const COFACTOR_COORD_MAX: i64 = 5;

type Verdict_ = std::result::Result<String, String>;
type Criterion = (u32, &'static str, fn() -> Verdict_);

fn rs(name: &str) -> Arc<RootSystem> {
    Arc::new(RootSystem::parse(name).expect("root system"))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn clean(s: &SweepSummary, what: &str) -> std::result::Result<(), String> {
    ensure(s.failures.is_empty(), || {
        format!("{what}: {} failures, first {:?}", s.failures.len(), s.failures.first())
    })?;
    ensure(s.unresolved.is_empty(), || {
        format!("{what}: {} unresolved", s.unresolved.len())
    })
}

fn sweep(rs_name: &str, bound: i64, checks: &[Check], arity: usize) -> SweepSummary {
    let mut cfg = SweepConfig::new(rs_name, bound, checks);
    cfg.seed = SEED;
    cfg.tensor_arity = arity;
    cfg.jobs = 2;
    harness::run_sweep(&cfg).expect("sweep runs")
}

fn denominator_identity() -> Verdict_ {
    let mut n = 0;
    for name in SUITE {
        let rs = rs(name);
        let duals: &[bool] = if rs.is_simply_laced() { &[false] } else { &[false, true] };
        for &dual in duals {
            for d in SCALES {
                let base = if dual { rs.rho_tilde() } else { rs.rho() };
                let lhs = denominator_product(&rs, d, dual).map_err(|e| e.to_string())?;
                let rhs = schur_weyl_sum(&rs, &base.scale(d)).map_err(|e| e.to_string())?;
                ensure(lhs == rhs, || format!("{name} d={d} dual={dual}: product differs from sum"))?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} identities"))
}

fn divisibility() -> Verdict_ {
    let mut n = 0;
    for name in ["A2", "A3", "B2", "G2"] {
        let s = sweep(name, 4, &[Check::Divisibility], 1);
        clean(&s, name)?;
        let expected = 4usize.pow(rs(name).rank() as u32);
        ensure(s.count(Check::Divisibility, Outcome::Pass) == expected, || {
            format!("{name}: {} of {expected} weights passed", s.count(Check::Divisibility, Outcome::Pass))
        })?;
        n += expected;
    }
    // independent reconstruction on a few weights
    for (name, l) in [("A2", vec![4, 2]), ("B2", vec![2, 4]), ("G2", vec![3, 3])] {
        let rs = rs(name);
        let lambda = Weight::new(l);
        let (d, _) = rs.gcd_invariants(&lambda).map_err(|e| e.to_string())?;
        let s = schur_weyl_sum(&rs, &lambda).map_err(|e| e.to_string())?;
        let sd = schur_weyl_sum(&rs, &rs.rho().scale(d)).map_err(|e| e.to_string())?;
        let q = s.exact_divide(&sd).map_err(|e| e.to_string())?.ok_or("no quotient")?;
        ensure(q.mul(&sd).map_err(|e| e.to_string())? == s, || format!("{name}: q·S(dρ) ≠ S(λ)"))?;
        ensure(q.is_invariant(), || format!("{name}: quotient not invariant"))?;
    }
    Ok(format!("{n} weights"))
}

fn irreducibility() -> Verdict_ {
    let mut passed = 0;
    let mut skipped = 0;
    let mut flagged = Vec::new();
    for (name, bound) in [("A2", 6), ("A3", 3), ("B2", 4), ("G2", 3)] {
        let mut cfg = SweepConfig::new(name, bound, &[Check::Irreducibility]);
        cfg.seed = SEED;
        cfg.jobs = 4;
        let s = harness::sweep_irreducibility(&cfg).map_err(|e| e.to_string())?;
        clean(&s, name)?;
        ensure(s.count(Check::Irreducibility, Outcome::Skipped) == 0, || {
            format!("{name}: {} weights exceeded the caps", s.count(Check::Irreducibility, Outcome::Skipped))
        })?;
        passed += s.count(Check::Irreducibility, Outcome::Pass);
        skipped += s.count(Check::Irreducibility, Outcome::SkippedByTheorem);
        flagged.extend(s.nmfg_flagged.iter().map(|w| format!("{name}{w:?}")));
    }
    Ok(format!(
        "{passed} absolutely irreducible, {skipped} multiples of rho/rho_tilde, nmfg flagged: [{}]",
        flagged.join(" ")
    ))
}

fn spot_values() -> Verdict_ {
    let a2 = rs("A2");
    let c = big_d_and_c(&a2, &Weight::new(vec![2, 1])).map_err(|e| e.to_string())?;
    let p = laurent_to_poly(&c.c, Basis::AmbientX).map_err(|e| e.to_string())?;
    let expected = OrdinaryPoly::from_terms(3, [(vec![1, 0, 0], 1), (vec![0, 1, 0], 1), (vec![0, 0, 1], 1)]);
    ensure(p == expected, || format!("C(A2,(2,1)) = {p}"))?;

    for name in SUITE {
        let rs = rs(name);
        for d in SCALES {
            for mu in [rs.rho().scale(d), rs.rho_tilde().scale(d)] {
                let c = big_d_and_c(&rs, &mu).map_err(|e| e.to_string())?;
                ensure(c.is_trivial(), || format!("{name}: C({mu}) ≠ 1"))?;
            }
        }
    }

    // χ_a of GL(2) in ambient coordinates is Π_{ζ^{a+1}=1, ζ≠1} (x1 − ζ x2)
    let a1 = rs("A1");
    for a in 1..=12 {
        let chi = character(&a1, &Weight::new(vec![a])).map_err(|e| e.to_string())?;
        let p = laurent_to_poly(&chi, Basis::AmbientX).map_err(|e| e.to_string())?;
        let k = absolute_factor_count(&p).map_err(|e| e.to_string())?;
        ensure(k == a as usize, || format!("χ_{a}: {k} absolute factors"))?;
    }
    Ok("C(A2,(2,1)); C = 1 on 54 scaled Weyl vectors; 12 GL(2) characters".into())
}

fn uniqueness() -> Verdict_ {
    let mut n = 0;
    for (name, bound) in [("A2", 6), ("B2", 4)] {
        let s = sweep(name, bound, &[Check::Uniqueness], 1);
        clean(&s, name)?;
        n += s.count(Check::Uniqueness, Outcome::Pass);
    }
    Ok(format!("{n} weights, no collisions"))
}

/// Clebsch-Gordan: V_a ⊗ V_b = ⊕ V_{a+b-2k}, 0 ≤ k ≤ min(a,b).
fn clebsch_gordan(a: i64, b: i64) -> Vec<(Weight, u64)> {
    let mut v: Vec<(Weight, u64)> = (0..=a.min(b)).map(|k| (Weight::new(vec![a + b - 2 * k]), 1)).collect();
    v.sort();
    v
}

fn tensor() -> Verdict_ {
    let mut n = 0;
    for (name, bound) in [("A1", 6), ("A2", 2)] {
        let s = sweep(name, bound, &[Check::Tensor], 3);
        clean(&s, name)?;
        n += s.count(Check::Tensor, Outcome::Pass);
    }
    let a1 = rs("A1");
    for a in 1..=6 {
        for b in a..=6 {
            let mut got = tensor_decompose(&a1, &[Weight::new(vec![a]), Weight::new(vec![b])])
                .map_err(|e| e.to_string())?;
            got.sort();
            ensure(got == clebsch_gordan(a, b), || format!("V{a}⊗V{b}: {got:?}"))?;
        }
    }
    Ok(format!("{n} products, no collisions"))
}

fn is_prime_power(n: u64) -> bool {
    let p = (2..=n).find(|p| n.is_multiple_of(*p)).unwrap();
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
    }
    m == 1
}

fn cyclotomic() -> Verdict_ {
    for e in 2..=100u64 {
        let u = unit_one_minus_zeta(e).map_err(|x| x.to_string())?;
        ensure(u == !is_prime_power(e), || format!("e={e}: unit={u}"))?;
    }
    let mut triples = 0;
    for d in 1..=20u64 {
        // e = 2, d = 1 leaves a single root and no split into non-units
        for e in (2 * d..=20).step_by(d as usize).filter(|&e| e - d >= 2) {
            for f in (d..=20).step_by(d as usize) {
                let r = arith_obstruction_report(e, f, d, 400).map_err(|x| x.to_string())?;
                let want = if e.gcd(&f) == d {
                    Conclusion::ContradictionConfirmed
                } else {
                    Conclusion::NoObstruction
                };
                ensure(r.conclusion == want, || format!("(e,f,d)=({e},{f},{d}): {:?}", r.conclusion))?;
                triples += 1;
            }
        }
    }
    Ok(format!("99 units, {triples} triples"))
}

fn structural_lemmas() -> Verdict_ {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut compared = 0;
    for name in SUITE.iter().filter(|n| **n != "A1") {
        let rs = rs(name);
        for _ in 0..COFACTOR_SAMPLES {
            let lambda = Weight::new((0..rs.rank()).map(|_| rng.gen_range(1..=COFACTOR_COORD_MAX)));
            for alpha in rs.corners() {
                let chk = verify_leading_cofactor_terms(&rs, &lambda, alpha).map_err(|e| e.to_string())?;
                ensure(chk.ok(), || format!("{name} {lambda} corner {alpha}: {chk:?}"))?;
                compared += 1;
            }
        }
    }

    let mut tests = 0;
    for name in ["A2", "A3", "B2", "B3", "C3", "G2"] {
        let s = sweep(name, 1, &[Check::Eisenstein], 1);
        clean(&s, name)?;
        tests += s.count(Check::Eisenstein, Outcome::Pass);
    }

    // corner pairings: short corner α, long corner β
    let half = Rational64::new(1, 2);
    for name in ["B2", "B3", "C3"] {
        let rs = rs(name);
        let c = rs.corners();
        let (a, b) = (c[0], c[c.len() - 1]);
        let wab = rs.pairing_w(a, b).unwrap();
        let wba = rs.pairing_w(b, a).unwrap();
        ensure(wab > 0.into() && wba > 0.into() && wab * wba == half, || {
            format!("{name}: w = {wab}, {wba}")
        })?;
    }
    for (name, short, long, m) in [("F4", 3, 0, 2), ("G2", 0, 1, 3)] {
        let rs = rs(name);
        let wab = rs.pairing_w(short, long).unwrap();
        let wba = rs.pairing_w(long, short).unwrap();
        ensure(wab == Rational64::from_integer(m) && wba == Rational64::from_integer(1), || {
            format!("{name}: w = {wab}, {wba}")
        })?;
    }

    for name in SUITE {
        let rs = rs(name);
        let listed = matches!(&name[..1], "B" | "C" | "F" | "G") || name == "A1";
        let expect = listed || name == "D4";
        ensure(rs.has_minus_one() == expect, || format!("{name}: has_minus_one = {}", rs.has_minus_one()))?;
        if matches!(name, "B2" | "F4" | "G2") {
            for alpha in rs.corners() {
                let (sub, _) = rs.subsystem_at_corner(alpha).unwrap();
                ensure(sub.has_minus_one(), || format!("{name} corner {alpha}: -1 ∉ W_α"))?;
            }
        }
        if matches!(name, "B3" | "C3") {
            let ok = rs.corners().into_iter().any(|alpha| {
                let (sub, _) = rs.subsystem_at_corner(alpha).unwrap();
                // B2 and C2 coincide
                let same = sub.family() == rs.family() || sub.rank() == 2;
                same && matches!(sub.family().letter(), 'B' | 'C') && sub.has_minus_one()
            });
            ensure(ok, || format!("{name}: no corner with a same-type subsystem"))?;
        }
    }
    Ok(format!("{compared} cofactor comparisons, {tests} denominators"))
}

fn separability() -> Verdict_ {
    let mut n = 0;
    for name in SUITE {
        let rs = rs(name);
        let mut bases = vec![rs.rho()];
        if !rs.is_simply_laced() {
            bases.push(rs.rho_tilde());
        }
        for base in &bases {
            for d in SCALES {
                let s = schur_weyl_sum(&rs, &base.scale(d)).map_err(|e| e.to_string())?;
                let p = laurent_to_poly(&s, Basis::FundamentalCoords).map_err(|e| e.to_string())?;
                ensure(separability_check(&p), || format!("{name} S({})", base.scale(d)))?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} denominators"))
}

fn oracle_agreement() -> Verdict_ {
    let a2 = rs("A2");
    let mut cfg = FactorConfig::default();
    cfg.abs.gao.seed = SEED;
    let mut agreed = 0;
    for lambda in regular_weights(2, 4) {
        if a2.is_rho_multiple(&lambda) {
            continue;
        }
        let c = big_d_and_c(&a2, &lambda).map_err(|e| e.to_string())?;
        let p = laurent_to_poly(&c.c, Basis::AmbientX).map_err(|e| e.to_string())?;
        let rep = analyze(&p, &lambda.to_string(), &cfg);
        ensure(rep.oracle_agrees == Some(true), || format!("C{lambda}: {rep:?}"))?;
        let q = rep.q_factors.as_ref().map(|f| f.len());
        if rep.absolute_count == Some(1) {
            ensure(q == Some(1), || format!("C{lambda}: count 1 but {q:?} rational factors"))?;
        }
        ensure(rep.verdict == Verdict::AbsolutelyIrreducible, || format!("C{lambda}: {:?}", rep.verdict))?;
        agreed += 1;
    }
    // reducible inputs: the absolute count bounds the rational factor count
    for (name, d) in [("A1", 3), ("A2", 1), ("A2", 2), ("B2", 1)] {
        let rs = rs(name);
        let s = schur_weyl_sum(&rs, &rs.rho().scale(d)).map_err(|e| e.to_string())?;
        let p = laurent_to_poly(&s, Basis::FundamentalCoords).map_err(|e| e.to_string())?;
        let fact = factor_over_rationals(&p, cfg.max_kron_degree).map_err(|e| e.to_string())?;
        let q = fact.proper_factors().len();
        let rep = analyze(&p, name, &cfg);
        ensure(rep.oracle_agrees != Some(false), || format!("{name} d={d}: {rep:?}"))?;
        if let Some(k) = rep.absolute_count {
            ensure(k >= q && (k == 1) == (q == 1), || format!("{name} d={d}: count {k}, {q} factors"))?;
        }
        let prod = fact.expand(p.nvars());
        ensure(prod == p, || format!("{name} d={d}: factorization does not expand back"))?;
        agreed += 1;
    }
    Ok(format!("{agreed} inputs"))
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        (1, "denominator identity", denominator_identity),
        (2, "divisibility", divisibility),
        (3, "irreducibility", irreducibility),
        (4, "spot values", spot_values),
        (5, "uniqueness", uniqueness),
        (6, "tensor unique factorization", tensor),
        (7, "cyclotomic suite", cyclotomic),
        (8, "structural lemmas", structural_lemmas),
        (9, "separability", separability),
        (10, "oracle agreement", oracle_agreement),
    ];
    let started = Instant::now();
    let results: Vec<(u32, &str, Verdict_, f64)> = criteria
        .par_iter()
        .map(|&(i, name, f)| {
            let t = Instant::now();
            let r = catch_unwind(AssertUnwindSafe(f))
                .unwrap_or_else(|e| Err(format!("panicked: {:?}", e.downcast_ref::<String>())));
            (i, name, r, t.elapsed().as_secs_f64())
        })
        .collect();
    let mut failed = 0;
    for (i, name, r, secs) in &results {
        match r {
            Ok(msg) => println!("criterion {i:>2} PASS {name} ({msg}) [{secs:.1}s]"),
            Err(msg) => {
                failed += 1;
                println!("criterion {i:>2} FAIL {name}: {msg} [{secs:.1}s]");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed in {:.1}s",
        results.len() - failed,
        started.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
