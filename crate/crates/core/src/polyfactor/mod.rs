//! Conversion of group-algebra elements to ordinary polynomials, squarefree
//! tests, factorization over `ℚ` and absolute factor counts.

pub mod gao;
pub mod linalg;
pub mod poly;
pub mod upoly;
pub mod zp;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub use gao::{CountOutcome, GaoConfig, Substitution};
pub use poly::{OrdinaryPoly, PolyTerm};

use crate::error::{Error, Result};
use crate::grouplaurent::GroupLaurentPoly;
use crate::rootsys::Family;
use crate::weight::Weight;

pub const DEFAULT_MAX_ABS_DEGREE: usize = 40;
pub const DEFAULT_MAX_KRON_DEGREE: usize = 200;
const SUBSET_CAP: u64 = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Basis {
    /// One variable per fundamental weight.
    FundamentalCoords,
    /// `GL(r+1)` coordinates `x_1, …, x_{r+1}` (type A only).
    AmbientX,
}

/// Converts `f` to an ordinary polynomial. The result `p` satisfies
/// `f = e^{shift} · p` in the chosen coordinates.
///
/// In the ambient basis each weight `(m_1, …, m_r)` becomes the `GL(r+1)`
/// exponent `a_i = m_i + … + m_r`, `a_{r+1} = 0`, and terms are lifted by powers
/// of `x_1⋯x_{r+1}` to a common total degree.
pub fn laurent_to_poly(f: &GroupLaurentPoly, basis: Basis) -> Result<OrdinaryPoly> {
    let rs = f.rs();
    let r = rs.rank();
    let exps: Vec<(Vec<i64>, BigInt)> = match basis {
        Basis::FundamentalCoords => f
            .terms()
            .map(|(w, c)| (w.to_vec(), c.clone()))
            .collect(),
        Basis::AmbientX => {
            if rs.family() != Family::A {
                return Err(Error::NoAmbientBasis(rs.name().to_string()));
            }
            let n = (r + 1) as i64;
            let raw: Vec<(Vec<i64>, BigInt)> = f
                .terms()
                .map(|(w, c)| {
                    let mut a = vec![0i64; r + 1];
                    for i in (0..r).rev() {
                        a[i] = a[i + 1] + w.0[i];
                    }
                    (a, c.clone())
                })
                .collect();
            let top = raw.iter().map(|(a, _)| a.iter().sum::<i64>()).max();
            match top {
                None => Vec::new(),
                Some(top) => {
                    let mut out = Vec::with_capacity(raw.len());
                    for (a, c) in raw {
                        let s: i64 = a.iter().sum();
                        if (top - s) % n != 0 {
                            return Err(Error::NotHomogeneous);
                        }
                        let t = (top - s) / n;
                        out.push((a.iter().map(|x| x + t).collect(), c));
                    }
                    out
                }
            }
        }
    };
    let nvars = match basis {
        Basis::FundamentalCoords => r,
        Basis::AmbientX => r + 1,
    };
    if exps.is_empty() {
        return Ok(OrdinaryPoly::zero(nvars));
    }
    let mins: Vec<i64> = (0..nvars)
        .map(|v| exps.iter().map(|(e, _)| e[v]).min().unwrap())
        .collect();
    let p = OrdinaryPoly::from_terms(
        nvars,
        exps.into_iter().map(|(e, c)| {
            (
                e.iter().zip(&mins).map(|(x, m)| (x - m) as u32).collect(),
                c,
            )
        }),
    );
    Ok(p.with_shift(Weight::new(mins)))
}

/// Restricts to the variables that occur.
fn compact(p: &OrdinaryPoly) -> OrdinaryPoly {
    let active = p.active_vars();
    OrdinaryPoly::from_terms(
        active.len(),
        p.terms()
            .map(|(m, c)| (active.iter().map(|&v| m[v]).collect(), c.clone())),
    )
}

/// Squarefree up to monomials and constants: `gcd(p, ∂p/∂x_i)` is a
/// monomial for every `i`.
pub fn separability_check(p: &OrdinaryPoly) -> bool {
    if p.is_zero() {
        return false;
    }
    let (q, _) = p.strip_monomial();
    let q = compact(&q);
    if q.is_constant() {
        return true;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eb);
    let n = q.nvars();
    let mut uncertain = Vec::new();
    'vars: for v in 0..n {
        let d = q.degree_in(v) as usize;
        for _ in 0..3 {
            let prime = zp::BIG_PRIMES[rng.gen_range(0..zp::BIG_PRIMES.len())];
            let point: Vec<u64> = (0..n).map(|_| rng.gen_range(1..prime)).collect();
            let coeffs = q.coeffs_in(v);
            let u: zp::Zp = zp::trim(coeffs.iter().map(|c| c.eval_mod(&point, prime)).collect());
            if u.len() == d + 1 && zp::is_squarefree(&u, prime) {
                continue 'vars;
            }
        }
        uncertain.push(v);
    }
    uncertain.into_iter().all(|v| {
        let g = poly::gcd(&q, &q.derivative(v));
        g.is_constant()
    })
}

/// Primitive gcd with positive leading coefficient.
pub fn gcd_poly(p: &OrdinaryPoly, q: &OrdinaryPoly) -> OrdinaryPoly {
    assert_eq!(p.nvars(), q.nvars(), "gcd of polynomials in different rings");
    poly::gcd(p, q).primitive_part()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbsConfig {
    pub degree_bound: usize,
    pub gao: GaoConfig,
}

impl Default for AbsConfig {
    fn default() -> Self {
        AbsConfig {
            degree_bound: DEFAULT_MAX_ABS_DEGREE,
            gao: GaoConfig::default(),
        }
    }
}

/// Number of absolutely irreducible factors, counted without multiplicity
/// and ignoring monomial (unit) factors.
pub fn absolute_factor_count(p: &OrdinaryPoly) -> Result<usize> {
    absolute_factor_count_with(p, &AbsConfig::default()).map(|o| o.count)
}

/// Reduces to the essential variables: strips monomials, dehomogenizes
/// homogeneous inputs and drops unused variables.
fn essential_form(p: &OrdinaryPoly) -> OrdinaryPoly {
    let (mut q, _) = p.strip_monomial();
    if q.is_homogeneous() && q.active_vars().len() >= 2 {
        let v = *q.active_vars().last().unwrap();
        q = q.dehomogenize(v).strip_monomial().0;
    }
    compact(&q)
}

pub fn absolute_factor_count_with(p: &OrdinaryPoly, cfg: &AbsConfig) -> Result<CountOutcome> {
    if p.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let (stripped, _) = p.strip_monomial();
    if stripped.is_constant() {
        return Err(Error::UnitInput);
    }
    let degree = stripped.total_degree();
    if degree > cfg.degree_bound {
        return Err(Error::DegreeBoundExceeded {
            degree,
            bound: cfg.degree_bound,
        });
    }
    if !separability_check(&stripped) {
        return Err(Error::NotSquarefree);
    }
    let q = essential_form(&stripped);
    match q.nvars() {
        0 => Err(Error::UnitInput),
        1 => Ok(CountOutcome {
            count: q.degree_in(0) as usize,
            trials: 1,
            certified: true,
            unknowns: 0,
            substitutions: Vec::new(),
        }),
        _ => gao::count_multivariate(&q, &cfg.gao),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFactorization {
    /// Signed integer content.
    pub content: BigInt,
    /// Primitive irreducible factors with positive leading coefficient.
    pub factors: Vec<(OrdinaryPoly, u32)>,
}

impl RationalFactorization {
    pub fn expand(&self, nvars: usize) -> OrdinaryPoly {
        let mut out = OrdinaryPoly::constant(nvars, self.content.clone());
        for (f, m) in &self.factors {
            out = out.mul(&f.pow(*m));
        }
        out
    }

    /// Non-monomial factors.
    pub fn proper_factors(&self) -> Vec<&(OrdinaryPoly, u32)> {
        self.factors.iter().filter(|(f, _)| !f.is_monomial()).collect()
    }
}

/// Complete factorization over `ℚ` (as content times primitive factors over
/// `ℤ`). Inputs whose Kronecker image exceeds `max_kron_degree` are rejected
/// with [`Error::DegreeBoundExceeded`].
pub fn factor_over_rationals(p: &OrdinaryPoly, max_kron_degree: usize) -> Result<RationalFactorization> {
    if p.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let nv = p.nvars();
    let lead_neg = p.leading().unwrap().1.is_negative();
    let mut content = p.content();
    if lead_neg {
        content = -content;
    }
    let prim = p.map_coeffs(|c| c / &content);
    let (core, mono) = prim.strip_monomial();
    let mut acc: BTreeMap<OrdinaryPoly, u32> = BTreeMap::new();
    for (v, &e) in mono.iter().enumerate() {
        if e > 0 {
            acc.insert(OrdinaryPoly::var(nv, v), e);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xfac7);
    for (f, m) in factor_core(&core, max_kron_degree, &mut rng)? {
        *acc.entry(f.normalize_sign()).or_insert(0) += m;
    }
    Ok(RationalFactorization {
        content,
        factors: acc.into_iter().collect(),
    })
}

/// Factors a primitive polynomial with no monomial factor.
fn factor_core<R: Rng>(p: &OrdinaryPoly, bound: usize, rng: &mut R) -> Result<Vec<(OrdinaryPoly, u32)>> {
    let nv = p.nvars();
    if p.is_constant() {
        return Ok(Vec::new());
    }
    let active = p.active_vars();
    if p.is_homogeneous() && active.len() >= 2 {
        let v = *active.last().unwrap();
        let deh = p.dehomogenize(v);
        let mut out = Vec::new();
        for (f, m) in factor_core(&deh, bound, rng)? {
            let d = f.total_degree();
            out.push((f.homogenize(v, d), m));
        }
        return Ok(out);
    }
    if active.len() == 1 {
        let v = active[0];
        let u = p.to_univariate(v);
        let (_, fs) = upoly::factor(&u, rng, SUBSET_CAP).ok_or(Error::DegreeBoundExceeded {
            degree: u.len() - 1,
            bound,
        })?;
        return Ok(fs
            .into_iter()
            .map(|(f, m)| {
                let mut q = OrdinaryPoly::zero(nv);
                for (i, c) in f.iter().enumerate() {
                    let mut mono = vec![0u32; nv];
                    mono[v] = i as u32;
                    q.add_term(mono, c.clone());
                }
                (q, m)
            })
            .collect());
    }
    let base = p.degrees().into_iter().max().unwrap() as u64 + 1;
    let kdeg: u64 = p
        .degrees()
        .iter()
        .enumerate()
        .map(|(i, &d)| d as u64 * base.pow(i as u32))
        .sum();
    if kdeg as usize > bound {
        return Err(Error::DegreeBoundExceeded {
            degree: kdeg as usize,
            bound,
        });
    }
    let u = p.kronecker(base);
    let (_, ufs) = upoly::factor(&u, rng, SUBSET_CAP).ok_or(Error::DegreeBoundExceeded {
        degree: kdeg as usize,
        bound,
    })?;
    let mut pool: Vec<upoly::UPoly> = Vec::new();
    for (f, m) in ufs {
        for _ in 0..m {
            pool.push(f.clone());
        }
    }
    let mut cur = p.clone();
    let mut out: Vec<(OrdinaryPoly, u32)> = Vec::new();
    let mut size = 1;
    let mut tests = 0u64;
    while !pool.is_empty() && size <= pool.len() {
        let n = pool.len();
        let mut idx: Vec<usize> = (0..size).collect();
        let mut found = false;
        loop {
            tests += 1;
            if tests > SUBSET_CAP {
                return Err(Error::DegreeBoundExceeded {
                    degree: kdeg as usize,
                    bound,
                });
            }
            let prod = idx
                .iter()
                .fold(vec![BigInt::one()], |a, &i| upoly::mul(&a, &pool[i]));
            let cand = OrdinaryPoly::from_kronecker(nv, base, &prod);
            if !cand.is_constant() {
                if let Some(q) = cur.exact_div(&cand) {
                    push_factor(&mut out, cand.primitive_part());
                    cur = q;
                    let mut k = 0;
                    pool.retain(|_| {
                        let keep = !idx.contains(&k);
                        k += 1;
                        keep
                    });
                    found = true;
                    break;
                }
            }
            if !next_combination(&mut idx, n) {
                break;
            }
        }
        if !found {
            size += 1;
        }
    }
    if !cur.is_constant() {
        return Err(Error::Internal(format!(
            "Kronecker recombination left a cofactor {cur}"
        )));
    }
    Ok(out)
}

fn push_factor(out: &mut Vec<(OrdinaryPoly, u32)>, f: OrdinaryPoly) {
    if let Some(e) = out.iter_mut().find(|(g, _)| *g == f) {
        e.1 += 1;
    } else {
        out.push((f, 1));
    }
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    AbsolutelyIrreducible,
    Reducible,
    Unit,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorRecord {
    pub factor: String,
    pub multiplicity: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorReport {
    pub input_id: String,
    pub nvars: usize,
    pub degree: usize,
    pub content: String,
    pub q_factors: Option<Vec<FactorRecord>>,
    pub absolute_count: Option<usize>,
    pub certified: bool,
    pub separable: bool,
    pub verdict: Verdict,
    pub witnesses: Vec<String>,
    pub trials: usize,
    /// `Some(false)` when the rational factorization contradicts the count.
    pub oracle_agrees: Option<bool>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorConfig {
    pub abs: AbsConfig,
    pub max_kron_degree: usize,
    pub run_rational: bool,
}

impl Default for FactorConfig {
    fn default() -> Self {
        FactorConfig {
            abs: AbsConfig::default(),
            max_kron_degree: DEFAULT_MAX_KRON_DEGREE,
            run_rational: true,
        }
    }
}

/// Runs the separability test, the absolute count and (optionally) the
/// rational factorization, and reconciles them.
pub fn analyze(p: &OrdinaryPoly, input_id: &str, cfg: &FactorConfig) -> FactorReport {
    let mut report = FactorReport {
        input_id: input_id.to_string(),
        nvars: p.nvars(),
        degree: p.total_degree(),
        content: p.content().to_string(),
        q_factors: None,
        absolute_count: None,
        certified: false,
        separable: false,
        verdict: Verdict::Skipped,
        witnesses: Vec::new(),
        trials: 0,
        oracle_agrees: None,
        notes: Vec::new(),
    };
    if p.is_zero() {
        report.notes.push("zero polynomial".into());
        return report;
    }
    let (stripped, _) = p.strip_monomial();
    if stripped.is_constant() {
        report.separable = true;
        report.verdict = Verdict::Unit;
        report.absolute_count = Some(0);
        report.certified = true;
        return report;
    }
    report.separable = separability_check(p);
    let mut rational = None;
    if cfg.run_rational {
        match factor_over_rationals(p, cfg.max_kron_degree) {
            Ok(f) => {
                report.q_factors = Some(
                    f.factors
                        .iter()
                        .map(|(g, m)| FactorRecord {
                            factor: g.to_string(),
                            multiplicity: *m,
                        })
                        .collect(),
                );
                rational = Some(f);
            }
            Err(e) => report.notes.push(format!("rational factorization skipped: {e}")),
        }
    }
    let q_count = rational.as_ref().map(|f| {
        f.proper_factors()
            .iter()
            .map(|(_, m)| *m as usize)
            .sum::<usize>()
    });
    if !report.separable {
        report.verdict = Verdict::Reducible;
        report.certified = true;
        report.notes.push("repeated factor".into());
    } else {
        match absolute_factor_count_with(p, &cfg.abs) {
            Ok(o) => {
                report.absolute_count = Some(o.count);
                report.certified = o.certified;
                report.trials = o.trials;
                report.verdict = if o.count == 1 {
                    Verdict::AbsolutelyIrreducible
                } else {
                    Verdict::Reducible
                };
            }
            Err(e) => report.notes.push(format!("absolute count skipped: {e}")),
        }
    }
    if let Some(qc) = q_count {
        if let Some(ac) = report.absolute_count {
            report.oracle_agrees = Some(ac >= qc && (ac != 1 || qc == 1));
        }
        if qc > 1 && report.verdict == Verdict::Skipped {
            report.verdict = Verdict::Reducible;
            report.certified = true;
        }
    }
    if report.verdict == Verdict::Reducible {
        if let Some(f) = &rational {
            report.witnesses = f.proper_factors().iter().map(|(g, _)| g.to_string()).collect();
        }
    }
    report
}

/// Whether `f` and `g` agree up to sign.
pub fn same_up_to_sign(f: &OrdinaryPoly, g: &OrdinaryPoly) -> bool {
    f == g || *f == g.neg()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::RootSystem;
    use crate::schurweyl::schur_weyl_sum;
    use std::sync::Arc;

    fn uni(c: &[i64]) -> OrdinaryPoly {
        OrdinaryPoly::univariate(&c.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>())
    }

    #[test]
    fn a1_conversion() {
        let rs = Arc::new(RootSystem::parse("A1").unwrap());
        let f = GroupLaurentPoly::from_terms(&rs, [(Weight::new(vec![1]), 1), (Weight::new(vec![-1]), -1)]);
        let p = laurent_to_poly(&f, Basis::FundamentalCoords).unwrap();
        assert_eq!(p, uni(&[-1, 0, 1]));
        assert_eq!(p.shift(), &Weight::new(vec![-1]));
        let c = GroupLaurentPoly::constant(&rs, 5);
        let q = laurent_to_poly(&c, Basis::FundamentalCoords).unwrap();
        assert_eq!(q.constant_value(), Some(BigInt::from(5)));
        assert!(q.shift().is_zero());
    }

    #[test]
    fn vandermonde_in_ambient_coordinates() {
        let rs = Arc::new(RootSystem::parse("A2").unwrap());
        let s = schur_weyl_sum(&rs, &Weight::new(vec![1, 1])).unwrap();
        let p = laurent_to_poly(&s, Basis::AmbientX).unwrap();
        assert!(p.shift().is_zero());
        let x: Vec<_> = (0..3).map(|i| OrdinaryPoly::var(3, i)).collect();
        let v = x[0].sub(&x[1]).mul(&x[0].sub(&x[2])).mul(&x[1].sub(&x[2]));
        assert_eq!(p, v);
        assert!(laurent_to_poly(&s, Basis::AmbientX).is_ok());
        let b2 = Arc::new(RootSystem::parse("B2").unwrap());
        let t = GroupLaurentPoly::one(&b2);
        assert!(matches!(laurent_to_poly(&t, Basis::AmbientX), Err(Error::NoAmbientBasis(_))));
    }

    #[test]
    fn separability_examples() {
        assert!(separability_check(&uni(&[-1, 0, 0, 0, 1])));
        assert!(!separability_check(&uni(&[1, -2, 1])));
        let rs = Arc::new(RootSystem::parse("A2").unwrap());
        let s = schur_weyl_sum(&rs, &Weight::new(vec![2, 2])).unwrap();
        assert!(separability_check(&laurent_to_poly(&s, Basis::FundamentalCoords).unwrap()));
    }

    #[test]
    fn absolute_count_examples() {
        let lin = OrdinaryPoly::from_terms(3, [(vec![1, 0, 0], 1), (vec![0, 1, 0], 1), (vec![0, 0, 1], 1)]);
        assert_eq!(absolute_factor_count(&lin).unwrap(), 1);
        let sq = OrdinaryPoly::from_terms(2, [(vec![2, 0], 1), (vec![0, 2], 1)]);
        assert_eq!(absolute_factor_count(&sq).unwrap(), 2);
        assert_eq!(absolute_factor_count(&uni(&[-1, 0, 0, 0, 1])).unwrap(), 4);
        assert_eq!(absolute_factor_count(&uni(&[1, -2, 1])), Err(Error::NotSquarefree));
        assert_eq!(absolute_factor_count(&uni(&[7])), Err(Error::UnitInput));
    }

    #[test]
    fn rational_factorization_examples() {
        let f = factor_over_rationals(&uni(&[-1, 0, 0, 0, 1]), 200).unwrap();
        assert_eq!(f.factors.len(), 3);
        assert_eq!(f.expand(1), uni(&[-1, 0, 0, 0, 1]));

        let rs = Arc::new(RootSystem::parse("A2").unwrap());
        let s = schur_weyl_sum(&rs, &Weight::new(vec![1, 1])).unwrap();
        let v = laurent_to_poly(&s, Basis::AmbientX).unwrap();
        let f = factor_over_rationals(&v, 200).unwrap();
        assert_eq!(f.factors.len(), 3);
        assert!(f.factors.iter().all(|(g, m)| g.total_degree() == 1 && *m == 1));
        assert_eq!(f.expand(3), v);

        // h_3 in three variables
        let mut h3 = OrdinaryPoly::zero(3);
        for a in 0..=3u32 {
            for b in 0..=3 - a {
                h3.add_term(vec![a, b, 3 - a - b], BigInt::one());
            }
        }
        let f = factor_over_rationals(&h3, 200).unwrap();
        assert_eq!(f.factors, vec![(h3.clone(), 1)]);
    }

    #[test]
    fn multivariate_repeated_factors() {
        let x = OrdinaryPoly::var(2, 0);
        let y = OrdinaryPoly::var(2, 1);
        let one = OrdinaryPoly::constant(2, 1);
        let a = x.add(&y).add(&one);
        let b = x.mul(&y).sub(&one);
        let p = a.pow(2).mul(&b).scalar_mul(&BigInt::from(-3));
        let f = factor_over_rationals(&p, 200).unwrap();
        assert_eq!(f.content, BigInt::from(-3));
        assert_eq!(f.expand(2), p);
        assert_eq!(f.factors.len(), 2);
        assert!(!separability_check(&p));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd_poly(&uni(&[-1, 0, 1]), &uni(&[-1, 0, 0, 1])), uni(&[-1, 1]));
        let f = uni(&[3, 0, -6]);
        assert_eq!(gcd_poly(&f, &f), uni(&[-1, 0, 2]));
    }

    #[test]
    fn analyze_report() {
        let sq = OrdinaryPoly::from_terms(2, [(vec![2, 0], 1), (vec![0, 2], 1)]);
        let r = analyze(&sq, "x2+y2", &FactorConfig::default());
        assert_eq!(r.verdict, Verdict::Reducible);
        assert_eq!(r.absolute_count, Some(2));
        assert_eq!(r.oracle_agrees, Some(true));
        assert!(serde_json::to_string(&r).unwrap().contains("\"reducible\""));
    }
}
