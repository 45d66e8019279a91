//! Arithmetic in `ℤ[ζ_n]` and the obstruction check for cyclotomic factorizations.
//!
//! Two different polynomials are called "cyclotomic" here:
//! * [`classical_cyclotomic`] is the irreducible `n`-th cyclotomic polynomial,
//!   used as the modulus of `ℤ[ζ_n]`;
//! * [`phi_geometric`] is `Φ_e(x) = (x^e - 1)/(x - 1)`, the notation in which
//!   [`phi_quotient`] is defined.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on `lcm(e, f)` for [`arith_obstruction_report`].
pub const DEFAULT_CONDUCTOR_CAP: u64 = 400;

fn trim<T: Zero>(v: &mut Vec<T>) {
    while v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
}

/// Exact quotient of integer polynomials (low degree first); `None` on remainder.
pub fn poly_div_exact(num: &[i64], den: &[i64]) -> Option<Vec<i64>> {
    let mut r: Vec<i64> = num.to_vec();
    trim(&mut r);
    let mut d: Vec<i64> = den.to_vec();
    trim(&mut d);
    let dl = *d.last()?;
    if r.len() < d.len() {
        return if r.is_empty() { Some(vec![]) } else { None };
    }
    let mut q = vec![0i64; r.len() - d.len() + 1];
    for i in (0..q.len()).rev() {
        let c = r[i + d.len() - 1];
        if c % dl != 0 {
            return None;
        }
        let c = c / dl;
        q[i] = c;
        for (j, &dj) in d.iter().enumerate() {
            r[i + j] -= c * dj;
        }
    }
    if r.iter().any(|&c| c != 0) {
        return None;
    }
    trim(&mut q);
    Some(q)
}

pub fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

pub fn poly_eval(p: &[i64], x: i64) -> i64 {
    p.iter().rev().fold(0i64, |acc, &c| acc * x + c)
}

fn divisors(n: u64) -> Vec<u64> {
    let mut v: Vec<u64> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    v.sort_unstable();
    v
}

/// The classical `n`-th cyclotomic polynomial, low degree first.
pub fn classical_cyclotomic(n: u64) -> Vec<i64> {
    assert!(n >= 1);
    static CACHE: OnceLock<Mutex<HashMap<u64, Vec<i64>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in divisors(n) {
        if d < n {
            p = poly_div_exact(&p, &classical_cyclotomic(d)).expect("Φ_d divides x^n - 1");
        }
    }
    cache.lock().unwrap().insert(n, p.clone());
    p
}

/// Euler's totient.
pub fn totient(n: u64) -> u64 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u64
}

/// `Φ_e(x) = 1 + x + … + x^{e-1}`.
pub fn phi_geometric(e: u64) -> Vec<i64> {
    vec![1; e as usize]
}

/// `Φ_{e:f_1,…,f_k} = Φ_e / Π Φ_{f_i}` with `Φ_e = (x^e-1)/(x-1)`.
pub fn phi_quotient(e: u64, fs: &[u64]) -> Result<Vec<i64>> {
    let bad = || Error::BadCyclotomicDivisors(fs.to_vec(), e);
    if e == 0 || fs.iter().any(|&f| f == 0 || !e.is_multiple_of(f)) {
        return Err(bad());
    }
    for (i, &a) in fs.iter().enumerate() {
        for &b in &fs[i + 1..] {
            if a.gcd(&b) != 1 {
                return Err(bad());
            }
        }
    }
    let mut p = phi_geometric(e);
    for &f in fs {
        p = poly_div_exact(&p, &phi_geometric(f))
            .ok_or_else(|| Error::Internal(format!("Φ_{f} does not divide Φ_{e}")))?;
    }
    Ok(p)
}

/// Is `n` a prime power `p^k`, `k ≥ 1`? Returns the prime.
pub fn prime_power_base(n: u64) -> Option<u64> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|p| n.is_multiple_of(*p)).unwrap();
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
    }
    (m == 1).then_some(p)
}

/// An element of `ℤ[ζ_n] = ℤ[x]/(Φ_n)`, stored as its reduced residue.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycloElem {
    n: u64,
    poly: Vec<BigInt>,
}

impl CycloElem {
    /// Reduces an integer polynomial modulo the classical `Φ_n`.
    pub fn from_poly(n: u64, p: &[i64]) -> Self {
        Self::from_big(n, p.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn from_big(n: u64, mut r: Vec<BigInt>) -> Self {
        let m: Vec<BigInt> = classical_cyclotomic(n).into_iter().map(BigInt::from).collect();
        let dm = m.len() - 1;
        trim(&mut r);
        while r.len() > dm {
            let top = r.pop().unwrap();
            let shift = r.len() - dm;
            // Φ_n is monic
            for (j, c) in m[..dm].iter().enumerate() {
                r[shift + j] -= &top * c;
            }
            trim(&mut r);
        }
        CycloElem { n, poly: r }
    }

    pub fn zero(n: u64) -> Self {
        CycloElem { n, poly: vec![] }
    }

    pub fn one(n: u64) -> Self {
        Self::from_poly(n, &[1])
    }

    /// `ζ_n^k`.
    pub fn zeta_pow(n: u64, k: u64) -> Self {
        let k = (k % n) as usize;
        let mut p = vec![0i64; k + 1];
        p[k] = 1;
        Self::from_poly(n, &p)
    }

    /// `1 - ζ_n^k`.
    pub fn one_minus_zeta_pow(n: u64, k: u64) -> Self {
        Self::one(n).sub(&Self::zeta_pow(n, k))
    }

    pub fn conductor(&self) -> u64 {
        self.n
    }

    pub fn residue(&self) -> &[BigInt] {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n);
        let len = self.poly.len().max(o.poly.len());
        let mut r = vec![BigInt::zero(); len];
        for (i, c) in self.poly.iter().enumerate() {
            r[i] += c;
        }
        for (i, c) in o.poly.iter().enumerate() {
            r[i] += c;
        }
        trim(&mut r);
        CycloElem { n: self.n, poly: r }
    }

    pub fn neg(&self) -> Self {
        CycloElem {
            n: self.n,
            poly: self.poly.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n);
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.n);
        }
        let mut r = vec![BigInt::zero(); self.poly.len() + o.poly.len() - 1];
        for (i, a) in self.poly.iter().enumerate() {
            for (j, b) in o.poly.iter().enumerate() {
                r[i + j] += a * b;
            }
        }
        Self::from_big(self.n, r)
    }

    /// Evaluates an integer polynomial at `ζ_n^k`.
    pub fn eval_poly_at_zeta(n: u64, p: &[i64], k: u64) -> Self {
        let z = Self::zeta_pow(n, k);
        p.iter().rev().fold(Self::zero(n), |acc, &c| {
            acc.mul(&z).add(&Self::from_poly(n, &[c]))
        })
    }

    /// Field norm from `ℚ(ζ_n)` to `ℚ`.
    pub fn norm(&self) -> BigInt {
        let m: Vec<BigInt> = classical_cyclotomic(self.n).into_iter().map(BigInt::from).collect();
        resultant(&m, &self.poly)
    }

    pub fn is_unit(&self) -> bool {
        self.norm().abs().is_one()
    }
}

/// `N_{ℚ(ζ_n)/ℚ}(a)`, computed as `Res(Φ_n, a)`.
pub fn cyclo_norm(n: u64, a: &CycloElem) -> Result<BigInt> {
    if a.n != n {
        return Err(Error::Usage(format!(
            "element lives in conductor {} not {n}",
            a.n
        )));
    }
    Ok(a.norm())
}

/// Resultant of two integer polynomials by the Euclidean algorithm over `ℚ`.
pub fn resultant(f: &[BigInt], g: &[BigInt]) -> BigInt {
    let to_q = |p: &[BigInt]| -> Vec<BigRational> {
        let mut v: Vec<BigRational> = p.iter().map(|c| BigRational::from_integer(c.clone())).collect();
        trim(&mut v);
        v
    };
    let mut a = to_q(f);
    let mut b = to_q(g);
    if a.is_empty() || b.is_empty() {
        return BigInt::zero();
    }
    let mut acc = BigRational::one();
    loop {
        let m = a.len() - 1;
        let n = b.len() - 1;
        if n == 0 {
            acc *= num_traits::pow(b[0].clone(), m);
            return acc.to_integer();
        }
        if m == 0 {
            acc *= num_traits::pow(a[0].clone(), n);
            return acc.to_integer();
        }
        // res(a, b) = (-1)^{mn} res(b, a); res(b, a) = lc(b)^{m - deg r} res(b, r)
        let r = poly_rem_q(&a, &b);
        if r.is_empty() {
            return BigInt::zero();
        }
        if (m * n) % 2 == 1 {
            acc = -acc;
        }
        acc *= num_traits::pow(b[n].clone(), m - (r.len() - 1));
        a = b;
        b = r;
    }
}

fn poly_rem_q(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    let lb = b.last().unwrap().clone();
    while r.len() >= b.len() {
        let c = r.last().unwrap() / &lb;
        let shift = r.len() - b.len();
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &c * bj;
        }
        r.pop();
        trim(&mut r);
    }
    r
}

/// `1 - ζ_e` is a unit in `ℤ[ζ_e]`.
pub fn unit_one_minus_zeta(e: u64) -> Result<bool> {
    if e < 2 {
        return Err(Error::Usage(format!("unit_one_minus_zeta needs e ≥ 2, got {e}")));
    }
    Ok(CycloElem::one_minus_zeta_pow(e, 1).is_unit())
}

/// `ζ_order^exponent` with `gcd(exponent, order) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootLabel {
    pub order: u64,
    pub exponent: u64,
}

impl RootLabel {
    /// Label of `ζ_e^j`.
    pub fn of(e: u64, j: u64) -> Self {
        let j = j % e;
        let g = j.gcd(&e);
        RootLabel {
            order: e / g,
            exponent: j / g,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Conclusion {
    ContradictionConfirmed,
    NoObstruction,
}

/// A crossing pair `γ ∈ Z_U`, `δ ∈ Z_V` with `γ^{-1}δ` of `p`-power order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionWitness {
    pub gamma: RootLabel,
    pub delta: RootLabel,
    pub prime: u64,
    /// `N(1 - γ^{-1}δ)`, a non-unit.
    pub lhs_factor_norm: String,
    /// `N(Φ_{f:d}(δ))`, a unit.
    pub rhs_norm: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub e: u64,
    pub f: u64,
    pub d: u64,
    pub gcd_ef: u64,
    /// `|μ(e,d)|`
    pub roots: usize,
    pub bipartitions_checked: u64,
    /// `Φ_{f:d}(δ)` is a unit for every `δ ∈ μ(e,d)`.
    pub all_rhs_units: bool,
    /// Orders `o` of `δ ∈ μ(e,d)` with `Φ_{f:d}(δ)` a unit.
    pub unit_rhs_orders: Vec<u64>,
    /// Witness for the first bipartition, when every bipartition is obstructed.
    pub witness: Option<ObstructionWitness>,
    /// An unobstructed bipartition `(Z_U, Z_V)`, when one exists.
    pub free_bipartition: Option<(Vec<RootLabel>, Vec<RootLabel>)>,
    pub conclusion: Conclusion,
}

/// Exhaustively checks the cyclotomic obstruction for `UV = Φ_{e:d}`,
/// `UX + VY = Φ_{f:d}` over every bipartition `Z_U ⊔ Z_V = μ(e,d)`.
///
/// A bipartition is obstructed when some `δ` on one side has `Φ_{f:d}(δ)` a
/// unit while some `γ` on the other side has `γ^{-1}δ` of prime-power order:
/// then the left side evaluated at `δ` has the non-unit factor `1 - γ^{-1}δ`.
pub fn arith_obstruction_report(e: u64, f: u64, d: u64, cap: u64) -> Result<ObstructionReport> {
    let bad = |reason: &str| Error::BadObstructionParams {
        e,
        f,
        d,
        reason: reason.to_string(),
    };
    if e == 0 || f == 0 || d == 0 {
        return Err(bad("parameters must be positive"));
    }
    if !e.is_multiple_of(d) || !f.is_multiple_of(d) {
        return Err(bad("d must divide e and f"));
    }
    if e == d {
        return Err(bad("e must differ from d"));
    }
    if e - d < 2 {
        return Err(bad("Φ_{e:d} is linear and has no factorization into non-units"));
    }
    let conductor = e.lcm(&f);
    if conductor > cap {
        return Err(Error::ConductorCap(conductor, cap));
    }
    if e - d > 63 {
        return Err(bad("too many roots to enumerate"));
    }

    let rhs = phi_quotient(f, &[d])?;
    let elems: Vec<u64> = (0..e).filter(|&j| !d.is_multiple_of(RootLabel::of(e, j).order)).collect();
    let n = elems.len();
    debug_assert_eq!(n as u64, e - d);

    // unit-ness of Φ_{f:d}(δ) depends only on ord(δ) (Galois conjugates share norms)
    let mut rhs_norm_by_order: HashMap<u64, BigInt> = HashMap::new();
    for &j in &elems {
        let o = RootLabel::of(e, j).order;
        rhs_norm_by_order
            .entry(o)
            .or_insert_with(|| CycloElem::eval_poly_at_zeta(o, &rhs, 1).norm());
    }
    let unit_rhs = |j: u64| rhs_norm_by_order[&RootLabel::of(e, j).order].abs().is_one();
    let mut unit_rhs_orders: Vec<u64> = rhs_norm_by_order
        .iter()
        .filter(|(_, v)| v.abs().is_one())
        .map(|(&o, _)| o)
        .collect();
    unit_rhs_orders.sort_unstable();
    let all_rhs_units = elems.iter().all(|&j| unit_rhs(j));

    // adj[a]: elements b with ζ^{b-a} of prime-power order
    let adj: Vec<u64> = (0..n)
        .map(|a| {
            (0..n)
                .filter(|&b| {
                    b != a
                        && prime_power_base(RootLabel::of(e, elems[b] + e - elems[a]).order).is_some()
                })
                .fold(0u64, |m, b| m | (1 << b))
        })
        .collect();
    let unit_mask: u64 = (0..n).filter(|&a| unit_rhs(elems[a])).fold(0, |m, a| m | (1 << a));
    let full: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };

    let obstructed = |u_mask: u64| -> Option<(usize, usize)> {
        let v_mask = full & !u_mask;
        let mut cand = unit_mask;
        while cand != 0 {
            let delta = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            let other = if u_mask & (1 << delta) != 0 { v_mask } else { u_mask };
            let hit = adj[delta] & other;
            if hit != 0 {
                return Some((hit.trailing_zeros() as usize, delta));
            }
        }
        None
    };

    // element 0 stays in Z_U; the remaining n-1 bits choose Z_U ∖ {0}
    let mut checked = 0u64;
    let mut witness = None;
    let mut free = None;
    if n >= 2 {
        let rest = n - 1;
        for bits in 0..((1u64 << rest) - 1) {
            let u_mask = 1 | (bits << 1);
            checked += 1;
            match obstructed(u_mask) {
                Some((g, dl)) => {
                    if witness.is_none() {
                        witness = Some((g, dl));
                    }
                }
                None => {
                    free = Some(u_mask);
                    break;
                }
            }
        }
    }

    let label = |a: usize| RootLabel::of(e, elems[a]);
    let conclusion = if free.is_none() {
        Conclusion::ContradictionConfirmed
    } else {
        Conclusion::NoObstruction
    };
    let witness = match (conclusion, witness) {
        (Conclusion::ContradictionConfirmed, Some((g, dl))) => {
            let ratio = RootLabel::of(e, elems[dl] + e - elems[g]);
            let prime = prime_power_base(ratio.order).expect("adjacent pairs have prime-power ratio");
            let lhs = CycloElem::one_minus_zeta_pow(ratio.order, ratio.exponent).norm();
            let o = label(dl).order;
            Some(ObstructionWitness {
                gamma: label(g),
                delta: label(dl),
                prime,
                lhs_factor_norm: lhs.to_string(),
                rhs_norm: rhs_norm_by_order[&o].to_string(),
            })
        }
        _ => None,
    };
    let free_bipartition = free.map(|m| {
        let (mut zu, mut zv) = (vec![], vec![]);
        for a in 0..n {
            if m & (1 << a) != 0 {
                zu.push(label(a));
            } else {
                zv.push(label(a));
            }
        }
        (zu, zv)
    });

    Ok(ObstructionReport {
        e,
        f,
        d,
        gcd_ef: e.gcd(&f),
        roots: n,
        bipartitions_checked: checked,
        all_rhs_units,
        unit_rhs_orders,
        witness,
        free_bipartition,
        conclusion,
    })
}
