//! Sparse multivariate polynomials over `ℤ` with non-negative exponents.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::weight::Weight;

pub type Monomial = Vec<u32>;

/// An element of `ℤ[x_1, …, x_n]` together with the Laurent monomial it was
/// shifted by: the Laurent element it came from is `x^shift · self`.
#[derive(Clone)]
pub struct OrdinaryPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, BigInt>,
    shift: Weight,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyTerm {
    pub exps: Vec<u32>,
    pub coeff: String,
}

// The shift is bookkeeping; equality and ordering see only the polynomial.
impl PartialEq for OrdinaryPoly {
    fn eq(&self, o: &Self) -> bool {
        self.nvars == o.nvars && self.terms == o.terms
    }
}

impl Eq for OrdinaryPoly {}

impl PartialOrd for OrdinaryPoly {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for OrdinaryPoly {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        (self.nvars, &self.terms).cmp(&(o.nvars, &o.terms))
    }
}

impl std::hash::Hash for OrdinaryPoly {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        self.nvars.hash(h);
        self.terms.hash(h);
    }
}

impl fmt::Debug for OrdinaryPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for OrdinaryPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let a = c.abs();
            let is_const = m.iter().all(|&e| e == 0);
            if !a.is_one() || is_const {
                write!(f, "{a}")?;
                if !is_const {
                    write!(f, "*")?;
                }
            }
            let mut first = true;
            for (v, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                write!(f, "x{}", v + 1)?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl OrdinaryPoly {
    pub fn zero(nvars: usize) -> Self {
        OrdinaryPoly {
            nvars,
            terms: BTreeMap::new(),
            shift: Weight::zero(nvars),
        }
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c.into());
        p
    }

    /// The variable `x_{i+1}`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = vec![0; nvars];
        m[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(m, BigInt::one());
        p
    }

    pub fn from_terms<I, C>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c.into());
        }
        p
    }

    /// Univariate polynomial from coefficients, low degree first.
    pub fn univariate(coeffs: &[BigInt]) -> Self {
        Self::from_terms(
            1,
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (vec![i as u32], c.clone())),
        )
    }

    pub fn with_shift(mut self, shift: Weight) -> Self {
        self.shift = shift;
        self
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        debug_assert_eq!(m.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn shift(&self) -> &Weight {
        &self.shift
    }

    /// Terms in decreasing lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter().rev()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.iter().all(|&e| e == 0))
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn coeff(&self, m: &[u32]) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn constant_value(&self) -> Option<BigInt> {
        if self.is_constant() {
            Some(self.coeff(&vec![0; self.nvars]))
        } else {
            None
        }
    }

    /// Leading term in lex order (variable 1 most significant).
    pub fn leading(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> usize {
        self.terms
            .keys()
            .map(|m| m.iter().map(|&e| e as usize).sum::<usize>())
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|m| m[v]).max().unwrap_or(0)
    }

    pub fn degrees(&self) -> Vec<u32> {
        (0..self.nvars).map(|v| self.degree_in(v)).collect()
    }

    pub fn min_degrees(&self) -> Vec<u32> {
        (0..self.nvars)
            .map(|v| self.terms.keys().map(|m| m[v]).min().unwrap_or(0))
            .collect()
    }

    /// Variables of positive degree.
    pub fn active_vars(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&v| self.degree_in(v) > 0).collect()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self
            .terms
            .keys()
            .map(|m| m.iter().map(|&e| e as usize).sum::<usize>());
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.leading().unwrap().1.is_negative() {
            c = -c;
        }
        self.map_coeffs(|x| x / &c)
    }

    pub fn map_coeffs(&self, f: impl Fn(&BigInt) -> BigInt) -> Self {
        let mut out = Self::zero(self.nvars);
        out.shift = self.shift.clone();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| -c)
    }

    pub fn scalar_mul(&self, k: &BigInt) -> Self {
        self.map_coeffs(|c| c * k)
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.nvars, o.nvars);
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.nvars, o.nvars);
        let mut acc: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let m: Monomial = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                *acc.entry(m).or_default() += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        OrdinaryPoly {
            nvars: self.nvars,
            terms: acc,
            shift: Weight::zero(self.nvars),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::constant(self.nvars, 1);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn mul_monomial(&self, m: &[u32], c: &BigInt) -> Self {
        let mut out = Self::zero(self.nvars);
        for (mm, cc) in &self.terms {
            out.terms
                .insert(mm.iter().zip(m).map(|(a, b)| a + b).collect(), cc * c);
        }
        out.terms.retain(|_, c| !c.is_zero());
        out
    }

    pub fn derivative(&self, v: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            if m[v] == 0 {
                continue;
            }
            let mut mm = m.clone();
            mm[v] -= 1;
            out.add_term(mm, c * BigInt::from(m[v]));
        }
        out
    }

    /// Divides out the largest monomial dividing every term. Returns the
    /// removed exponent.
    pub fn strip_monomial(&self) -> (Self, Vec<u32>) {
        let mins = self.min_degrees();
        let mut out = Self::zero(self.nvars);
        out.shift = self.shift.clone();
        for (m, c) in &self.terms {
            out.terms
                .insert(m.iter().zip(&mins).map(|(a, b)| a - b).collect(), c.clone());
        }
        (out, mins)
    }

    /// Exact division over `ℤ` by lex leading-term cancellation.
    pub fn exact_div(&self, g: &Self) -> Option<Self> {
        assert_eq!(self.nvars, g.nvars);
        let (gm, gc) = g.leading()?;
        let (gm, gc) = (gm.clone(), gc.clone());
        let mut r = self.clone();
        r.shift = Weight::zero(self.nvars);
        let mut q = Self::zero(self.nvars);
        while let Some((rm, rc)) = r.leading() {
            if rm.iter().zip(&gm).any(|(a, b)| a < b) {
                return None;
            }
            let (qc, rem) = rc.div_rem(&gc);
            if !rem.is_zero() {
                return None;
            }
            let qm: Monomial = rm.iter().zip(&gm).map(|(a, b)| a - b).collect();
            for (m, c) in &g.terms {
                let mm: Monomial = m.iter().zip(&qm).map(|(a, b)| a + b).collect();
                r.add_term(mm, -(c * &qc));
            }
            q.add_term(qm, qc);
        }
        Some(q)
    }

    /// Evaluates modulo `p` (`p < 2^32`).
    pub fn eval_mod(&self, point: &[u64], p: u64) -> u64 {
        let pb = BigInt::from(p);
        let mut acc = 0u64;
        for (m, c) in &self.terms {
            let cm = c.mod_floor(&pb);
            let mut t: u64 = cm.try_into().unwrap();
            for (v, &e) in m.iter().enumerate() {
                if e > 0 {
                    t = t * pow_mod(point[v], e as u64, p) % p;
                }
            }
            acc = (acc + t) % p;
        }
        acc
    }

    /// Coefficients in variable `v`, each with `x_v` removed.
    pub fn coeffs_in(&self, v: usize) -> Vec<Self> {
        let d = self.degree_in(v) as usize;
        let mut out = vec![Self::zero(self.nvars); d + 1];
        for (m, c) in &self.terms {
            let mut mm = m.clone();
            let k = mm[v] as usize;
            mm[v] = 0;
            out[k].add_term(mm, c.clone());
        }
        out
    }

    /// `Σ c_k x_v^k`.
    pub fn from_coeffs_in(nvars: usize, v: usize, coeffs: &[Self]) -> Self {
        let mut out = Self::zero(nvars);
        for (k, c) in coeffs.iter().enumerate() {
            for (m, cc) in &c.terms {
                let mut mm = m.clone();
                mm[v] += k as u32;
                out.add_term(mm, cc.clone());
            }
        }
        out
    }

    /// Sets `x_v = 1`.
    pub fn dehomogenize(&self, v: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut mm = m.clone();
            mm[v] = 0;
            out.add_term(mm, c.clone());
        }
        out
    }

    /// Inverse of [`Self::dehomogenize`] to total degree `deg`.
    pub fn homogenize(&self, v: usize, deg: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let s: usize = m.iter().map(|&e| e as usize).sum();
            let mut mm = m.clone();
            mm[v] += (deg - s) as u32;
            out.add_term(mm, c.clone());
        }
        out
    }

    /// Kronecker substitution `x_i ↦ t^{B^i}`.
    pub fn kronecker(&self, base: u64) -> Vec<BigInt> {
        let mut out: Vec<BigInt> = Vec::new();
        for (m, c) in &self.terms {
            let mut idx = 0u64;
            let mut pw = 1u64;
            for &e in m {
                idx += e as u64 * pw;
                pw *= base;
            }
            let idx = idx as usize;
            if out.len() <= idx {
                out.resize(idx + 1, BigInt::zero());
            }
            out[idx] += c;
        }
        out
    }

    pub fn from_kronecker(nvars: usize, base: u64, coeffs: &[BigInt]) -> Self {
        let mut out = Self::zero(nvars);
        for (i, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut idx = i as u64;
            let m: Monomial = (0..nvars)
                .map(|_| {
                    let d = idx % base;
                    idx /= base;
                    d as u32
                })
                .collect();
            out.add_term(m, c.clone());
        }
        out
    }

    /// Univariate coefficient list when only variable `v` occurs.
    pub fn to_univariate(&self, v: usize) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.degree_in(v) as usize + 1];
        for (m, c) in &self.terms {
            out[m[v] as usize] += c;
        }
        out
    }

    pub fn term_records(&self) -> Vec<PolyTerm> {
        self.terms()
            .map(|(m, c)| PolyTerm {
                exps: m.clone(),
                coeff: c.to_string(),
            })
            .collect()
    }
}

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Content of `f` with respect to `x_v`: the gcd of its coefficients in `x_v`.
fn content_in(f: &OrdinaryPoly, v: usize) -> OrdinaryPoly {
    let mut g = OrdinaryPoly::zero(f.nvars);
    for c in f.coeffs_in(v) {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, &c);
        if g.is_constant() {
            // the integer content still matters
            let ic = f.content();
            return OrdinaryPoly::constant(f.nvars, ic);
        }
    }
    g
}

/// Pseudo-remainder of `a` by `b` in variable `v`.
fn prem(a: &OrdinaryPoly, b: &OrdinaryPoly, v: usize) -> OrdinaryPoly {
    let n = b.degree_in(v);
    let bc = b.coeffs_in(v);
    let lb = bc[n as usize].clone();
    let mut r = a.clone();
    r.shift = Weight::zero(a.nvars);
    while !r.is_zero() && r.degree_in(v) >= n {
        let m = r.degree_in(v);
        let lr = r.coeffs_in(v)[m as usize].clone();
        let mut xm = vec![0u32; a.nvars];
        xm[v] = m - n;
        let t = lr.mul(b).mul_monomial(&xm, &BigInt::one());
        r = lb.mul(&r).sub(&t);
    }
    r
}

/// Greatest common divisor over `ℤ`, primitive with positive leading coefficient.
pub fn gcd(a: &OrdinaryPoly, b: &OrdinaryPoly) -> OrdinaryPoly {
    let nv = a.nvars;
    if a.is_zero() {
        return b.primitive_part_keep_content();
    }
    if b.is_zero() {
        return a.primitive_part_keep_content();
    }
    let va = a.active_vars();
    let vb = b.active_vars();
    let Some(&v) = va.iter().chain(vb.iter()).max() else {
        return OrdinaryPoly::constant(nv, a.content().gcd(&b.content()));
    };
    if a.degree_in(v) == 0 {
        return gcd(a, &content_in(b, v));
    }
    if b.degree_in(v) == 0 {
        return gcd(&content_in(a, v), b);
    }
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let gc = gcd(&ca, &cb);
    let mut x = a.exact_div(&ca).expect("content divides");
    let mut y = b.exact_div(&cb).expect("content divides");
    if x.degree_in(v) < y.degree_in(v) {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_zero() && y.degree_in(v) > 0 {
        let r = prem(&x, &y, v);
        x = y;
        y = if r.is_zero() {
            r
        } else {
            let c = content_in(&r, v);
            r.exact_div(&c).expect("content divides")
        };
    }
    let g = if y.is_zero() { x } else { OrdinaryPoly::constant(nv, 1) };
    let g = g.mul(&gc);
    g.normalize_sign()
}

impl OrdinaryPoly {
    fn primitive_part_keep_content(&self) -> Self {
        self.normalize_sign()
    }

    /// Multiplies by `-1` if the leading coefficient is negative.
    pub fn normalize_sign(&self) -> Self {
        match self.leading() {
            Some((_, c)) if c.is_negative() => self.neg(),
            _ => self.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uni(c: &[i64]) -> OrdinaryPoly {
        OrdinaryPoly::univariate(&c.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>())
    }

    #[test]
    fn arithmetic_and_division() {
        let x = OrdinaryPoly::var(2, 0);
        let y = OrdinaryPoly::var(2, 1);
        let f = x.add(&y).mul(&x.sub(&y));
        assert_eq!(f, x.mul(&x).sub(&y.mul(&y)));
        assert_eq!(f.exact_div(&x.add(&y)).unwrap(), x.sub(&y));
        assert!(f.exact_div(&x.add(&OrdinaryPoly::constant(2, 1))).is_none());
        assert_eq!(format!("{f}"), "x1^2 - x2^2");
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(&uni(&[-1, 0, 1]), &uni(&[-1, 0, 0, 1])), uni(&[-1, 1]));
        let f = uni(&[2, 0, 4]);
        assert_eq!(gcd(&f, &f), f);
        let x = OrdinaryPoly::var(3, 0);
        let y = OrdinaryPoly::var(3, 1);
        let z = OrdinaryPoly::var(3, 2);
        let a = x.add(&y).mul(&y.sub(&z)).mul(&x);
        let b = x.add(&y).mul(&z.add(&x));
        assert_eq!(gcd(&a, &b), x.add(&y));
    }

    #[test]
    fn kronecker_round_trip() {
        let f = OrdinaryPoly::from_terms(3, [(vec![1, 2, 0], 3), (vec![0, 0, 4], -1)]);
        let k = f.kronecker(5);
        assert_eq!(OrdinaryPoly::from_kronecker(3, 5, &k), f);
    }

    #[test]
    fn homogenization() {
        let f = OrdinaryPoly::from_terms(3, [(vec![2, 0, 0], 1), (vec![0, 1, 1], -1)]);
        assert!(f.is_homogeneous());
        let g = f.dehomogenize(2);
        assert_eq!(g.homogenize(2, 2), f);
    }
}
