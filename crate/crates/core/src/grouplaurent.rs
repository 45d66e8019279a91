//! Sparse elements of the group algebra `ℤ[P]`.
//!
//! Terms are kept in a `BTreeMap` keyed by `(grade, coords)`, where the grade
//! is the positive functional `<ρ^∨, μ>` (scaled to integers). The induced
//! total order refines the dominance order, so the leading term of a
//! `W`-invariant or alternating element is always dominant.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootsys::{Projection, RootSystem, WeylElement};
use crate::weight::Weight;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Exponent {
    grade: i64,
    coords: Weight,
}

impl Exponent {
    pub fn weight(&self) -> &Weight {
        &self.coords
    }
}

#[derive(Clone)]
pub struct GroupLaurentPoly {
    rs: Arc<RootSystem>,
    terms: BTreeMap<Exponent, BigInt>,
}

/// One serialized term.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub coords: Vec<i64>,
    pub coeff: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Symmetry {
    Invariant,
    Alternating,
    Neither,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingOp {
    Add,
    Sub,
    Mul,
}

impl fmt::Debug for GroupLaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.rs.name(), self)
    }
}

impl fmt::Display for GroupLaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*e^{}", e.coords)?;
        }
        Ok(())
    }
}

impl PartialEq for GroupLaurentPoly {
    fn eq(&self, other: &Self) -> bool {
        self.same_rs(other) && self.terms == other.terms
    }
}

impl Eq for GroupLaurentPoly {}

impl GroupLaurentPoly {
    pub fn zero(rs: &Arc<RootSystem>) -> Self {
        GroupLaurentPoly {
            rs: rs.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(rs: &Arc<RootSystem>) -> Self {
        Self::monomial(rs, Weight::zero(rs.rank()), BigInt::one())
    }

    pub fn constant(rs: &Arc<RootSystem>, c: impl Into<BigInt>) -> Self {
        Self::monomial(rs, Weight::zero(rs.rank()), c.into())
    }

    /// `c·e^μ`.
    pub fn monomial(rs: &Arc<RootSystem>, mu: Weight, c: BigInt) -> Self {
        let mut p = Self::zero(rs);
        p.add_term(mu, c);
        p
    }

    pub fn from_terms<I, C>(rs: &Arc<RootSystem>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Weight, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero(rs);
        for (w, c) in terms {
            p.add_term(w, c.into());
        }
        p
    }

    fn key(&self, mu: Weight) -> Exponent {
        Exponent {
            grade: self.rs.grade(&mu),
            coords: mu,
        }
    }

    /// Adds `c·e^μ` in place.
    pub fn add_term(&mut self, mu: Weight, c: BigInt) {
        debug_assert_eq!(mu.rank(), self.rs.rank());
        if c.is_zero() {
            return;
        }
        let k = self.key(mu);
        match self.terms.entry(k) {
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

    pub fn rs(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in decreasing term order.
    pub fn terms(&self) -> impl Iterator<Item = (&Weight, &BigInt)> {
        self.terms.iter().rev().map(|(e, c)| (&e.coords, c))
    }

    pub fn coeff(&self, mu: &Weight) -> BigInt {
        let k = Exponent {
            grade: self.rs.grade(mu),
            coords: mu.clone(),
        };
        self.terms.get(&k).cloned().unwrap_or_default()
    }

    pub fn leading_term(&self) -> Option<(&Weight, &BigInt)> {
        self.terms.iter().next_back().map(|(e, c)| (&e.coords, c))
    }

    pub fn trailing_term(&self) -> Option<(&Weight, &BigInt)> {
        self.terms.iter().next().map(|(e, c)| (&e.coords, c))
    }

    /// Is this `c·e^0` (including zero)?
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.coords.is_zero())
    }

    /// Is this `±e^μ`, a unit of `ℤ[P]`?
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().next().unwrap().abs().is_one()
    }

    pub fn same_rs(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.rs, &other.rs) || *self.rs == *other.rs
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.same_rs(other) {
            Ok(())
        } else {
            Err(Error::MismatchedRootSystems(
                self.rs.name().to_string(),
                other.rs.name().to_string(),
            ))
        }
    }

    /// Coordinate-wise minimum exponent over the support.
    pub fn min_exponent(&self) -> Option<Weight> {
        self.bound_exponent(i64::min)
    }

    pub fn max_exponent(&self) -> Option<Weight> {
        self.bound_exponent(i64::max)
    }

    fn bound_exponent(&self, pick: fn(i64, i64) -> i64) -> Option<Weight> {
        let mut it = self.terms.keys();
        let first = it.next()?.coords.to_vec();
        let v = it.fold(first, |acc, e| {
            acc.iter()
                .zip(e.coords.coords())
                .map(|(&a, &b)| pick(a, b))
                .collect()
        });
        Some(Weight::new(v))
    }

    pub fn content(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn ring_arith(&self, other: &Self, op: RingOp) -> Result<Self> {
        self.check_same(other)?;
        Ok(match op {
            RingOp::Add => self.add_unchecked(other, false),
            RingOp::Sub => self.add_unchecked(other, true),
            RingOp::Mul => self.mul_unchecked(other),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.ring_arith(other, RingOp::Add)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.ring_arith(other, RingOp::Sub)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.ring_arith(other, RingOp::Mul)
    }

    fn add_unchecked(&self, other: &Self, negate: bool) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            let c = if negate { -c } else { c.clone() };
            out.add_term_keyed(e.clone(), c);
        }
        out
    }

    fn add_term_keyed(&mut self, k: Exponent, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(k) {
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

    fn mul_unchecked(&self, other: &Self) -> Self {
        let mut acc: HashMap<Weight, BigInt> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let mu = &ea.coords + &eb.coords;
                *acc.entry(mu).or_default() += ca * cb;
            }
        }
        let mut out = Self::zero(&self.rs);
        for (mu, c) in acc {
            if !c.is_zero() {
                let k = out.key(mu);
                out.terms.insert(k, c);
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        GroupLaurentPoly {
            rs: self.rs.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scalar_mul(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero(&self.rs);
        }
        GroupLaurentPoly {
            rs: self.rs.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    /// Multiplies by the unit `e^μ`.
    pub fn shift(&self, mu: &Weight) -> Self {
        let dg = self.rs.grade(mu);
        GroupLaurentPoly {
            rs: self.rs.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    (
                        Exponent {
                            grade: e.grade + dg,
                            coords: &e.coords + mu,
                        },
                        c.clone(),
                    )
                })
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one(&self.rs);
        for _ in 0..n {
            out = out.mul_unchecked(self);
        }
        out
    }

    /// Exact division in `ℤ[P]`. Returns `None` when `g` does not divide `self`.
    pub fn exact_divide(&self, g: &Self) -> Result<Option<Self>> {
        self.check_same(g)?;
        if g.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut q = Self::zero(&self.rs);
        if self.is_zero() {
            return Ok(Some(q));
        }
        // Newton polytopes add under multiplication, so every quotient exponent
        // lies in [min(f) - min(g), max(f) - max(g)] coordinate-wise.
        let (fmin, fmax) = (self.min_exponent().unwrap(), self.max_exponent().unwrap());
        let (gmin, gmax) = (g.min_exponent().unwrap(), g.max_exponent().unwrap());
        let lo = &fmin - &gmin;
        let hi = &fmax - &gmax;
        if lo.coords().iter().zip(hi.coords()).any(|(a, b)| a > b) {
            return Ok(None);
        }
        let (glead_k, glead_c) = g.terms.iter().next_back().unwrap();
        let glead_k = glead_k.clone();
        let glead_c = glead_c.clone();
        let mut r = self.clone();
        while let Some((rk, rc)) = r.terms.iter().next_back() {
            let (qc, rem) = rc.div_rem(&glead_c);
            if !rem.is_zero() {
                return Ok(None);
            }
            let mu = &rk.coords - &glead_k.coords;
            let inside = mu
                .coords()
                .iter()
                .zip(lo.coords().iter().zip(hi.coords()))
                .all(|(m, (a, b))| a <= m && m <= b);
            if !inside {
                return Ok(None);
            }
            let qk = Exponent {
                grade: rk.grade - glead_k.grade,
                coords: mu.clone(),
            };
            for (ge, gc) in &g.terms {
                let k = Exponent {
                    grade: ge.grade + qk.grade,
                    coords: &ge.coords + &mu,
                };
                r.add_term_keyed(k, -(gc * &qc));
            }
            q.terms.insert(qk, qc);
        }
        Ok(Some(q))
    }

    /// Like [`Self::exact_divide`] but treats a remainder as an internal error.
    pub fn divide_or_err(&self, g: &Self, what: &str) -> Result<Self> {
        self.exact_divide(g)?
            .ok_or_else(|| Error::InexactDivision(what.to_string()))
    }

    /// `w(f)`, mapping each exponent by `w`.
    pub fn weyl_act(&self, w: &WeylElement) -> Self {
        let mut out = Self::zero(&self.rs);
        for (e, c) in &self.terms {
            let mu = w.apply(&e.coords);
            let k = out.key(mu);
            out.terms.insert(k, c.clone());
        }
        out
    }

    /// The scaling map `[d]`: `e^μ ↦ e^{dμ}`.
    pub fn scale(&self, d: i64) -> Self {
        GroupLaurentPoly {
            rs: self.rs.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    (
                        Exponent {
                            grade: e.grade * d,
                            coords: e.coords.scale(d),
                        },
                        c.clone(),
                    )
                })
                .collect(),
        }
    }

    pub fn symmetry_check(&self) -> Symmetry {
        let gens = self.rs.generators();
        let imgs: Vec<Self> = gens.iter().map(|s| self.weyl_act(s)).collect();
        if imgs.iter().all(|g| g == self) {
            return Symmetry::Invariant;
        }
        let neg = self.neg();
        if imgs.iter().all(|g| *g == neg) {
            return Symmetry::Alternating;
        }
        Symmetry::Neither
    }

    pub fn is_invariant(&self) -> bool {
        self.symmetry_check() == Symmetry::Invariant
    }

    pub fn cofactor_expand(&self, alpha: usize) -> Result<CofactorExpansion> {
        let (sub, proj) = self.rs.subsystem_at_corner(alpha)?;
        let sub = Arc::new(sub);
        let den = degree_denominator(&self.rs, alpha);
        let mut pieces: BTreeMap<i64, GroupLaurentPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let g = scaled_degree(&self.rs, alpha, den, &e.coords);
            pieces
                .entry(g)
                .or_insert_with(|| GroupLaurentPoly::zero(&sub))
                .add_term(proj.apply(&e.coords), c.clone());
        }
        pieces.retain(|_, p| !p.is_zero());
        let top_degree = pieces.keys().next_back().copied();
        Ok(CofactorExpansion {
            alpha,
            den,
            pieces,
            top_degree,
            parent: self.rs.clone(),
            sub,
            projection: proj,
        })
    }

    /// The top-degree cofactor piece along `α` is a single monomial.
    pub fn is_monic_along(&self, alpha: usize) -> Result<bool> {
        let cof = self.cofactor_expand(alpha)?;
        Ok(cof.top_piece().map(|p| p.len() == 1).unwrap_or(false))
    }

    /// Terms in decreasing order as `{coords, coeff}` records.
    pub fn records(&self) -> Vec<TermRecord> {
        self.terms()
            .map(|(w, c)| TermRecord {
                coords: w.to_vec(),
                coeff: c.to_string(),
            })
            .collect()
    }

    pub fn from_records(rs: &Arc<RootSystem>, records: &[TermRecord]) -> Result<Self> {
        let mut p = Self::zero(rs);
        for r in records {
            let w = Weight::new(r.coords.iter().copied());
            rs.check_weight(&w)?;
            let c: BigInt = r
                .coeff
                .parse()
                .map_err(|_| Error::Usage(format!("bad coefficient `{}`", r.coeff)))?;
            p.add_term(w, c);
        }
        Ok(p)
    }

    /// Representative of `f` up to units `±e^μ`: shifted so the coordinate-wise
    /// minimum exponent is 0 and signed so the leading coefficient is positive.
    pub fn canonical(&self) -> Self {
        let Some(min) = self.min_exponent() else {
            return self.clone();
        };
        let p = self.shift(&-&min);
        if p.leading_term().map(|(_, c)| c.is_negative()).unwrap_or(false) {
            p.neg()
        } else {
            p
        }
    }

    /// Compact string of the canonical form, suitable for hashing.
    pub fn canonical_key(&self) -> String {
        let c = self.canonical();
        let mut s = String::new();
        for (w, coeff) in c.terms() {
            s.push_str(&format!("{coeff}{w};"));
        }
        s
    }

    pub fn sum_of_coefficients(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn change_rs(&self, rs: &Arc<RootSystem>) -> Result<Self> {
        if *rs.as_ref() != *self.rs {
            return Err(Error::MismatchedRootSystems(
                self.rs.name().to_string(),
                rs.name().to_string(),
            ));
        }
        Ok(GroupLaurentPoly {
            rs: rs.clone(),
            terms: self.terms.clone(),
        })
    }
}

/// lcm of the denominators of row `α` of `A^{-1}`.
pub fn degree_denominator(rs: &RootSystem, alpha: usize) -> i64 {
    rs.inverse_cartan()[alpha]
        .iter()
        .fold(1i64, |acc, q| acc.lcm(q.denom()))
}

/// `den·<ω*_α, μ>` as an integer.
pub fn scaled_degree(rs: &RootSystem, alpha: usize, den: i64, mu: &Weight) -> i64 {
    (rs.coweight_pairing(alpha, mu) * Rational64::from_integer(den)).to_integer()
}

/// Graded decomposition `f = Σ_g e^{(g/den) l_α} U_g` along a corner root.
#[derive(Clone, Debug)]
pub struct CofactorExpansion {
    pub alpha: usize,
    pub den: i64,
    pub pieces: BTreeMap<i64, GroupLaurentPoly>,
    pub top_degree: Option<i64>,
    parent: Arc<RootSystem>,
    sub: Arc<RootSystem>,
    projection: Projection,
}

impl CofactorExpansion {
    pub fn sub_rs(&self) -> &Arc<RootSystem> {
        &self.sub
    }

    pub fn parent_rs(&self) -> &Arc<RootSystem> {
        &self.parent
    }

    pub fn projection(&self) -> Projection {
        self.projection
    }

    /// Leading coefficient `U_{α,u}`.
    pub fn top_piece(&self) -> Option<&GroupLaurentPoly> {
        self.top_degree.and_then(|g| self.pieces.get(&g))
    }

    pub fn piece(&self, g: i64) -> Option<&GroupLaurentPoly> {
        self.pieces.get(&g)
    }

    /// Raw degree `<ω*_α, μ>` of scaled degree `g`.
    pub fn raw_degree(&self, g: i64) -> Rational64 {
        Rational64::new(g, self.den)
    }

    /// Degree measured in units of `l_α = ω_α / <ω*_α, ω_α>`.
    pub fn l_alpha_degree(&self, g: i64) -> Rational64 {
        self.raw_degree(g) / self.parent.inverse_cartan()[self.alpha][self.alpha]
    }

    /// Recovers the parent weight from a scaled degree and a projected weight.
    pub fn unproject(&self, g: i64, proj: &Weight) -> Result<Weight> {
        let a = self.alpha;
        let row = &self.parent.inverse_cartan()[a];
        let mut rest = Rational64::new(g, self.den);
        let mut k = 0;
        let n = self.parent.rank();
        let mut coords = vec![0i64; n];
        for (j, c) in coords.iter_mut().enumerate() {
            if j == a {
                continue;
            }
            *c = proj.coords()[k];
            rest -= row[j] * Rational64::from_integer(*c);
            k += 1;
        }
        let ma = rest / row[a];
        if !ma.is_integer() {
            return Err(Error::Internal(format!(
                "degree {g}/{} with projection {proj} is not a lattice point",
                self.den
            )));
        }
        coords[a] = ma.to_integer();
        Ok(Weight::new(coords))
    }

    /// Reassembles the original polynomial.
    pub fn reassemble(&self) -> Result<GroupLaurentPoly> {
        let mut out = GroupLaurentPoly::zero(&self.parent);
        for (&g, p) in &self.pieces {
            for (w, c) in p.terms() {
                out.add_term(self.unproject(g, w)?, c.clone());
            }
        }
        Ok(out)
    }

    /// Scaled degrees present, highest first.
    pub fn degrees(&self) -> Vec<i64> {
        self.pieces.keys().rev().copied().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(name: &str) -> Arc<RootSystem> {
        Arc::new(RootSystem::parse(name).unwrap())
    }

    fn w(c: &[i64]) -> Weight {
        Weight::new(c.iter().copied())
    }

    fn p(r: &Arc<RootSystem>, t: &[(&[i64], i64)]) -> GroupLaurentPoly {
        GroupLaurentPoly::from_terms(r, t.iter().map(|(c, k)| (w(c), *k)))
    }

    #[test]
    fn difference_of_squares() {
        let a1 = rs("A1");
        let f = p(&a1, &[(&[1], 1), (&[-1], -1)]);
        let g = p(&a1, &[(&[1], 1), (&[-1], 1)]);
        assert_eq!(f.mul(&g).unwrap(), p(&a1, &[(&[2], 1), (&[-2], -1)]));
        assert!(f.add(&f.neg()).unwrap().is_zero());
        assert_eq!(
            f.mul(&f).unwrap(),
            p(&a1, &[(&[2], 1), (&[0], -2), (&[-2], 1)])
        );
    }

    #[test]
    fn division_examples() {
        let a1 = rs("A1");
        let num = p(&a1, &[(&[2], 1), (&[-2], -1)]);
        let den = p(&a1, &[(&[1], 1), (&[-1], -1)]);
        assert_eq!(
            num.exact_divide(&den).unwrap().unwrap(),
            p(&a1, &[(&[1], 1), (&[-1], 1)])
        );
        let bad = p(&a1, &[(&[1], 1), (&[-1], 2)]);
        assert!(num.exact_divide(&bad).unwrap().is_none());
        assert!(matches!(
            num.exact_divide(&GroupLaurentPoly::zero(&a1)),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn mismatched_systems_rejected() {
        let a = GroupLaurentPoly::one(&rs("A2"));
        let b = GroupLaurentPoly::one(&rs("B2"));
        assert!(matches!(a.add(&b), Err(Error::MismatchedRootSystems(..))));
    }

    #[test]
    fn weyl_action_examples() {
        let a1 = rs("A1");
        let s = &a1.generators()[0];
        assert_eq!(p(&a1, &[(&[1], 1)]).weyl_act(s), p(&a1, &[(&[-1], 1)]));
        let a2 = rs("A2");
        let s1 = &a2.generators()[0];
        assert_eq!(p(&a2, &[(&[1, 0], 1)]).weyl_act(s1), p(&a2, &[(&[-1, 1], 1)]));
        let f = p(&a2, &[(&[1, 0], 3), (&[2, -1], -1)]);
        assert_eq!(f.weyl_act(&a2.weyl()[0]), f);
    }

    #[test]
    fn scaling() {
        let a1 = rs("A1");
        let s = p(&a1, &[(&[1], 1), (&[-1], -1)]);
        assert_eq!(s.scale(2), p(&a1, &[(&[2], 1), (&[-2], -1)]));
        assert_eq!(s.scale(1), s);
        assert_eq!(s.scale(2).scale(3), s.scale(6));
    }

    #[test]
    fn symmetry_classes() {
        let a1 = rs("A1");
        assert_eq!(
            p(&a1, &[(&[1], 1), (&[-1], -1)]).symmetry_check(),
            Symmetry::Alternating
        );
        assert_eq!(
            p(&a1, &[(&[1], 1), (&[-1], 1)]).symmetry_check(),
            Symmetry::Invariant
        );
        assert_eq!(p(&a1, &[(&[1], 1)]).symmetry_check(), Symmetry::Neither);
    }

    #[test]
    fn monomial_cofactor_and_reassembly() {
        let a3 = rs("A3");
        let f = p(&a3, &[(&[1, 0, 0], 1)]);
        let cof = f.cofactor_expand(0).unwrap();
        assert_eq!(cof.pieces.len(), 1);
        assert_eq!(cof.reassemble().unwrap(), f);
        let g = p(&a3, &[(&[1, -2, 3], 2), (&[0, 1, -1], -5), (&[2, 2, 2], 1)]);
        for c in a3.corners() {
            assert_eq!(g.cofactor_expand(c).unwrap().reassemble().unwrap(), g);
        }
        assert!(g.cofactor_expand(1).is_err());
    }

    #[test]
    fn canonical_form_is_unit_invariant() {
        let b2 = rs("B2");
        let f = p(&b2, &[(&[1, 0], 2), (&[-1, 1], -3), (&[0, -2], 1)]);
        let unit = f.shift(&w(&[5, -7])).neg();
        assert_eq!(f.canonical(), unit.canonical());
        assert_eq!(f.canonical_key(), unit.canonical_key());
        assert!(f.canonical().leading_term().unwrap().1 > &BigInt::zero());
    }

    #[test]
    fn records_round_trip() {
        let g2 = rs("G2");
        let f = p(&g2, &[(&[1, 0], 2), (&[-1, 1], -3)]);
        let recs = f.records();
        assert_eq!(GroupLaurentPoly::from_records(&g2, &recs).unwrap(), f);
        assert_eq!(recs[0].coords, f.leading_term().unwrap().0.to_vec());
    }
}
