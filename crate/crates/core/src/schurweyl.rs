//! Schur–Weyl sums, Weyl characters, generalized Weyl denominators and the
//! quotients `D(λ)`, `C(λ) = S(λ)/D(λ)`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclotomic::classical_cyclotomic;
use crate::error::{Error, Result};
use crate::grouplaurent::{degree_denominator, scaled_degree, GroupLaurentPoly, Symmetry, TermRecord};
use crate::rootsys::{LatticeClass, LatticeKind, RootLength, RootSystem};
use crate::weight::Weight;

/// `S(λ) = Σ_w ε(w) e^{wλ}`.
pub fn schur_weyl_sum(rs: &Arc<RootSystem>, lambda: &Weight) -> Result<GroupLaurentPoly> {
    rs.check_weight(lambda)?;
    let mut out = GroupLaurentPoly::zero(rs);
    for w in rs.weyl() {
        out.add_term(w.apply(lambda), BigInt::from(w.sign()));
    }
    Ok(out)
}

/// `e^{-dρ} Π_{α>0} (e^{dα} - 1)`, or with `dual` set,
/// `e^{-dρ̃} Π_{short} (e^{d m α} - 1) Π_{long} (e^{dα} - 1)`.
pub fn denominator_product(rs: &Arc<RootSystem>, d: i64, dual: bool) -> Result<GroupLaurentPoly> {
    if d < 1 {
        return Err(Error::Usage(format!("scaling factor must be positive, got {d}")));
    }
    let base = if dual { rs.rho_tilde() } else { rs.rho() };
    let mut out = GroupLaurentPoly::monomial(rs, base.scale(-d), BigInt::one());
    for (alpha, len) in rs.positive_roots().iter().zip(rs.root_lengths()) {
        let k = if dual && *len == RootLength::Short {
            d * rs.m_phi()
        } else {
            d
        };
        let binom = GroupLaurentPoly::from_terms(
            rs,
            [(alpha.scale(k), BigInt::one()), (Weight::zero(rs.rank()), -BigInt::one())],
        );
        out = out.mul(&binom)?;
    }
    Ok(out)
}

/// `χ_λ = S(λ+ρ)/S(ρ)`.
pub fn character(rs: &Arc<RootSystem>, hw: &Weight) -> Result<GroupLaurentPoly> {
    rs.check_weight(hw)?;
    if !hw.is_dominant() {
        return Err(Error::NotDominant(hw.to_vec()));
    }
    let rho = rs.rho();
    let num = schur_weyl_sum(rs, &(hw + &rho))?;
    let den = schur_weyl_sum(rs, &rho)?;
    num.divide_or_err(&den, &format!("S({hw}+ρ)/S(ρ)"))
}

/// An irreducible factor `Φ_k(e^β)` of a generalized Weyl denominator,
/// with `β` primitive in `P` and `Φ_k` the classical cyclotomic polynomial.
#[derive(Clone, Debug)]
pub struct DenominatorAtom {
    pub root: Weight,
    pub order: u64,
    pub poly: GroupLaurentPoly,
}

fn atom_poly(rs: &Arc<RootSystem>, beta: &Weight, k: u64) -> GroupLaurentPoly {
    GroupLaurentPoly::from_terms(
        rs,
        classical_cyclotomic(k)
            .into_iter()
            .enumerate()
            .map(|(j, c)| (beta.scale(j as i64), BigInt::from(c))),
    )
}

/// Keys `(β, k)` of the atoms of `e^{nα} - 1 = Π_{k|n} Φ_k(e^α)` for a
/// positive root `α = gβ` with `β` primitive.
fn binomial_atom_keys(alpha: &Weight, n: u64) -> Vec<(Weight, u64)> {
    let g = alpha.content().unsigned_abs();
    let beta = Weight::new(alpha.coords().iter().map(|c| c / g as i64));
    let mut keys = Vec::new();
    for k in (1..=n).filter(|k| n.is_multiple_of(*k)) {
        // Φ_k(z^g) = Π Φ_{k'}(z) over k' with k'/gcd(k',g) = k
        for kp in (1..=k * g).filter(|kp| (k * g).is_multiple_of(*kp)) {
            if kp / kp.gcd(&g) == k {
                keys.push((beta.clone(), kp));
            }
        }
    }
    keys
}

fn denominator_atom_keys(rs: &RootSystem, d: u64, dual: bool) -> Vec<(Weight, u64)> {
    let mut keys = Vec::new();
    for (alpha, len) in rs.positive_roots().iter().zip(rs.root_lengths()) {
        let n = if dual && *len == RootLength::Short {
            d * rs.m_phi() as u64
        } else {
            d
        };
        keys.extend(binomial_atom_keys(alpha, n));
    }
    keys
}

/// Factorization `S(dρ) = e^{-dρ} Π Φ_k(e^β)` (or its dual) into pairwise
/// coprime `ℚ`-irreducible atoms. Returns the unit monomial and the atoms.
pub fn weyl_denominator_factors(
    rs: &Arc<RootSystem>,
    d: i64,
    dual: bool,
) -> Result<(GroupLaurentPoly, Vec<DenominatorAtom>)> {
    if d < 1 {
        return Err(Error::Usage(format!("scaling factor must be positive, got {d}")));
    }
    let base = if dual { rs.rho_tilde() } else { rs.rho() };
    let unit = GroupLaurentPoly::monomial(rs, base.scale(-d), BigInt::one());
    let atoms = denominator_atom_keys(rs, d as u64, dual)
        .into_iter()
        .map(|(root, order)| DenominatorAtom {
            poly: atom_poly(rs, &root, order),
            root,
            order,
        })
        .collect();
    Ok((unit, atoms))
}

/// Result of [`big_d_and_c`].
#[derive(Clone, Debug)]
pub struct CLambdaResult {
    pub lambda: Weight,
    pub d_lambda: i64,
    pub d_star: Option<i64>,
    pub big_d: GroupLaurentPoly,
    pub c: GroupLaurentPoly,
    pub branch: LatticeClass,
    /// `D` uses `S(d*(λ)ρ̃)` rather than `S(d(λ)ρ)`.
    pub dual_branch: bool,
    pub nmfg_flag: bool,
    /// Outcome of the lcm cross-check, when it was run.
    pub lcm_agrees: Option<bool>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CLambdaJson {
    pub rs: String,
    pub lambda: Vec<i64>,
    pub d_lambda: i64,
    pub d_star: Option<i64>,
    pub branch: LatticeClass,
    pub dual_branch: bool,
    pub nmfg_flag: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lcm_agrees: Option<bool>,
    #[serde(rename = "D")]
    pub big_d: Vec<TermRecord>,
    #[serde(rename = "C")]
    pub c: Vec<TermRecord>,
}

impl CLambdaResult {
    pub fn to_json(&self) -> CLambdaJson {
        CLambdaJson {
            rs: self.c.rs().name().to_string(),
            lambda: self.lambda.to_vec(),
            d_lambda: self.d_lambda,
            d_star: self.d_star,
            branch: self.branch,
            dual_branch: self.dual_branch,
            nmfg_flag: self.nmfg_flag,
            lcm_agrees: self.lcm_agrees,
            big_d: self.big_d.records(),
            c: self.c.records(),
        }
    }

    /// `C(λ) = 1`, as for multiples of `ρ` and `ρ̃`.
    pub fn is_trivial(&self) -> bool {
        self.c.is_constant() && self.c.is_unit()
    }
}

/// Does `λ` have the shape `uω_α + vω_β + d(λ)ρ`, `d(λ) = (u,v)`,
/// `m v ≥ u + d(λ)`, `u ≥ v + d(λ)` for the short corner `α` and long corner
/// `β` of `F4` or `G2`?
pub fn nmfg_shape(rs: &RootSystem, lambda: &Weight) -> bool {
    use crate::rootsys::Family;
    if !matches!(rs.family(), Family::F | Family::G) || !lambda.is_regular() {
        return false;
    }
    let corners = rs.corners();
    let lens = rs.simple_root_lengths();
    let Some(&a) = corners.iter().find(|&&c| lens[c] == RootLength::Short) else {
        return false;
    };
    let Some(&b) = corners.iter().find(|&&c| lens[c] == RootLength::Long) else {
        return false;
    };
    let d = lambda.content().abs();
    let m = lambda.coords();
    let others_ok = (0..rs.rank()).all(|j| j == a || j == b || m[j] == d);
    let (u, v) = (m[a] - d, m[b] - d);
    others_ok
        && u >= 0
        && v >= 0
        && u.gcd(&v) == d
        && rs.m_phi() * v >= u + d
        && u >= v + d
}

pub fn big_d_and_c(rs: &Arc<RootSystem>, lambda: &Weight) -> Result<CLambdaResult> {
    big_d_and_c_with(rs, lambda, false)
}

/// Computes `D(λ)` from the lattice-chain dichotomy and `C(λ) = S(λ)/D(λ)`.
/// With `cross_check`, `D(λ)` is also rebuilt as the lcm of every
/// divisor-type factor `S(fρ)`, `S(eρ̃)` of `S(λ)` and compared up to units.
pub fn big_d_and_c_with(
    rs: &Arc<RootSystem>,
    lambda: &Weight,
    cross_check: bool,
) -> Result<CLambdaResult> {
    rs.check_weight(lambda)?;
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.to_vec()));
    }
    let (d_lambda, d_star) = rs.gcd_invariants(lambda)?;
    let branch = rs.lattice_class(lambda)?;
    let chain = rs.lattice_chain_class(lambda)?;
    let s = schur_weyl_sum(rs, lambda)?;
    let nmfg_flag = nmfg_shape(rs, lambda);

    if matches!(
        branch.kind,
        LatticeKind::MultipleOfRho | LatticeKind::MultipleOfRhoTilde
    ) {
        return Ok(CLambdaResult {
            lambda: lambda.clone(),
            d_lambda,
            d_star,
            big_d: s,
            c: GroupLaurentPoly::one(rs),
            branch,
            dual_branch: branch.kind == LatticeKind::MultipleOfRhoTilde,
            nmfg_flag,
            lcm_agrees: None,
        });
    }

    let dual_branch = rs.m_phi() > 1 && chain.kind == LatticeKind::InMi1PStarNotMi1P;
    let big_d = if dual_branch {
        let e = d_star.ok_or_else(|| Error::Internal(format!("ρ̃ ∤ {lambda} in the dual branch")))?;
        schur_weyl_sum(rs, &rs.rho_tilde().scale(e))?
    } else {
        schur_weyl_sum(rs, &rs.rho().scale(d_lambda))?
    };
    let c = s.divide_or_err(&big_d, &format!("S({lambda})/D({lambda})"))?;

    let lcm_agrees = if cross_check {
        Some(lcm_of_divisor_factors(rs, lambda, d_lambda, d_star)?.canonical() == big_d.canonical())
    } else {
        None
    };

    Ok(CLambdaResult {
        lambda: lambda.clone(),
        d_lambda,
        d_star,
        big_d,
        c,
        branch,
        dual_branch,
        nmfg_flag,
        lcm_agrees,
    })
}

/// lcm of `S(fρ)` for `f | d(λ)` and `S(eρ̃)` for `e | d*(λ)`, as a product of
/// the union of their irreducible atoms. Each factor is first confirmed to
/// divide `S(λ)`.
pub fn lcm_of_divisor_factors(
    rs: &Arc<RootSystem>,
    lambda: &Weight,
    d_lambda: i64,
    d_star: Option<i64>,
) -> Result<GroupLaurentPoly> {
    let s = schur_weyl_sum(rs, lambda)?;
    let mut keys: BTreeSet<(Weight, u64)> = BTreeSet::new();
    let mut factors: Vec<(i64, bool)> = (1..=d_lambda)
        .filter(|f| d_lambda % f == 0)
        .map(|f| (f, false))
        .collect();
    if let Some(ds) = d_star {
        factors.extend((1..=ds).filter(|e| ds % e == 0).map(|e| (e, true)));
    }
    for (f, dual) in factors {
        let base = if dual { rs.rho_tilde() } else { rs.rho() };
        let sf = schur_weyl_sum(rs, &base.scale(f))?;
        if s.exact_divide(&sf)?.is_none() {
            return Err(Error::InexactDivision(format!(
                "divisor-type factor {} does not divide S({lambda})",
                base.scale(f)
            )));
        }
        keys.extend(denominator_atom_keys(rs, f as u64, dual));
    }
    let mut out = GroupLaurentPoly::one(rs);
    for (beta, k) in keys {
        out = out.mul(&atom_poly(rs, &beta, k))?;
    }
    Ok(out)
}

/// The two highest terms of the cofactor expansion of `S(λ)` along a corner.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeadingCofactorTerms {
    pub alpha: usize,
    /// Scaled degrees are `den·<ω*_α, μ>`.
    pub den: i64,
    pub top_degree: i64,
    /// `λ^α`; the top coefficient is `S(λ^α)`.
    pub top_weight: Weight,
    /// `top_degree - den·m_α(λ)`.
    pub second_degree: i64,
    /// `(s_α λ)^α`; the second coefficient is `-S((s_α λ)^α)`.
    pub second_weight: Weight,
    /// The unique Dynkin neighbour `α_n` of `α`.
    pub neighbour: usize,
    /// `|m_{α_n}(α)|`.
    pub multiplier: i64,
}

pub fn leading_cofactor_terms(
    rs: &Arc<RootSystem>,
    lambda: &Weight,
    alpha: usize,
) -> Result<LeadingCofactorTerms> {
    rs.check_weight(lambda)?;
    rs.check_corner(alpha)?;
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.to_vec()));
    }
    if !lambda.is_regular() {
        return Err(Error::NotRegular(lambda.to_vec()));
    }
    let den = degree_denominator(rs, alpha);
    let top_degree = scaled_degree(rs, alpha, den, lambda);
    let m_alpha = lambda.coords()[alpha];
    let neighbour = rs.neighbours(alpha)[0];
    let multiplier = rs.cartan()[neighbour][alpha].abs();
    let top_weight = lambda.without(alpha);
    let mut second = lambda.to_vec();
    second[neighbour] += multiplier * m_alpha;
    let second_weight = Weight::new(second).without(alpha);
    Ok(LeadingCofactorTerms {
        alpha,
        den,
        top_degree,
        top_weight,
        second_degree: top_degree - den * m_alpha,
        second_weight,
        neighbour,
        multiplier,
    })
}

/// Outcome of comparing [`leading_cofactor_terms`] with an explicit expansion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CofactorCheck {
    pub top_matches: bool,
    pub second_matches: bool,
    /// No piece strictly between the two top degrees.
    pub window_empty: bool,
    /// `(s_α λ)^α` computed by applying `s_α` and projecting agrees with the closed form.
    pub reflection_formula_matches: bool,
}

impl CofactorCheck {
    pub fn ok(&self) -> bool {
        self.top_matches && self.second_matches && self.window_empty && self.reflection_formula_matches
    }
}

pub fn verify_leading_cofactor_terms(
    rs: &Arc<RootSystem>,
    lambda: &Weight,
    alpha: usize,
) -> Result<CofactorCheck> {
    let lt = leading_cofactor_terms(rs, lambda, alpha)?;
    let s = schur_weyl_sum(rs, lambda)?;
    let cof = s.cofactor_expand(alpha)?;
    let sub = cof.sub_rs().clone();
    let degrees = cof.degrees();
    let top_matches = degrees.first() == Some(&lt.top_degree)
        && cof.piece(lt.top_degree) == Some(&schur_weyl_sum(&sub, &lt.top_weight)?);
    let second_matches = degrees.get(1) == Some(&lt.second_degree)
        && cof.piece(lt.second_degree) == Some(&schur_weyl_sum(&sub, &lt.second_weight)?.neg());
    let window_empty = degrees
        .iter()
        .all(|&g| !(g < lt.top_degree && g > lt.second_degree));
    let s_alpha = &rs.generators()[alpha];
    let reflection_formula_matches = s_alpha.apply(lambda).without(alpha) == lt.second_weight;
    Ok(CofactorCheck {
        top_matches,
        second_matches,
        window_empty,
        reflection_formula_matches,
    })
}

/// Does the top cofactor piece of `u` along `α` divide every piece whose raw
/// degree lies within `window` of the top (all pieces when `window` is `None`)?
pub fn leading_piece_divides(
    u: &GroupLaurentPoly,
    alpha: usize,
    window: Option<i64>,
) -> Result<bool> {
    let cof = u.cofactor_expand(alpha)?;
    let Some(top_deg) = cof.top_degree else {
        return Ok(true);
    };
    let top = cof.top_piece().unwrap();
    for (&g, piece) in &cof.pieces {
        if let Some(wnd) = window {
            if top_deg - g >= wnd * cof.den {
                continue;
            }
        }
        if piece.exact_divide(top)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Decomposes `Π χ_{λ_i}` into irreducible characters by repeatedly peeling
/// off the leading (dominant) term.
pub fn tensor_decompose(rs: &Arc<RootSystem>, factors: &[Weight]) -> Result<Vec<(Weight, u64)>> {
    let mut cache = HashMap::new();
    tensor_decompose_cached(rs, factors, &mut cache)
}

pub fn tensor_decompose_cached(
    rs: &Arc<RootSystem>,
    factors: &[Weight],
    cache: &mut HashMap<Weight, GroupLaurentPoly>,
) -> Result<Vec<(Weight, u64)>> {
    let mut prod = GroupLaurentPoly::one(rs);
    for f in factors {
        let chi = cached_character(rs, f, cache)?;
        prod = prod.mul(&chi)?;
    }
    peel_characters(rs, prod, cache)
}

pub fn cached_character(
    rs: &Arc<RootSystem>,
    hw: &Weight,
    cache: &mut HashMap<Weight, GroupLaurentPoly>,
) -> Result<GroupLaurentPoly> {
    if let Some(c) = cache.get(hw) {
        return Ok(c.clone());
    }
    let c = character(rs, hw)?;
    cache.insert(hw.clone(), c.clone());
    Ok(c)
}

/// Writes a `W`-invariant element with non-negative multiplicities as a sum of characters.
pub fn peel_characters(
    rs: &Arc<RootSystem>,
    mut f: GroupLaurentPoly,
    cache: &mut HashMap<Weight, GroupLaurentPoly>,
) -> Result<Vec<(Weight, u64)>> {
    let mut out: BTreeMap<Weight, u64> = BTreeMap::new();
    while let Some((mu, c)) = f.leading_term() {
        let (mu, c) = (mu.clone(), c.clone());
        if !c.is_positive() || !mu.is_dominant() {
            return Err(Error::NegativeMultiplicity(mu.to_vec(), c.to_string()));
        }
        let chi = cached_character(rs, &mu, cache)?;
        f = f.sub(&chi.scalar_mul(&c))?;
        let k: u64 = c
            .try_into()
            .map_err(|_| Error::Internal("multiplicity overflow".into()))?;
        *out.entry(mu).or_default() += k;
    }
    Ok(out.into_iter().rev().collect())
}

/// `S(λ)` is alternating and `χ_λ` invariant; convenience for tests and reports.
pub fn is_alternating(f: &GroupLaurentPoly) -> bool {
    f.symmetry_check() == Symmetry::Alternating
}

/// Weyl dimension of `V_λ`, by summing the character's coefficients.
pub fn dimension(rs: &Arc<RootSystem>, hw: &Weight) -> Result<BigInt> {
    Ok(character(rs, hw)?.sum_of_coefficients())
}

/// Weyl dimension formula `Π_{α>0} <α*, λ+ρ>/<α*, ρ>`, independent of division.
pub fn weyl_dimension_formula(rs: &RootSystem, hw: &Weight) -> BigInt {
    // <α*, μ> = Σ c_i |α_i|² m_i(μ) / |α|²; the |α|² cancels in the ratio
    let sq = rs.squared_lengths();
    let lr = hw + &rs.rho();
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for c in rs.positive_roots_simple_coords() {
        let pair = |mu: &Weight| -> i64 {
            c.iter()
                .zip(sq)
                .zip(mu.coords())
                .map(|((ci, si), mi)| ci * si * mi)
                .sum::<i64>()
        };
        num *= BigInt::from(pair(&lr));
        den *= BigInt::from(pair(&rs.rho()));
    }
    if den.is_zero() {
        return BigInt::zero();
    }
    num / den
}
