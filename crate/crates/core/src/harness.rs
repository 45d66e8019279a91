//! Sweep driver: enumerates weights, runs checks and journals one JSON
//! object per line, with a summary record last.

use std::collections::{BTreeMap, HashMap};
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use num_traits::Signed;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::grouplaurent::GroupLaurentPoly;
use crate::polyfactor::{
    self, analyze, laurent_to_poly, separability_check, Basis, FactorConfig, FactorReport,
    OrdinaryPoly, Verdict,
};
use crate::rootsys::{Family, RootSystem};
use crate::schurweyl::{
    big_d_and_c, cached_character, character, denominator_product, dimension, leading_piece_divides,
    nmfg_shape, schur_weyl_sum, weyl_denominator_factors, CLambdaJson,
};
use crate::weight::Weight;

pub const SCHEMA: &str = "charirr.sweep/1";

/// Largest number of atom subsets tested per denominator in the Eisenstein check.
const EISENSTEIN_SUBSETS: usize = 512;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    Irreducibility,
    Uniqueness,
    Divisibility,
    Tensor,
    DenominatorIdentity,
    Separability,
    Eisenstein,
}

impl Check {
    pub const ALL: [Check; 7] = [
        Check::Irreducibility,
        Check::Uniqueness,
        Check::Divisibility,
        Check::Tensor,
        Check::DenominatorIdentity,
        Check::Separability,
        Check::Eisenstein,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Irreducibility => "irreducibility",
            Check::Uniqueness => "uniqueness",
            Check::Divisibility => "divisibility",
            Check::Tensor => "tensor",
            Check::DenominatorIdentity => "denominator_identity",
            Check::Separability => "separability",
            Check::Eisenstein => "eisenstein",
        }
    }

    pub fn parse(s: &str) -> Result<Check> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s.trim())
            .ok_or_else(|| Error::Usage(format!("unknown check `{s}`")))
    }

    /// Parses a comma-separated list; `all` selects every check.
    pub fn parse_list(s: &str) -> Result<Vec<Check>> {
        if s.trim() == "all" {
            return Ok(Check::ALL.to_vec());
        }
        let mut out = Vec::new();
        for part in s.split(',').filter(|p| !p.trim().is_empty()) {
            let c = Check::parse(part)?;
            if !out.contains(&c) {
                out.push(c);
            }
        }
        if out.is_empty() {
            return Err(Error::Usage("no checks selected".into()));
        }
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail,
    Skipped,
    SkippedByTheorem,
    /// Reducible over `ℂ` with no invariant splitting found over `ℚ`.
    Unresolved,
}

impl Outcome {
    pub fn name(self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::Skipped => "skipped",
            Outcome::SkippedByTheorem => "skipped_by_theorem",
            Outcome::Unresolved => "unresolved",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    #[default]
    Jsonl,
    Csv,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub rs_name: String,
    pub coord_bound: i64,
    pub checks: Vec<Check>,
    pub jobs: usize,
    /// `None` keeps results in memory; `-` writes to standard output.
    pub output_path: Option<PathBuf>,
    pub seed: u64,
    pub factor: FactorConfig,
    /// Largest number of factors in a tensor product.
    pub tensor_arity: usize,
    pub timings: bool,
    pub format: OutputFormat,
}

impl SweepConfig {
    pub fn new(rs_name: &str, coord_bound: i64, checks: &[Check]) -> Self {
        SweepConfig {
            rs_name: rs_name.to_string(),
            coord_bound,
            checks: checks.to_vec(),
            jobs: 1,
            output_path: None,
            seed: 0,
            factor: FactorConfig::default(),
            tensor_arity: 3,
            timings: false,
            format: OutputFormat::Jsonl,
        }
    }

    pub fn validate(&self) -> Result<Arc<RootSystem>> {
        if self.coord_bound < 1 {
            return Err(Error::Usage(format!(
                "coordinate bound must be at least 1, got {}",
                self.coord_bound
            )));
        }
        if self.checks.is_empty() {
            return Err(Error::Usage("no checks selected".into()));
        }
        if self.tensor_arity == 0 {
            return Err(Error::Usage("tensor arity must be positive".into()));
        }
        Ok(Arc::new(RootSystem::parse(&self.rs_name)?))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub schema: String,
    pub kind: String,
    pub rs: String,
    pub check: Check,
    pub item: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coords: Option<Vec<i64>>,
    pub verdict: Outcome,
    pub detail: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ms: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub schema: String,
    pub kind: String,
    pub rs: String,
    pub bound: i64,
    pub checks: Vec<Check>,
    pub seed: u64,
    /// check → verdict → count.
    pub counts: BTreeMap<String, BTreeMap<String, usize>>,
    pub failures: Vec<Record>,
    pub unresolved: Vec<Record>,
    pub nmfg_flagged: Vec<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
    /// Records reused from an earlier run (not serialized).
    #[serde(skip)]
    pub resumed: usize,
}

impl SweepSummary {
    pub fn has_failures(&self) -> bool {
        !self.failures.is_empty()
    }

    pub fn count(&self, check: Check, outcome: Outcome) -> usize {
        self.counts
            .get(check.name())
            .and_then(|m| m.get(outcome.name()))
            .copied()
            .unwrap_or(0)
    }

    pub fn total(&self, check: Check) -> usize {
        self.counts
            .get(check.name())
            .map(|m| m.values().sum())
            .unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Item {
    Weight(Weight),
    Scale { d: i64, dual: bool },
    Multiset(Vec<Weight>),
}

impl Item {
    fn label(&self) -> String {
        match self {
            Item::Weight(w) => w.to_string(),
            Item::Scale { d, dual } => {
                if *dual {
                    format!("d={d},dual")
                } else {
                    format!("d={d}")
                }
            }
            Item::Multiset(ws) => {
                let parts: Vec<String> = ws.iter().map(|w| w.to_string()).collect();
                format!("{{{}}}", parts.join(","))
            }
        }
    }

    fn coords(&self) -> Option<Vec<i64>> {
        match self {
            Item::Weight(w) => Some(w.to_vec()),
            _ => None,
        }
    }
}

/// Dominant weights with every coordinate in `lo..=hi`, in lexicographic order.
pub fn dominant_box(rank: usize, lo: i64, hi: i64) -> Vec<Weight> {
    let mut out = Vec::new();
    if rank == 0 || lo > hi {
        return out;
    }
    let mut idx = vec![lo; rank];
    loop {
        out.push(Weight::new(idx.clone()));
        let mut i = rank;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] < hi {
                idx[i] += 1;
                for x in idx.iter_mut().skip(i + 1) {
                    *x = lo;
                }
                break;
            }
        }
    }
}

/// Regular dominant weights with coordinates at most `bound`.
pub fn regular_weights(rank: usize, bound: i64) -> Vec<Weight> {
    dominant_box(rank, 1, bound)
}

/// Nonzero dominant weights with coordinates at most `bound`.
pub fn nontrivial_weights(rank: usize, bound: i64) -> Vec<Weight> {
    dominant_box(rank, 0, bound)
        .into_iter()
        .filter(|w| !w.is_zero())
        .collect()
}

/// Multisets of size `1..=arity`, as non-decreasing index sequences.
pub fn multisets<T: Clone>(items: &[T], arity: usize) -> Vec<Vec<T>> {
    fn rec<T: Clone>(items: &[T], start: usize, left: usize, cur: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i].clone());
            rec(items, i, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for k in 1..=arity {
        rec(items, 0, k, &mut Vec::new(), &mut out);
    }
    out
}

fn scales(rs: &RootSystem) -> Vec<Item> {
    let mut out = Vec::new();
    for d in 1..=3 {
        out.push(Item::Scale { d, dual: false });
    }
    if !rs.is_simply_laced() {
        for d in 1..=3 {
            out.push(Item::Scale { d, dual: true });
        }
    }
    out
}

fn items_for(check: Check, rs: &RootSystem, cfg: &SweepConfig) -> Vec<Item> {
    let r = rs.rank();
    match check {
        Check::Irreducibility | Check::Uniqueness | Check::Divisibility => {
            regular_weights(r, cfg.coord_bound)
                .into_iter()
                .map(Item::Weight)
                .collect()
        }
        Check::Tensor => multisets(&nontrivial_weights(r, cfg.coord_bound), cfg.tensor_arity)
            .into_iter()
            .map(Item::Multiset)
            .collect(),
        Check::DenominatorIdentity | Check::Separability | Check::Eisenstein => scales(rs),
    }
}

pub fn digest(s: &str) -> String {
    let h = Sha256::digest(s.as_bytes());
    h.iter().take(16).map(|b| format!("{b:02x}")).collect()
}

fn item_seed(base: u64, check: Check, label: &str) -> u64 {
    // FNV-1a, stable across platforms
    let mut h: u64 = 0xcbf29ce484222325;
    for b in check.name().bytes().chain(label.bytes()) {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h ^ base
}

/// Ambient coordinates for type A, fundamental coordinates otherwise.
pub fn default_basis(rs: &RootSystem) -> Basis {
    if rs.family() == Family::A {
        Basis::AmbientX
    } else {
        Basis::FundamentalCoords
    }
}

struct Ctx {
    rs: Arc<RootSystem>,
    cfg: SweepConfig,
}

fn record(ctx: &Ctx, check: Check, item: &Item, verdict: Outcome, detail: Value) -> Record {
    Record {
        schema: SCHEMA.into(),
        kind: "record".into(),
        rs: ctx.rs.name().to_string(),
        check,
        item: item.label(),
        coords: item.coords(),
        verdict,
        detail,
        ms: None,
    }
}

fn error_record(ctx: &Ctx, check: Check, item: &Item, e: &Error) -> Record {
    let verdict = match e {
        Error::DegreeBoundExceeded { .. } | Error::WeylGroupTooLarge { .. } => Outcome::Skipped,
        _ => Outcome::Fail,
    };
    record(ctx, check, item, verdict, json!({ "error": e.to_string() }))
}

fn run_item(ctx: &Ctx, check: Check, item: &Item) -> Record {
    let start = Instant::now();
    let res = match (check, item) {
        (Check::Irreducibility, Item::Weight(l)) => eval_irreducibility(ctx, item, l),
        (Check::Uniqueness, Item::Weight(l)) => eval_uniqueness(ctx, item, l),
        (Check::Divisibility, Item::Weight(l)) => eval_divisibility(ctx, item, l),
        (Check::Tensor, Item::Multiset(ws)) => eval_tensor(ctx, item, ws),
        (Check::DenominatorIdentity, Item::Scale { d, dual }) => {
            eval_denominator_identity(ctx, item, *d, *dual)
        }
        (Check::Separability, Item::Scale { d, dual }) => eval_separability(ctx, item, *d, *dual),
        (Check::Eisenstein, Item::Scale { d, dual }) => eval_eisenstein(ctx, item, *d, *dual),
        _ => Err(Error::Internal("check and item kind do not match".into())),
    };
    let mut rec = res.unwrap_or_else(|e| error_record(ctx, check, item, &e));
    if ctx.cfg.timings {
        rec.ms = Some(start.elapsed().as_millis() as u64);
    }
    rec
}

fn scaled_weyl_vector(rs: &RootSystem, d: i64, dual: bool) -> Weight {
    let base = if dual { rs.rho_tilde() } else { rs.rho() };
    base.scale(d)
}

/// Factor analysis of `C(λ)` in the sweep's basis.
fn eval_irreducibility(ctx: &Ctx, item: &Item, lambda: &Weight) -> Result<Record> {
    let rs = &ctx.rs;
    let res = big_d_and_c(rs, lambda)?;
    let nmfg = nmfg_shape(rs, lambda);
    if rs.is_rho_multiple(lambda) {
        let verdict = if res.is_trivial() {
            Outcome::SkippedByTheorem
        } else {
            Outcome::Fail
        };
        return Ok(record(
            ctx,
            Check::Irreducibility,
            item,
            verdict,
            json!({ "reason": "multiple of rho or rho_tilde", "c_is_one": res.is_trivial() }),
        ));
    }
    let basis = default_basis(rs);
    let p = laurent_to_poly(&res.c, basis)?;
    let mut fcfg = ctx.cfg.factor.clone();
    fcfg.abs.gao.seed = item_seed(ctx.cfg.seed, Check::Irreducibility, &item.label());
    let report = analyze(&p, &format!("C{}", lambda), &fcfg);
    let mut verdict = match report.verdict {
        Verdict::AbsolutelyIrreducible => Outcome::Pass,
        Verdict::Skipped => Outcome::Skipped,
        Verdict::Unit => Outcome::Fail,
        Verdict::Reducible => Outcome::Fail,
    };
    let mut orbit = Value::Null;
    if report.verdict == Verdict::Reducible && basis == Basis::FundamentalCoords {
        let (invariant_split, info) = orbit_analysis(rs, &p, fcfg.max_kron_degree);
        orbit = info;
        if !invariant_split {
            verdict = Outcome::Unresolved;
        }
    }
    if report.oracle_agrees == Some(false) {
        verdict = Outcome::Fail;
    }
    Ok(record(
        ctx,
        Check::Irreducibility,
        item,
        verdict,
        json!({
            "basis": basis,
            "d_lambda": res.d_lambda,
            "d_star": res.d_star,
            "branch": res.branch,
            "dual_branch": res.dual_branch,
            "nmfg": nmfg,
            "c_terms": res.c.len(),
            "report": report,
            "orbit_analysis": orbit,
        }),
    ))
}

/// Groups the `ℚ`-factors of a reducible `C(λ)` into `W`-orbits. More than
/// one orbit gives a splitting into `W`-semi-invariant pieces.
fn orbit_analysis(rs: &Arc<RootSystem>, p: &OrdinaryPoly, max_kron: usize) -> (bool, Value) {
    let Ok(fact) = polyfactor::factor_over_rationals(p, max_kron) else {
        return (false, json!({ "status": "rational factorization unavailable" }));
    };
    let factors: Vec<GroupLaurentPoly> = fact
        .proper_factors()
        .iter()
        .map(|(f, _)| to_laurent(rs, f))
        .collect();
    let keys: Vec<String> = factors.iter().map(|f| f.canonical_key()).collect();
    let mut orbit_of: Vec<Option<usize>> = vec![None; factors.len()];
    let mut orbits = 0;
    for i in 0..factors.len() {
        if orbit_of[i].is_some() {
            continue;
        }
        orbit_of[i] = Some(orbits);
        for w in rs.weyl() {
            let k = factors[i].weyl_act(w).canonical_key();
            if let Some(j) = keys.iter().position(|x| *x == k) {
                orbit_of[j] = Some(orbits);
            }
        }
        orbits += 1;
    }
    (
        orbits > 1,
        json!({ "q_factors": factors.len(), "orbits": orbits }),
    )
}

fn to_laurent(rs: &Arc<RootSystem>, p: &OrdinaryPoly) -> GroupLaurentPoly {
    GroupLaurentPoly::from_terms(
        rs,
        p.terms().map(|(m, c)| {
            (
                Weight::new(m.iter().map(|&e| e as i64)),
                c.clone(),
            )
        }),
    )
}

/// Divisor-type weights `μ = fρ` or `eρ̃` dividing `λ`, excluding `λ`.
pub fn divisor_type_weights(rs: &RootSystem, lambda: &Weight) -> Vec<(Weight, &'static str, i64)> {
    let mut out: Vec<(Weight, &'static str, i64)> = Vec::new();
    let rho = rs.rho();
    let rt = rs.rho_tilde();
    let bound = lambda.coords().iter().copied().max().unwrap_or(0);
    for f in 1..=bound {
        let mu = rho.scale(f);
        if mu.divides(lambda) && mu != *lambda {
            out.push((mu, "rho", f));
        }
    }
    for e in 1..=bound {
        let mu = rt.scale(e);
        if mu.divides(lambda) && mu != *lambda && !out.iter().any(|(m, _, _)| *m == mu) {
            out.push((mu, "rho_tilde", e));
        }
    }
    out
}

fn eval_uniqueness(ctx: &Ctx, item: &Item, lambda: &Weight) -> Result<Record> {
    let rs = &ctx.rs;
    let s = schur_weyl_sum(rs, lambda)?;
    let c_digest = if rs.is_rho_multiple(lambda) {
        None
    } else {
        let res = big_d_and_c(rs, lambda)?;
        if res.is_trivial() {
            None
        } else {
            Some(digest(&res.c.canonical_key()))
        }
    };
    let mut quotients = Vec::new();
    for (mu, kind, k) in divisor_type_weights(rs, lambda) {
        let sm = schur_weyl_sum(rs, &mu)?;
        let q = s.divide_or_err(&sm, &format!("S{lambda} / S{mu}"))?;
        quotients.push(json!({
            "mu": mu.to_vec(),
            "type": kind,
            "multiple": k,
            "digest": digest(&q.canonical_key()),
        }));
    }
    Ok(record(
        ctx,
        Check::Uniqueness,
        item,
        Outcome::Pass,
        json!({ "c_digest": c_digest, "quotients": quotients }),
    ))
}

fn eval_divisibility(ctx: &Ctx, item: &Item, lambda: &Weight) -> Result<Record> {
    let rs = &ctx.rs;
    let s = schur_weyl_sum(rs, lambda)?;
    let (d, _) = rs.gcd_invariants(lambda)?;
    let mut checked = Vec::new();
    let mut ok = true;
    let mut cases: Vec<(Weight, bool, i64)> = (1..=d)
        .filter(|f| d % f == 0)
        .map(|f| (rs.rho().scale(f), false, f))
        .collect();
    if !rs.is_simply_laced() {
        let rt = rs.rho_tilde();
        let bound = lambda.coords().iter().copied().max().unwrap_or(0);
        for e in 1..=bound {
            if rt.scale(e).divides(lambda) {
                cases.push((rt.scale(e), true, e));
            }
        }
    }
    for (mu, dual, k) in cases {
        let sm = schur_weyl_sum(rs, &mu)?;
        let q = s.exact_divide(&sm)?;
        let (divides, invariant, nonneg) = match &q {
            None => (false, false, false),
            Some(q) => (
                true,
                q.is_invariant(),
                !(k == 1 && !dual) || q.terms().all(|(_, c)| !c.is_negative()),
            ),
        };
        ok &= divides && invariant && nonneg;
        checked.push(json!({
            "mu": mu.to_vec(),
            "dual": dual,
            "multiple": k,
            "divides": divides,
            "invariant": invariant,
            "nonnegative": nonneg,
        }));
    }
    Ok(record(
        ctx,
        Check::Divisibility,
        item,
        if ok { Outcome::Pass } else { Outcome::Fail },
        json!({ "cases": checked }),
    ))
}

fn eval_tensor(ctx: &Ctx, item: &Item, ws: &[Weight]) -> Result<Record> {
    let rs = &ctx.rs;
    let mut cache = HashMap::new();
    let mut prod = GroupLaurentPoly::one(rs);
    for w in ws {
        prod = prod.mul(&cached_character(rs, w, &mut cache)?)?;
    }
    Ok(record(
        ctx,
        Check::Tensor,
        item,
        Outcome::Pass,
        json!({
            "factors": ws.iter().map(|w| w.to_vec()).collect::<Vec<_>>(),
            "terms": prod.len(),
            "digest": digest(&prod.canonical_key()),
        }),
    ))
}

fn eval_denominator_identity(ctx: &Ctx, item: &Item, d: i64, dual: bool) -> Result<Record> {
    let rs = &ctx.rs;
    let lhs = denominator_product(rs, d, dual)?;
    let rhs = schur_weyl_sum(rs, &scaled_weyl_vector(rs, d, dual))?;
    let ok = lhs == rhs;
    Ok(record(
        ctx,
        Check::DenominatorIdentity,
        item,
        if ok { Outcome::Pass } else { Outcome::Fail },
        json!({ "terms": rhs.len(), "equal": ok }),
    ))
}

fn eval_separability(ctx: &Ctx, item: &Item, d: i64, dual: bool) -> Result<Record> {
    let rs = &ctx.rs;
    let s = schur_weyl_sum(rs, &scaled_weyl_vector(rs, d, dual))?;
    let p = laurent_to_poly(&s, Basis::FundamentalCoords)?;
    let ok = separability_check(&p);
    Ok(record(
        ctx,
        Check::Separability,
        item,
        if ok { Outcome::Pass } else { Outcome::Fail },
        json!({ "degree": p.total_degree(), "separable": ok }),
    ))
}

/// Leading cofactor pieces of factors of `S(dρ)` (products of its
/// `ℚ`-irreducible atoms) divide the lower pieces along every corner.
fn eval_eisenstein(ctx: &Ctx, item: &Item, d: i64, dual: bool) -> Result<Record> {
    let rs = &ctx.rs;
    let (_, atoms) = weyl_denominator_factors(rs, d, dual)?;
    let corners = rs.corners();
    let n = atoms.len();
    let subsets: Vec<Vec<usize>> = if n <= 9 {
        (1u64..(1 << n))
            .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect())
            .collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(item_seed(ctx.cfg.seed, Check::Eisenstein, &item.label()));
        let mut out: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
        out.push((0..n).collect());
        while out.len() < EISENSTEIN_SUBSETS {
            let k = 2 + (out.len() % (n - 2));
            let mut s = sample(&mut rng, n, k).into_vec();
            s.sort_unstable();
            out.push(s);
        }
        out
    };
    let mut tested = 0usize;
    let mut failure = Value::Null;
    'outer: for sub in &subsets {
        let mut u = GroupLaurentPoly::one(rs);
        for &i in sub {
            u = u.mul(&atoms[i].poly)?;
        }
        for &alpha in &corners {
            tested += 1;
            if !leading_piece_divides(&u, alpha, None)? {
                failure = json!({
                    "corner": alpha,
                    "atoms": sub.iter().map(|&i| json!({
                        "root": atoms[i].root.to_vec(),
                        "order": atoms[i].order,
                    })).collect::<Vec<_>>(),
                });
                break 'outer;
            }
        }
    }
    let ok = failure.is_null();
    Ok(record(
        ctx,
        Check::Eisenstein,
        item,
        if ok { Outcome::Pass } else { Outcome::Fail },
        json!({
            "atoms": n,
            "subsets": subsets.len(),
            "corners": corners,
            "tests": tested,
            "failure": failure,
        }),
    ))
}

/// Digest collisions among uniqueness and tensor records, confirmed by
/// recomputing the full canonical keys.
fn collisions(ctx: &Ctx, records: &[Record]) -> Result<Vec<Record>> {
    let rs = &ctx.rs;
    let mut out = Vec::new();
    let mut c_seen: BTreeMap<String, Vec<i64>> = BTreeMap::new();
    let mut q_seen: BTreeMap<String, (Vec<i64>, Vec<i64>)> = BTreeMap::new();
    let mut t_seen: BTreeMap<String, Vec<Vec<i64>>> = BTreeMap::new();
    let weight = |v: &Value| -> Weight {
        Weight::new(v.as_array().unwrap().iter().map(|x| x.as_i64().unwrap()))
    };
    for r in records {
        match r.check {
            Check::Uniqueness if r.verdict == Outcome::Pass => {
                let lambda = r.coords.clone().unwrap_or_default();
                if let Some(dg) = r.detail["c_digest"].as_str() {
                    if let Some(prev) = c_seen.get(dg) {
                        if *prev != lambda {
                            let a = big_d_and_c(rs, &Weight::new(prev.clone()))?.c.canonical_key();
                            let b = big_d_and_c(rs, &Weight::new(lambda.clone()))?.c.canonical_key();
                            if a == b {
                                out.push(collision(ctx, Check::Uniqueness, json!({
                                    "form": "C",
                                    "lambda_1": prev,
                                    "lambda_2": lambda,
                                })));
                            }
                        }
                    } else {
                        c_seen.insert(dg.to_string(), lambda.clone());
                    }
                }
                for q in r.detail["quotients"].as_array().into_iter().flatten() {
                    let dg = q["digest"].as_str().unwrap_or_default().to_string();
                    let mu = weight(&q["mu"]).to_vec();
                    if let Some((pl, pm)) = q_seen.get(&dg) {
                        if (pl, pm) != (&lambda, &mu) {
                            let key = |l: &[i64], m: &[i64]| -> Result<String> {
                                let s = schur_weyl_sum(rs, &Weight::new(l.to_vec()))?;
                                let t = schur_weyl_sum(rs, &Weight::new(m.to_vec()))?;
                                Ok(s.divide_or_err(&t, "quotient")?.canonical_key())
                            };
                            if key(pl, pm)? == key(&lambda, &mu)? {
                                out.push(collision(ctx, Check::Uniqueness, json!({
                                    "form": "quotient",
                                    "lambda_1": pl, "mu_1": pm,
                                    "lambda_2": lambda, "mu_2": mu,
                                })));
                            }
                        }
                    } else {
                        q_seen.insert(dg, (lambda.clone(), mu));
                    }
                }
            }
            Check::Tensor if r.verdict == Outcome::Pass => {
                let factors: Vec<Vec<i64>> = r.detail["factors"]
                    .as_array()
                    .into_iter()
                    .flatten()
                    .map(|v| weight(v).to_vec())
                    .collect();
                let dg = r.detail["digest"].as_str().unwrap_or_default().to_string();
                if let Some(prev) = t_seen.get(&dg) {
                    if *prev != factors {
                        let key = |fs: &[Vec<i64>]| -> Result<String> {
                            let mut p = GroupLaurentPoly::one(rs);
                            for f in fs {
                                p = p.mul(&character(rs, &Weight::new(f.clone()))?)?;
                            }
                            Ok(p.canonical_key())
                        };
                        if key(prev)? == key(&factors)? {
                            out.push(collision(ctx, Check::Tensor, json!({
                                "multiset_1": prev,
                                "multiset_2": factors,
                            })));
                        }
                    }
                } else {
                    t_seen.insert(dg, factors);
                }
            }
            _ => {}
        }
    }
    Ok(out)
}

fn collision(ctx: &Ctx, check: Check, detail: Value) -> Record {
    Record {
        schema: SCHEMA.into(),
        kind: "collision".into(),
        rs: ctx.rs.name().to_string(),
        check,
        item: "collision".into(),
        coords: None,
        verdict: Outcome::Fail,
        detail,
        ms: None,
    }
}

enum Sink {
    Memory,
    Stdout,
    File(File),
}

impl Sink {
    fn write_line(&mut self, line: &str) -> Result<()> {
        match self {
            Sink::Memory => Ok(()),
            Sink::Stdout => {
                let mut out = std::io::stdout().lock();
                writeln!(out, "{line}")?;
                out.flush()?;
                Ok(())
            }
            Sink::File(f) => {
                writeln!(f, "{line}")?;
                f.flush()?;
                Ok(())
            }
        }
    }
}

/// Reads completed records for `rs` from an existing journal and rewrites
/// the file without its trailing summary and collision lines.
fn load_journal(path: &Path, rs_name: &str) -> Result<Vec<Record>> {
    let f = File::open(path)?;
    let mut keep = Vec::new();
    for line in BufReader::new(f).lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let Ok(rec) = serde_json::from_str::<Record>(&line) else {
            continue;
        };
        if rec.schema == SCHEMA && rec.kind == "record" && rec.rs == rs_name {
            keep.push(rec);
        }
    }
    let mut f = File::create(path)?;
    for r in &keep {
        writeln!(f, "{}", serde_json::to_string(r)?)?;
    }
    Ok(keep)
}

fn csv_row(r: &Record) -> [String; 5] {
    let coords = match &r.coords {
        Some(c) => c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "),
        None => r.item.clone(),
    };
    [
        r.rs.clone(),
        coords,
        r.check.name().to_string(),
        r.verdict.name().to_string(),
        r.ms.map(|m| m.to_string()).unwrap_or_default(),
    ]
}

/// Runs every configured check and returns the summary. Records are written
/// in enumeration order; with a JSON-lines file, completed records found in
/// the file are reused.
pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepSummary> {
    let started = Instant::now();
    let rs = cfg.validate()?;
    let ctx = Ctx {
        rs: rs.clone(),
        cfg: cfg.clone(),
    };
    let mut work: Vec<(Check, Item)> = Vec::new();
    for &check in &cfg.checks {
        for item in items_for(check, &rs, cfg) {
            work.push((check, item));
        }
    }

    let to_stdout = cfg.output_path.as_deref() == Some(Path::new("-"));
    let mut done: Vec<Record> = Vec::new();
    let mut sink = match &cfg.output_path {
        None => Sink::Memory,
        Some(_) if to_stdout => Sink::Stdout,
        Some(p) => {
            if cfg.format == OutputFormat::Jsonl && p.exists() {
                done = load_journal(p, rs.name())?;
                Sink::File(OpenOptions::new().append(true).open(p)?)
            } else {
                Sink::File(File::create(p)?)
            }
        }
    };
    let resumed = done.len();
    let mut finished: HashMap<(Check, String), Record> = done
        .into_iter()
        .map(|r| ((r.check, r.item.clone()), r))
        .collect();
    let pending: Vec<&(Check, Item)> = work
        .iter()
        .filter(|(c, it)| !finished.contains_key(&(*c, it.label())))
        .collect();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs.max(1))
        .build()
        .map_err(|e| Error::Internal(e.to_string()))?;
    let chunk = (cfg.jobs.max(1) * 4).max(8);
    let mut csv_rows: Vec<[String; 5]> = Vec::new();
    for batch in pending.chunks(chunk) {
        let recs: Vec<Record> = pool.install(|| {
            batch
                .par_iter()
                .map(|(c, it)| run_item(&ctx, *c, it))
                .collect()
        });
        for r in recs {
            match cfg.format {
                OutputFormat::Jsonl => sink.write_line(&serde_json::to_string(&r)?)?,
                OutputFormat::Csv => csv_rows.push(csv_row(&r)),
            }
            finished.insert((r.check, r.item.clone()), r);
        }
    }

    let ordered: Vec<Record> = work
        .iter()
        .filter_map(|(c, it)| finished.remove(&(*c, it.label())))
        .collect();
    let extra = collisions(&ctx, &ordered)?;
    for r in &extra {
        match cfg.format {
            OutputFormat::Jsonl => sink.write_line(&serde_json::to_string(r)?)?,
            OutputFormat::Csv => csv_rows.push(csv_row(r)),
        }
    }

    let mut counts: BTreeMap<String, BTreeMap<String, usize>> = BTreeMap::new();
    let mut failures = Vec::new();
    let mut unresolved = Vec::new();
    let mut nmfg = Vec::new();
    for r in ordered.iter().chain(extra.iter()) {
        if r.kind == "record" {
            *counts
                .entry(r.check.name().to_string())
                .or_default()
                .entry(r.verdict.name().to_string())
                .or_default() += 1;
        } else {
            *counts
                .entry(r.check.name().to_string())
                .or_default()
                .entry("collision".to_string())
                .or_default() += 1;
        }
        match r.verdict {
            Outcome::Fail => failures.push(r.clone()),
            Outcome::Unresolved => unresolved.push(r.clone()),
            _ => {}
        }
        if r.check == Check::Irreducibility && r.detail["nmfg"].as_bool() == Some(true) {
            nmfg.push(r.coords.clone().unwrap_or_default());
        }
    }
    let summary = SweepSummary {
        schema: SCHEMA.into(),
        kind: "summary".into(),
        rs: rs.name().to_string(),
        bound: cfg.coord_bound,
        checks: cfg.checks.clone(),
        seed: cfg.seed,
        counts,
        failures,
        unresolved,
        nmfg_flagged: nmfg,
        wall_time_ms: cfg.timings.then(|| started.elapsed().as_millis() as u64),
        resumed,
    };
    match cfg.format {
        OutputFormat::Jsonl => sink.write_line(&serde_json::to_string(&summary)?)?,
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["rs", "coords", "check", "verdict", "ms"])
                .map_err(|e| Error::Io(e.to_string()))?;
            for row in &csv_rows {
                w.write_record(row).map_err(|e| Error::Io(e.to_string()))?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
            let text = String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))?;
            for line in text.lines() {
                sink.write_line(line)?;
            }
        }
    }
    Ok(summary)
}

fn single(rs_name: &str, bound: i64, check: Check, jobs: usize) -> Result<SweepSummary> {
    let mut cfg = SweepConfig::new(rs_name, bound, &[check]);
    cfg.jobs = jobs;
    run_sweep(&cfg)
}

pub fn sweep_irreducibility(cfg: &SweepConfig) -> Result<SweepSummary> {
    run_sweep(&SweepConfig {
        checks: vec![Check::Irreducibility],
        ..cfg.clone()
    })
}

pub fn sweep_uniqueness(cfg: &SweepConfig) -> Result<SweepSummary> {
    run_sweep(&SweepConfig {
        checks: vec![Check::Uniqueness],
        ..cfg.clone()
    })
}

pub fn sweep_divisibility(cfg: &SweepConfig) -> Result<SweepSummary> {
    run_sweep(&SweepConfig {
        checks: vec![Check::Divisibility, Check::DenominatorIdentity, Check::Separability],
        ..cfg.clone()
    })
}

pub fn sweep_tensor(cfg: &SweepConfig) -> Result<SweepSummary> {
    run_sweep(&SweepConfig {
        checks: vec![Check::Tensor],
        ..cfg.clone()
    })
}

/// One check over `rs_name` with default settings, in memory.
pub fn quick_sweep(rs_name: &str, bound: i64, check: Check) -> Result<SweepSummary> {
    single(rs_name, bound, check, 1)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CharacterOutput {
    pub rs: String,
    pub highest_weight: Vec<i64>,
    pub dimension: String,
    pub terms: Vec<crate::grouplaurent::TermRecord>,
}

pub fn character_output(rs: &Arc<RootSystem>, hw: &Weight) -> Result<CharacterOutput> {
    let ch = character(rs, hw)?;
    Ok(CharacterOutput {
        rs: rs.name().to_string(),
        highest_weight: hw.to_vec(),
        dimension: dimension(rs, hw)?.to_string(),
        terms: ch.records(),
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CFactorOutput {
    #[serde(flatten)]
    pub c_lambda: CLambdaJson,
    pub basis: Basis,
    pub polynomial: String,
    pub shift: Vec<i64>,
    pub report: FactorReport,
}

pub fn cfactor(
    rs: &Arc<RootSystem>,
    lambda: &Weight,
    basis: Option<Basis>,
    cfg: &FactorConfig,
) -> Result<CFactorOutput> {
    let res = big_d_and_c(rs, lambda)?;
    let basis = basis.unwrap_or_else(|| default_basis(rs));
    let p = laurent_to_poly(&res.c, basis)?;
    let report = analyze(&p, &format!("C{lambda}"), cfg);
    Ok(CFactorOutput {
        c_lambda: res.to_json(),
        basis,
        polynomial: p.to_string(),
        shift: p.shift().to_vec(),
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_order() {
        let w = regular_weights(2, 2);
        let v: Vec<Vec<i64>> = w.iter().map(|x| x.to_vec()).collect();
        assert_eq!(v, vec![vec![1, 1], vec![1, 2], vec![2, 1], vec![2, 2]]);
        assert_eq!(nontrivial_weights(1, 3).len(), 3);
        assert_eq!(multisets(&[1, 2, 3], 2).len(), 3 + 6);
    }

    #[test]
    fn check_names_round_trip() {
        for c in Check::ALL {
            assert_eq!(Check::parse(c.name()).unwrap(), c);
        }
        assert!(Check::parse_list("irreducibility,bogus").is_err());
        assert_eq!(Check::parse_list("all").unwrap().len(), 7);
    }

    #[test]
    fn a1_irreducibility_skips_everything() {
        let s = quick_sweep("A1", 6, Check::Irreducibility).unwrap();
        assert_eq!(s.count(Check::Irreducibility, Outcome::SkippedByTheorem), 6);
        assert_eq!(s.count(Check::Irreducibility, Outcome::Pass), 0);
        assert!(!s.has_failures());
    }

    #[test]
    fn a2_small_sweep_passes() {
        let mut cfg = SweepConfig::new("A2", 3, &Check::ALL);
        cfg.tensor_arity = 2;
        cfg.coord_bound = 2;
        let s = run_sweep(&cfg).unwrap();
        assert!(!s.has_failures(), "{:?}", s.failures);
        assert!(s.count(Check::Irreducibility, Outcome::Pass) > 0);
    }

    #[test]
    fn cfactor_example() {
        let rs = Arc::new(RootSystem::parse("A2").unwrap());
        let out = cfactor(&rs, &Weight::new(vec![2, 1]), None, &FactorConfig::default()).unwrap();
        assert_eq!(out.report.verdict, Verdict::AbsolutelyIrreducible);
        assert_eq!(out.polynomial, "x1 + x2 + x3");
    }
}
