//! Dense univariate polynomials over `ℤ` and their factorization.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use super::zp::{self, Zp};

pub type UPoly = Vec<BigInt>;

pub fn trim(mut a: UPoly) -> UPoly {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

pub fn from_i64(c: &[i64]) -> UPoly {
    trim(c.iter().map(|&x| BigInt::from(x)).collect())
}

pub fn content(a: &UPoly) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Primitive part with positive leading coefficient.
pub fn primitive(a: &UPoly) -> UPoly {
    if a.is_empty() {
        return Vec::new();
    }
    let mut c = content(a);
    if a.last().unwrap().is_negative() {
        c = -c;
    }
    a.iter().map(|x| x / &c).collect()
}

pub fn mul(a: &UPoly, b: &UPoly) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

pub fn sub(a: &UPoly, b: &UPoly) -> UPoly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| {
                a.get(i).cloned().unwrap_or_default() - b.get(i).cloned().unwrap_or_default()
            })
            .collect(),
    )
}

pub fn derivative(a: &UPoly) -> UPoly {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect(),
    )
}

/// Exact quotient over `ℤ`, or `None`.
pub fn exact_div(a: &UPoly, b: &UPoly) -> Option<UPoly> {
    let b = trim(b.clone());
    let mut r = trim(a.clone());
    if b.is_empty() {
        return None;
    }
    if r.is_empty() {
        return Some(Vec::new());
    }
    if r.len() < b.len() {
        return None;
    }
    let db = b.len() - 1;
    let lb = b.last().unwrap().clone();
    let mut q = vec![BigInt::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let (c, rm) = r[k + db].div_rem(&lb);
        if !rm.is_zero() {
            return None;
        }
        if c.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            r[k + j] -= &c * y;
        }
        q[k] = c;
    }
    if r.iter().all(|c| c.is_zero()) {
        Some(trim(q))
    } else {
        None
    }
}

fn prem(a: &UPoly, b: &UPoly) -> UPoly {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lb = b.last().unwrap().clone();
    while r.len() > db {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - 1 - db;
        for c in r.iter_mut() {
            *c *= &lb;
        }
        for (j, y) in b.iter().enumerate() {
            r[shift + j] -= &lr * y;
        }
        r = trim(r);
    }
    r
}

/// Primitive gcd with positive leading coefficient (times the gcd of contents).
pub fn gcd(a: &UPoly, b: &UPoly) -> UPoly {
    let (a, b) = (trim(a.clone()), trim(b.clone()));
    if a.is_empty() {
        return primitive_keep(&b);
    }
    if b.is_empty() {
        return primitive_keep(&a);
    }
    let c = content(&a).gcd(&content(&b));
    let (mut x, mut y) = (primitive(&a), primitive(&b));
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while y.len() > 1 {
        let r = prem(&x, &y);
        x = y;
        y = if r.is_empty() { r } else { primitive(&r) };
    }
    let g = if y.is_empty() { x } else { vec![BigInt::one()] };
    g.into_iter().map(|v| v * &c).collect()
}

fn primitive_keep(a: &UPoly) -> UPoly {
    if a.last().is_some_and(|c| c.is_negative()) {
        a.iter().map(|c| -c).collect()
    } else {
        a.clone()
    }
}

/// Yun's squarefree decomposition of a primitive polynomial: pairs
/// `(g_i, i)` with `f = Π g_i^i`, each `g_i` squarefree and non-constant.
pub fn squarefree_decomposition(f: &UPoly) -> Vec<(UPoly, u32)> {
    let f = primitive(f);
    if f.len() <= 1 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let fp = derivative(&f);
    let a0 = gcd(&f, &fp);
    let mut b = exact_div(&f, &a0).unwrap();
    let mut c = exact_div(&fp, &a0).unwrap();
    let mut d = sub(&c, &derivative(&b));
    let mut i = 1;
    loop {
        let a = gcd(&b, &d);
        if a.len() > 1 {
            out.push((primitive(&a), i));
        }
        b = exact_div(&b, &a).unwrap();
        if b.len() <= 1 {
            break;
        }
        c = exact_div(&d, &a).unwrap();
        d = sub(&c, &derivative(&b));
        i += 1;
    }
    out
}

fn to_zp(a: &UPoly, p: u64) -> Zp {
    let pb = BigInt::from(p);
    zp::trim(
        a.iter()
            .map(|c| c.mod_floor(&pb).to_u64().unwrap())
            .collect(),
    )
}

fn from_zp(a: &Zp) -> UPoly {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

fn reduce_mod(a: &UPoly, m: &BigInt) -> UPoly {
    trim(a.iter().map(|c| c.mod_floor(m)).collect())
}

fn symmetric(a: &UPoly, m: &BigInt) -> UPoly {
    let half = m / 2;
    trim(
        a.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

/// Lifts `f ≡ g·h (mod p)` with `g` monic to a factorization modulo `p^k`.
fn hensel_pair(f: &UPoly, g: &Zp, h: &Zp, p: u64, k: u32) -> (UPoly, UPoly) {
    let (one, s, t) = zp::ext_gcd(g, h, p);
    debug_assert_eq!(one, vec![1]);
    let pb = BigInt::from(p);
    let mut gz = from_zp(g);
    let mut hz = from_zp(h);
    let mut pj = pb.clone();
    for _ in 1..k {
        let pj1 = &pj * &pb;
        let e = sub(f, &mul(&gz, &hz));
        let e = reduce_mod(&e, &pj1);
        let e: UPoly = e.iter().map(|c| c / &pj).collect();
        let ep = to_zp(&e, p);
        let (q, dg) = zp::divrem(&zp::mul(&t, &ep, p), g, p);
        let dh = zp::add(&zp::mul(&s, &ep, p), &zp::mul(&q, h, p), p);
        gz = add_scaled(&gz, &from_zp(&dg), &pj);
        hz = add_scaled(&hz, &from_zp(&dh), &pj);
        gz = reduce_mod(&gz, &pj1);
        hz = reduce_mod(&hz, &pj1);
        pj = pj1;
    }
    (gz, hz)
}

fn add_scaled(a: &UPoly, b: &UPoly, k: &BigInt) -> UPoly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| {
                a.get(i).cloned().unwrap_or_default() + k * b.get(i).cloned().unwrap_or_default()
            })
            .collect(),
    )
}

/// Lifts the monic modular factors of `f` to monic factors modulo `p^k`.
fn hensel_multi(f: &UPoly, factors: &[Zp], p: u64, k: u32) -> Vec<UPoly> {
    let mut out = Vec::new();
    let mut cur = f.clone();
    let lc = f.last().unwrap().clone();
    let pb = BigInt::from(p);
    let pk = pb.pow(k);
    for i in 0..factors.len() {
        if i + 1 == factors.len() {
            let inv_lc = mod_inverse(cur.last().unwrap(), &pk);
            out.push(reduce_mod(&cur.iter().map(|c| c * &inv_lc).collect(), &pk));
            break;
        }
        let rest = factors[i + 1..]
            .iter()
            .fold(vec![lc.mod_floor(&pb).to_u64().unwrap()], |a, b| {
                zp::mul(&a, b, p)
            });
        let (g, h) = hensel_pair(&cur, &factors[i], &rest, p, k);
        out.push(g);
        cur = h;
    }
    out
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    e.x.mod_floor(m)
}

fn norm_bound(f: &UPoly) -> BigInt {
    let s: BigInt = f.iter().map(|c| c * c).sum();
    s.sqrt() + 1
}

/// Irreducible factors over `ℤ` of a primitive squarefree polynomial with
/// positive leading coefficient. Returns `None` when recombination would
/// exceed `subset_cap` candidate tests.
pub fn factor_squarefree<R: Rng>(f: &UPoly, rng: &mut R, subset_cap: u64) -> Option<Vec<UPoly>> {
    let f = primitive(f);
    let n = f.len() - 1;
    if n <= 1 {
        return Some(vec![f]);
    }
    let lc = f.last().unwrap().clone();
    // choose a prime with few modular factors
    let mut best: Option<(u64, Vec<Zp>)> = None;
    let mut tried = 0;
    for &p in zp::PRIMES {
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = to_zp(&f, p);
        if fp.len() != f.len() || !zp::is_squarefree(&fp, p) {
            continue;
        }
        let fs = zp::factor_squarefree(&fp, p, rng);
        if fs.len() == 1 {
            return Some(vec![f]);
        }
        if best.as_ref().is_none_or(|(_, b)| fs.len() < b.len()) {
            best = Some((p, fs));
        }
        tried += 1;
        if tried >= 5 {
            break;
        }
    }
    let (p, modf) = best?;
    let bound = BigInt::from(2) * &lc.abs() * (BigInt::one() << n) * norm_bound(&f) + 1;
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut pk = pb.clone();
    while pk <= bound {
        pk *= &pb;
        k += 1;
    }
    let lifted = hensel_multi(&f, &modf, p, k);

    let mut remaining: Vec<UPoly> = lifted;
    let mut cur = f.clone();
    let mut out = Vec::new();
    let mut size = 1;
    let mut tests = 0u64;
    while 2 * size <= remaining.len() {
        let mut found = false;
        let r = remaining.len();
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            tests += 1;
            if tests > subset_cap {
                return None;
            }
            let lcc = cur.last().unwrap().clone();
            let mut g = vec![lcc.clone()];
            for &i in &idx {
                g = reduce_mod(&mul(&g, &remaining[i]), &pk);
            }
            let g = primitive(&symmetric(&g, &pk));
            if let Some(q) = exact_div(&cur, &g) {
                out.push(g);
                cur = q;
                let mut k = 0;
                remaining.retain(|_| {
                    let keep = !idx.contains(&k);
                    k += 1;
                    keep
                });
                found = true;
                break;
            }
            if !next_combination(&mut idx, r) {
                break;
            }
        }
        if !found {
            size += 1;
        }
    }
    out.push(primitive(&cur));
    Some(out)
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

/// Complete factorization over `ℤ`: `(content, [(factor, multiplicity)])`.
pub fn factor<R: Rng>(
    f: &UPoly,
    rng: &mut R,
    subset_cap: u64,
) -> Option<(BigInt, Vec<(UPoly, u32)>)> {
    let f = trim(f.clone());
    if f.is_empty() {
        return Some((BigInt::zero(), Vec::new()));
    }
    let mut c = content(&f);
    if f.last().unwrap().is_negative() {
        c = -c;
    }
    let mut out = Vec::new();
    // x-power part
    let z = f.iter().take_while(|x| x.is_zero()).count();
    if z > 0 {
        out.push((vec![BigInt::zero(), BigInt::one()], z as u32));
    }
    let g: UPoly = f[z..].to_vec();
    for (h, m) in squarefree_decomposition(&g) {
        for q in factor_squarefree(&h, rng, subset_cap)? {
            out.push((q, m));
        }
    }
    out.sort();
    Some((c, out))
}
