//! Dense univariate polynomials over `F_p`, `p < 2^32`, low degree first.

use num_bigint::BigUint;
use num_traits::One;
use rand::Rng;

pub type Zp = Vec<u64>;

pub fn inv(a: u64, p: u64) -> u64 {
    super::poly::pow_mod(a, p - 2, p)
}

pub fn trim(mut a: Zp) -> Zp {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn deg(a: &Zp) -> isize {
    a.len() as isize - 1
}

pub fn add(a: &Zp, b: &Zp, p: u64) -> Zp {
    let n = a.len().max(b.len());
    let mut out = vec![0; n];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = (x + y) % p;
    }
    trim(out)
}

pub fn sub(a: &Zp, b: &Zp, p: u64) -> Zp {
    let n = a.len().max(b.len());
    let mut out = vec![0; n];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = (x + p - y) % p;
    }
    trim(out)
}

pub fn scale(a: &Zp, k: u64, p: u64) -> Zp {
    trim(a.iter().map(|&x| x * k % p).collect())
}

pub fn mul(a: &Zp, b: &Zp, p: u64) -> Zp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

pub fn monic(a: &Zp, p: u64) -> Zp {
    match a.last() {
        None => Vec::new(),
        Some(&l) => scale(a, inv(l, p), p),
    }
}

pub fn divrem(a: &Zp, b: &Zp, p: u64) -> (Zp, Zp) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut r = a.clone();
    if r.len() < b.len() {
        return (Vec::new(), trim(r));
    }
    let lb = inv(*b.last().unwrap(), p);
    let db = b.len() - 1;
    let mut q = vec![0u64; r.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db] * lb % p;
        q[k] = c;
        if c == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            r[k + j] = (r[k + j] + p - c * y % p) % p;
        }
    }
    r.truncate(db);
    (trim(q), trim(r))
}

pub fn rem(a: &Zp, b: &Zp, p: u64) -> Zp {
    divrem(a, b, p).1
}

pub fn gcd(a: &Zp, b: &Zp, p: u64) -> Zp {
    let (mut x, mut y) = (trim(a.clone()), trim(b.clone()));
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    monic(&x, p)
}

/// Returns `(g, s, t)` with `s·a + t·b = g` monic.
pub fn ext_gcd(a: &Zp, b: &Zp, p: u64) -> (Zp, Zp, Zp) {
    let (mut r0, mut r1) = (trim(a.clone()), trim(b.clone()));
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p);
        let s2 = sub(&s0, &mul(&q, &s1, p), p);
        let t2 = sub(&t0, &mul(&q, &t1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    let l = inv(*r0.last().unwrap(), p);
    (scale(&r0, l, p), scale(&s0, l, p), scale(&t0, l, p))
}

pub fn derivative(a: &Zp, p: u64) -> Zp {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| (i as u64 % p) * c % p)
            .collect(),
    )
}

pub fn powmod(base: &Zp, mut e: u128, m: &Zp, p: u64) -> Zp {
    let mut r = vec![1u64];
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            r = rem(&mul(&r, &b, p), m, p);
        }
        b = rem(&mul(&b, &b, p), m, p);
        e >>= 1;
    }
    r
}

pub fn powmod_big(base: &Zp, e: &BigUint, m: &Zp, p: u64) -> Zp {
    let mut r = vec![1u64];
    let b = rem(base, m, p);
    for i in (0..e.bits()).rev() {
        r = rem(&mul(&r, &r, p), m, p);
        if e.bit(i) {
            r = rem(&mul(&r, &b, p), m, p);
        }
    }
    r
}

pub fn is_squarefree(a: &Zp, p: u64) -> bool {
    let d = derivative(a, p);
    if d.is_empty() {
        return a.len() <= 1;
    }
    gcd(a, &d, p).len() == 1
}

/// Distinct-degree factorization of a monic squarefree polynomial.
fn ddf(f: &Zp, p: u64) -> Vec<(Zp, usize)> {
    let mut out = Vec::new();
    let mut f = f.clone();
    let x = vec![0u64, 1];
    let mut h = x.clone();
    let mut i = 0;
    while deg(&f) >= 2 * (i as isize + 1) {
        i += 1;
        h = powmod(&h, p as u128, &f, p);
        let g = gcd(&f, &sub(&h, &x, p), p);
        if g.len() > 1 {
            f = divrem(&f, &g, p).0;
            h = rem(&h, &f, p);
            out.push((g, i));
        }
    }
    if deg(&f) > 0 {
        let d = deg(&f) as usize;
        out.push((f, d));
    }
    out
}

/// Equal-degree splitting (Cantor-Zassenhaus), odd `p`.
fn edf<R: Rng>(f: &Zp, d: usize, p: u64, rng: &mut R) -> Vec<Zp> {
    let n = deg(f) as usize;
    if n == d {
        return vec![f.clone()];
    }
    loop {
        let a: Zp = trim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.len() < 2 {
            continue;
        }
        let e = (BigUint::from(p).pow(d as u32) - BigUint::one()) >> 1;
        let b = sub(&powmod_big(&a, &e, f, p), &vec![1], p);
        let g = gcd(f, &b, p);
        if g.len() > 1 && g.len() < f.len() {
            let h = divrem(f, &g, p).0;
            let mut out = edf(&g, d, p, rng);
            out.extend(edf(&monic(&h, p), d, p, rng));
            return out;
        }
    }
}

/// Monic irreducible factors of a squarefree polynomial of positive degree.
pub fn factor_squarefree<R: Rng>(f: &Zp, p: u64, rng: &mut R) -> Vec<Zp> {
    let f = monic(f, p);
    let mut out = Vec::new();
    for (g, d) in ddf(&f, p) {
        out.extend(edf(&g, d, p, rng));
    }
    out.sort();
    out
}

pub const PRIMES: &[u64] = &[
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
    101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191,
    193, 197, 199, 211, 223, 227, 229, 233, 239, 241, 251, 257, 263, 269, 271, 277, 281, 283,
];

/// Large primes for modular certificates.
pub const BIG_PRIMES: &[u64] = &[
    2147483647, 2147483629, 2147483587, 2147483579, 2147483563, 2147483549, 2147483543,
    2147483497, 2147483489, 2147483477,
];

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn factor_x4_minus_1_mod_5() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f = vec![4, 0, 0, 0, 1];
        let fs = factor_squarefree(&f, 5, &mut rng);
        assert_eq!(fs.len(), 4);
        let prod = fs.iter().fold(vec![1], |a, b| mul(&a, b, 5));
        assert_eq!(prod, f);
    }

    #[test]
    fn ext_gcd_bezout() {
        let p = 13;
        let a = vec![1, 2, 3];
        let b = vec![5, 1];
        let (g, s, t) = ext_gcd(&a, &b, p);
        assert_eq!(g, vec![1]);
        assert_eq!(add(&mul(&s, &a, p), &mul(&t, &b, p), p), vec![1]);
    }

    #[test]
    fn irreducible_quadratic() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let f = vec![1, 0, 1];
        assert_eq!(factor_squarefree(&f, 7, &mut rng).len(), 1);
        assert_eq!(factor_squarefree(&f, 13, &mut rng).len(), 2);
    }
}
