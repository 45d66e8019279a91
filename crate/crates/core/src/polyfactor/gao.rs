//! Number of absolutely irreducible factors by Gao's partial-differential
//! equation method on a bivariate specialization.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;
use serde::{Deserialize, Serialize};

use super::linalg::{rank_bareiss, rank_mod_p};
use super::poly::OrdinaryPoly;
use super::zp::{self, BIG_PRIMES};
use crate::error::{Error, Result};

/// Dense bivariate polynomial over `F_p`: `c[i][j]` is the coefficient of `x^i y^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Bi {
    c: Vec<Vec<u64>>,
}

impl Bi {
    fn zero(dx: usize, dy: usize) -> Self {
        Bi {
            c: vec![vec![0; dy + 1]; dx + 1],
        }
    }

    fn dx(&self) -> usize {
        self.c.len() - 1
    }

    fn dy(&self) -> usize {
        self.c[0].len() - 1
    }

    fn mul(&self, o: &Bi, p: u64) -> Bi {
        let mut out = Bi::zero(self.dx() + o.dx(), self.dy() + o.dy());
        for (i, row) in self.c.iter().enumerate() {
            for (j, &a) in row.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                for (k, orow) in o.c.iter().enumerate() {
                    let dst = &mut out.c[i + k];
                    for (l, &b) in orow.iter().enumerate() {
                        if b != 0 {
                            dst[j + l] = (dst[j + l] + a * b) % p;
                        }
                    }
                }
            }
        }
        out
    }

    /// Drops zero rows and columns at the top.
    fn trimmed(&self) -> Bi {
        let dx = (0..=self.dx())
            .rev()
            .find(|&i| self.c[i].iter().any(|&v| v != 0))
            .unwrap_or(0);
        let dy = (0..=self.dy())
            .rev()
            .find(|&j| self.c.iter().any(|r| r[j] != 0))
            .unwrap_or(0);
        Bi {
            c: self.c[..=dx].iter().map(|r| r[..=dy].to_vec()).collect(),
        }
    }

    fn total_degree(&self) -> usize {
        let mut d = 0;
        for (i, row) in self.c.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v != 0 {
                    d = d.max(i + j);
                }
            }
        }
        d
    }

    fn eval_y(&self, y: u64, p: u64) -> zp::Zp {
        zp::trim(
            self.c
                .iter()
                .map(|row| row.iter().rev().fold(0u64, |acc, &v| (acc * y + v) % p))
                .collect(),
        )
    }
}

/// An affine substitution `x_i ↦ a_i x + b_i y + c_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Substitution {
    pub a: Vec<i64>,
    pub b: Vec<i64>,
    pub c: Vec<i64>,
}

impl Substitution {
    fn random<R: Rng>(n: usize, rng: &mut R) -> Self {
        let mut draw = || (0..n).map(|_| rng.gen_range(-7..=7)).collect::<Vec<i64>>();
        let (a, b, c) = (draw(), draw(), draw());
        Substitution { a, b, c }
    }

    /// Invertible affine change of two variables.
    fn invertible<R: Rng>(rng: &mut R) -> Self {
        loop {
            let mut draw = || vec![rng.gen_range(-7..=7), rng.gen_range(-7..=7)];
            let (a, b, c) = (draw(), draw(), draw());
            if a[0] * b[1] != a[1] * b[0] {
                return Substitution { a, b, c };
            }
        }
    }

    /// Pure translation in two variables, optionally swapping their roles.
    fn translation<R: Rng>(swap: bool, rng: &mut R) -> Self {
        let (a, b) = if swap {
            (vec![0, 1], vec![1, 0])
        } else {
            (vec![1, 0], vec![0, 1])
        };
        Substitution {
            a,
            b,
            c: vec![rng.gen_range(-7..=7), rng.gen_range(-7..=7)],
        }
    }

    fn apply_mod_p(&self, f: &OrdinaryPoly, p: u64) -> Bi {
        let n = f.nvars();
        let degs = f.degrees();
        let m = |v: i64| v.rem_euclid(p as i64) as u64;
        let mut powers: Vec<Vec<Bi>> = Vec::with_capacity(n);
        for i in 0..n {
            let mut lin = Bi::zero(1, 1);
            lin.c[0][0] = m(self.c[i]);
            lin.c[1][0] = m(self.a[i]);
            lin.c[0][1] = m(self.b[i]);
            let mut pw = vec![{
                let mut one = Bi::zero(0, 0);
                one.c[0][0] = 1;
                one
            }];
            for k in 1..=degs[i] as usize {
                let next = pw[k - 1].mul(&lin, p).trimmed();
                pw.push(next);
            }
            powers.push(pw);
        }
        let d = f.total_degree();
        let mut out = Bi::zero(d, d);
        let pb = BigInt::from(p);
        for (mono, coeff) in f.terms() {
            let cm = coeff.mod_floor(&pb).to_u64().unwrap();
            if cm == 0 {
                continue;
            }
            let mut acc = Bi::zero(0, 0);
            acc.c[0][0] = cm;
            for (i, &e) in mono.iter().enumerate() {
                if e > 0 {
                    acc = acc.mul(&powers[i][e as usize], p);
                }
            }
            for (i, row) in acc.c.iter().enumerate() {
                for (j, &v) in row.iter().enumerate() {
                    if v != 0 {
                        out.c[i][j] = (out.c[i][j] + v) % p;
                    }
                }
            }
        }
        out.trimmed()
    }

    fn apply_exact(&self, f: &OrdinaryPoly) -> OrdinaryPoly {
        let n = f.nvars();
        let x = OrdinaryPoly::var(2, 0);
        let y = OrdinaryPoly::var(2, 1);
        let lins: Vec<OrdinaryPoly> = (0..n)
            .map(|i| {
                x.scalar_mul(&BigInt::from(self.a[i]))
                    .add(&y.scalar_mul(&BigInt::from(self.b[i])))
                    .add(&OrdinaryPoly::constant(2, self.c[i]))
            })
            .collect();
        let degs = f.degrees();
        let powers: Vec<Vec<OrdinaryPoly>> = (0..n)
            .map(|i| {
                let mut pw = vec![OrdinaryPoly::constant(2, 1)];
                for k in 1..=degs[i] as usize {
                    let next = pw[k - 1].mul(&lins[i]);
                    pw.push(next);
                }
                pw
            })
            .collect();
        let mut out = OrdinaryPoly::zero(2);
        for (mono, coeff) in f.terms() {
            let mut acc = OrdinaryPoly::constant(2, coeff.clone());
            for (i, &e) in mono.iter().enumerate() {
                if e > 0 {
                    acc = acc.mul(&powers[i][e as usize]);
                }
            }
            out = out.add(&acc);
        }
        out
    }
}

/// Checks `gcd(F, ∂F/∂x) = 1` modulo `p`: the specialization at a random
/// `y` keeps the `x`-degree and is squarefree, and the `x`-coefficients
/// have no common factor in `y`.
fn gao_condition<R: Rng>(f: &Bi, p: u64, rng: &mut R) -> bool {
    let m = f.dx();
    if m == 0 {
        return false;
    }
    let mut ok = false;
    for _ in 0..4 {
        let y0 = rng.gen_range(1..p);
        let u = f.eval_y(y0, p);
        if u.len() == m + 1 && zp::is_squarefree(&u, p) {
            ok = true;
            break;
        }
    }
    if !ok {
        return false;
    }
    let mut g: zp::Zp = Vec::new();
    for row in &f.c {
        g = zp::gcd(&g, &zp::trim(row.clone()), p);
        if g.len() == 1 {
            return true;
        }
    }
    g.len() == 1
}

/// Column layout: unknown coefficients of `g` (deg ≤ (m−1, n)) then of `h`
/// (deg ≤ (m, n−1)). Row `(a, b)` collects the coefficient of `x^a y^b` in
/// `f g_y − g f_y − f h_x + h f_x`.
fn gao_columns(coeffs: &[(usize, usize, i128)], m: usize, n: usize) -> Vec<Vec<(usize, i128)>> {
    let row = |a: usize, b: usize| a * (2 * n) + b;
    let mut cols = Vec::new();
    for k in 0..m {
        for l in 0..=n {
            let mut col = Vec::new();
            for &(i, j, c) in coeffs {
                let w = l as i128 - j as i128;
                if w != 0 {
                    col.push((row(i + k, j + l - 1), c * w));
                }
            }
            cols.push(col);
        }
    }
    for k in 0..=m {
        for l in 0..n {
            let mut col = Vec::new();
            for &(i, j, c) in coeffs {
                let w = i as i128 - k as i128;
                if w != 0 {
                    col.push((row(i + k - 1, j + l), c * w));
                }
            }
            cols.push(col);
        }
    }
    cols
}

fn kernel_dim_mod_p(f: &Bi, p: u64) -> (usize, usize) {
    let (m, n) = (f.dx(), f.dy());
    let mut coeffs = Vec::new();
    for (i, row) in f.c.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            if v != 0 {
                coeffs.push((i, j, v as i128));
            }
        }
    }
    let cols = gao_columns(&coeffs, m, n);
    let ncols = cols.len();
    // rank of the transpose: one row per unknown
    let nrows = 4 * m * n;
    let mat: Vec<Vec<u64>> = cols
        .into_iter()
        .map(|col| {
            let mut r = vec![0u64; nrows];
            for (idx, v) in col {
                r[idx] = (r[idx] + v.rem_euclid(p as i128) as u64) % p;
            }
            r
        })
        .collect();
    (ncols - rank_mod_p(mat, p), ncols)
}

fn kernel_dim_exact(f: &OrdinaryPoly) -> usize {
    let (m, n) = (f.degree_in(0) as usize, f.degree_in(1) as usize);
    let coeffs: Vec<(usize, usize, BigInt)> = f
        .terms()
        .map(|(mono, c)| (mono[0] as usize, mono[1] as usize, c.clone()))
        .collect();
    let nrows = 4 * m * n;
    let row = |a: usize, b: usize| a * (2 * n) + b;
    let mut mat = Vec::new();
    for k in 0..m {
        for l in 0..=n {
            let mut r = vec![BigInt::default(); nrows];
            for (i, j, c) in &coeffs {
                let w = l as i64 - *j as i64;
                if w != 0 {
                    r[row(i + k, j + l - 1)] += c * w;
                }
            }
            mat.push(r);
        }
    }
    for k in 0..=m {
        for l in 0..n {
            let mut r = vec![BigInt::default(); nrows];
            for (i, j, c) in &coeffs {
                let w = *i as i64 - k as i64;
                if w != 0 {
                    r[row(i + k - 1, j + l)] += c * w;
                }
            }
            mat.push(r);
        }
    }
    let ncols = mat.len();
    ncols - rank_bareiss(mat)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaoConfig {
    pub trials: usize,
    pub retry_cap: usize,
    /// Largest system (unknown count) solved by exact elimination when the
    /// modular count exceeds one.
    pub exact_cap: usize,
    pub seed: u64,
}

impl Default for GaoConfig {
    fn default() -> Self {
        GaoConfig {
            trials: 3,
            retry_cap: 12,
            exact_cap: 160,
            seed: 0x5eed,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountOutcome {
    pub count: usize,
    /// Specializations that produced the agreed count.
    pub trials: usize,
    /// Whether the count is exact rather than a modular upper bound.
    pub certified: bool,
    pub unknowns: usize,
    pub substitutions: Vec<Substitution>,
}

/// Kernel dimension of the bivariate system for a polynomial in at least two
/// active variables, which must be squarefree with no monomial factor.
pub(crate) fn count_multivariate(f: &OrdinaryPoly, cfg: &GaoConfig) -> Result<CountOutcome> {
    let n = f.nvars();
    let d = f.total_degree();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut history: Vec<(usize, Substitution, u64, usize)> = Vec::new();
    let mut attempts = 0;
    let mut swap = false;
    while attempts < cfg.retry_cap {
        attempts += 1;
        let p = BIG_PRIMES[rng.gen_range(0..BIG_PRIMES.len())];
        // translations keep the bidegree small; a factor in one variable
        // alone needs a genuine change of coordinates
        let sub = if n == 2 && attempts <= 2 {
            Substitution::translation(swap, &mut rng)
        } else if n == 2 {
            Substitution::invertible(&mut rng)
        } else {
            Substitution::random(n, &mut rng)
        };
        let fb = sub.apply_mod_p(f, p);
        if fb.total_degree() != d || !gao_condition(&fb, p, &mut rng) {
            swap = !swap;
            continue;
        }
        let (k, cols) = kernel_dim_mod_p(&fb, p);
        history.push((k, sub, p, cols));
        if history.len() >= cfg.trials {
            let last = &history[history.len() - cfg.trials..];
            if last.iter().all(|h| h.0 == last[0].0) {
                let count = last[0].0;
                let unknowns = last[0].3;
                let subs: Vec<Substitution> = last.iter().map(|h| h.1.clone()).collect();
                let mut outcome = CountOutcome {
                    count,
                    trials: cfg.trials,
                    certified: count == 1,
                    unknowns,
                    substitutions: subs,
                };
                if count > 1 && unknowns <= cfg.exact_cap {
                    let fz = outcome.substitutions[0].apply_exact(f);
                    let exact = kernel_dim_exact(&fz);
                    outcome.count = exact;
                    outcome.certified = true;
                }
                return Ok(outcome);
            }
        }
    }
    if history.is_empty() {
        return Err(Error::NoAdmissibleSpecialization(attempts));
    }
    Err(Error::SpecializationsDisagree {
        attempts,
        counts: history.iter().map(|h| h.0).collect(),
    })
}
