//! Based simple root systems of types A–G.
//!
//! A [`RootSystem`] is built once from its Cartan matrix and is immutable
//! afterwards: positive roots, root lengths, the full Weyl group (as integer
//! matrices acting on fundamental-weight coordinates), the inverse Cartan
//! matrix and the duality constants `m(Φ)` and `ρ̃` are all precomputed.
//!
//! Conventions:
//! * `cartan[i][j] = <α_i*, α_j>`, so column `j` holds the coordinates of
//!   `α_j` in the fundamental-weight basis.
//! * Simple roots follow Bourbaki's numbering except for `B_r`, whose short
//!   simple root comes first. With that ordering `B2` and `C2` share one
//!   Cartan matrix `[[2,-2],[-1,2]]` with the short root in position 0.
//! * The shortest roots have squared length 2.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weight::Weight;

/// Default cap on `|W|`; admits A1..A4, B2..B3, C2..C3, D4, F4, G2.
pub const DEFAULT_WEYL_CAP: usize = 2000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::A,
        Family::B,
        Family::C,
        Family::D,
        Family::E,
        Family::F,
        Family::G,
    ];

    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    pub fn from_letter(c: char) -> Option<Family> {
        Family::ALL
            .into_iter()
            .find(|f| f.letter() == c.to_ascii_uppercase())
    }

    pub fn valid_rank(self, rank: usize) -> bool {
        match self {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RootLength {
    Short,
    Long,
}

/// An element of the Weyl group acting on fundamental-weight coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    rank: usize,
    matrix: Vec<i64>,
    sign: i8,
    length: u32,
}

impl WeylElement {
    /// Row-major `rank × rank` matrix.
    pub fn matrix(&self) -> &[i64] {
        &self.matrix
    }

    /// `ε(w) = (-1)^{l(w)}`.
    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn length(&self) -> u32 {
        self.length
    }

    pub fn apply(&self, w: &Weight) -> Weight {
        let n = self.rank;
        Weight::new((0..n).map(|i| {
            self.matrix[i * n..(i + 1) * n]
                .iter()
                .zip(w.coords())
                .map(|(a, b)| a * b)
                .sum::<i64>()
        }))
    }

    pub fn is_identity(&self) -> bool {
        let n = self.rank;
        (0..n).all(|i| (0..n).all(|j| self.matrix[i * n + j] == i64::from(i == j)))
    }

    pub fn is_minus_identity(&self) -> bool {
        let n = self.rank;
        (0..n).all(|i| (0..n).all(|j| self.matrix[i * n + j] == -i64::from(i == j)))
    }
}

fn mat_mul(n: usize, a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == 0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += aik * b[k * n + j];
            }
        }
    }
    out
}

/// Orthonormal-coordinate realization of the simple roots.
#[derive(Clone, Debug)]
pub struct Ambient {
    pub dim: usize,
    pub simple_roots: Vec<Vec<Rational64>>,
}

impl Ambient {
    fn inner(a: &[Rational64], b: &[Rational64]) -> Rational64 {
        a.iter().zip(b).map(|(x, y)| x * y).sum()
    }

    fn gram(&self) -> Vec<Vec<Rational64>> {
        let r = &self.simple_roots;
        r.iter()
            .map(|a| r.iter().map(|b| Self::inner(a, b)).collect())
            .collect()
    }

    /// Cartan matrix `<α_i*, α_j> = 2(α_i,α_j)/(α_i,α_i)` recomputed from the vectors.
    pub fn cartan(&self) -> Vec<Vec<Rational64>> {
        let g = self.gram();
        let n = g.len();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| Rational64::from_integer(2) * g[i][j] / g[i][i])
                    .collect()
            })
            .collect()
    }

    /// `<ω*_a, ω_b>` computed from the Gram matrix of the simple roots.
    pub fn pairing_w(&self, a: usize, b: usize) -> Rational64 {
        let g = self.gram();
        let inv = invert_rational(&g).expect("Gram matrix of simple roots is nonsingular");
        inv[a][b] * g[b][b] / Rational64::from_integer(2)
    }
}

fn invert_rational(m: &[Vec<Rational64>]) -> Option<Vec<Vec<Rational64>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational64>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    Rational64::one()
                } else {
                    Rational64::zero()
                }
            }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let p = a[col][col];
        for x in a[col].iter_mut() {
            *x /= p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(pivot_row) {
                    *x -= f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// A lattice-chain class of a dominant regular weight, relative to
/// `P* ⊃ P ⊃ m(Φ)P* ⊃ m(Φ)P ⊃ m(Φ)²P* ⊃ …`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeClass {
    pub i: u32,
    pub kind: LatticeKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LatticeKind {
    /// `λ ∈ m^i P \ m^{i+1} P*`
    #[serde(rename = "in_miP_not_mi1Pstar")]
    InMiPNotMi1PStar,
    /// `λ ∈ m^{i+1} P* \ m^{i+1} P`
    #[serde(rename = "in_mi1Pstar_not_mi1P")]
    InMi1PStarNotMi1P,
    #[serde(rename = "multiple_of_rho")]
    MultipleOfRho,
    #[serde(rename = "multiple_of_rho_tilde")]
    MultipleOfRhoTilde,
}

/// Maps a weight of `Φ` to its projection `μ^α` in the corner subsystem `Φ_α`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Projection {
    pub dropped: usize,
}

impl Projection {
    pub fn apply(&self, w: &Weight) -> Weight {
        w.without(self.dropped)
    }
}

pub struct RootSystem {
    family: Family,
    rank: usize,
    name: String,
    cartan: Vec<Vec<i64>>,
    simple_roots: Vec<Weight>,
    positive_roots: Vec<Weight>,
    positive_roots_simple: Vec<Vec<i64>>,
    root_lengths: Vec<RootLength>,
    simple_lengths: Vec<RootLength>,
    squared_lengths: Vec<i64>,
    m_phi: i64,
    weyl: Vec<WeylElement>,
    generators: Vec<WeylElement>,
    inv_cartan: Vec<Vec<Rational64>>,
    grade_weights: Vec<i64>,
    ambient: Option<Ambient>,
}

impl fmt::Debug for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RootSystem")
            .field("name", &self.name)
            .field("cartan", &self.cartan)
            .field("weyl_order", &self.weyl.len())
            .finish()
    }
}

impl PartialEq for RootSystem {
    fn eq(&self, other: &Self) -> bool {
        self.cartan == other.cartan
    }
}

impl Eq for RootSystem {}

impl fmt::Display for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// Canonical Cartan matrix for a family and rank.
pub fn canonical_cartan(family: Family, rank: usize) -> Result<Vec<Vec<i64>>> {
    if !family.valid_rank(rank) {
        return Err(Error::InvalidRootSystem {
            family: family.letter(),
            rank,
        });
    }
    let n = rank;
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let link = |a: &mut Vec<Vec<i64>>, i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    match family {
        Family::A => {
            for i in 0..n - 1 {
                link(&mut a, i, i + 1);
            }
        }
        Family::B => {
            for i in 0..n - 1 {
                link(&mut a, i, i + 1);
            }
            // node 0 is short
            a[0][1] = -2;
        }
        Family::C => {
            for i in 0..n - 1 {
                link(&mut a, i, i + 1);
            }
            // node n-1 is long
            a[n - 2][n - 1] = -2;
        }
        Family::D => {
            for i in 0..n - 2 {
                link(&mut a, i, i + 1);
            }
            link(&mut a, n - 3, n - 1);
        }
        Family::E => {
            link(&mut a, 0, 2);
            link(&mut a, 1, 3);
            for i in 2..n - 1 {
                link(&mut a, i, i + 1);
            }
        }
        Family::F => {
            link(&mut a, 0, 1);
            link(&mut a, 1, 2);
            link(&mut a, 2, 3);
            a[2][1] = -2;
        }
        Family::G => {
            link(&mut a, 0, 1);
            a[0][1] = -3;
        }
    }
    Ok(a)
}

fn ambient_for(family: Family, rank: usize) -> Option<Ambient> {
    let r = |n: i64| Rational64::from_integer(n);
    let half = Rational64::new(1, 2);
    let e = |dim: usize, entries: &[(usize, Rational64)]| {
        let mut v = vec![Rational64::zero(); dim];
        for &(i, c) in entries {
            v[i] += c;
        }
        v
    };
    match family {
        Family::A => {
            let dim = rank + 1;
            Some(Ambient {
                dim,
                simple_roots: (0..rank)
                    .map(|i| e(dim, &[(i, r(1)), (i + 1, r(-1))]))
                    .collect(),
            })
        }
        Family::C => {
            let dim = rank;
            let mut roots: Vec<_> = (0..rank - 1)
                .map(|i| e(dim, &[(i, r(1)), (i + 1, r(-1))]))
                .collect();
            roots.push(e(dim, &[(rank - 1, r(2))]));
            Some(Ambient {
                dim,
                simple_roots: roots,
            })
        }
        Family::F => Some(Ambient {
            dim: 4,
            simple_roots: vec![
                e(4, &[(1, r(1)), (2, r(-1))]),
                e(4, &[(2, r(1)), (3, r(-1))]),
                e(4, &[(3, r(1))]),
                e(4, &[(0, half), (1, -half), (2, -half), (3, -half)]),
            ],
        }),
        Family::G => Some(Ambient {
            dim: 3,
            simple_roots: vec![
                e(3, &[(0, r(1)), (1, r(-1))]),
                e(3, &[(0, r(-2)), (1, r(1)), (2, r(1))]),
            ],
        }),
        _ => None,
    }
}

/// Identifies the type of a connected Cartan matrix by permutation search.
pub fn identify_cartan(cartan: &[Vec<i64>]) -> Option<(Family, usize)> {
    let n = cartan.len();
    for fam in Family::ALL {
        if !fam.valid_rank(n) {
            continue;
        }
        let canon = canonical_cartan(fam, n).ok()?;
        let mut perm = vec![usize::MAX; n];
        let mut used = vec![false; n];
        if permutation_match(cartan, &canon, 0, &mut perm, &mut used) {
            return Some((fam, n));
        }
    }
    None
}

fn permutation_match(
    a: &[Vec<i64>],
    b: &[Vec<i64>],
    k: usize,
    perm: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    let n = a.len();
    if k == n {
        return true;
    }
    for cand in 0..n {
        if used[cand] {
            continue;
        }
        let ok = (0..k).all(|j| a[k][j] == b[cand][perm[j]] && a[j][k] == b[perm[j]][cand]);
        if ok {
            perm[k] = cand;
            used[cand] = true;
            if permutation_match(a, b, k + 1, perm, used) {
                return true;
            }
            used[cand] = false;
        }
    }
    false
}

impl RootSystem {
    /// Builds the root system of the given type with the default Weyl-group cap.
    pub fn build(family: Family, rank: usize) -> Result<RootSystem> {
        Self::build_with_cap(family, rank, DEFAULT_WEYL_CAP)
    }

    pub fn build_with_cap(family: Family, rank: usize, cap: usize) -> Result<RootSystem> {
        let cartan = canonical_cartan(family, rank)?;
        let mut rs = Self::from_cartan(cartan, family, rank, cap)?;
        rs.ambient = ambient_for(family, rank);
        Ok(rs)
    }

    /// Parses names such as `"A2"`, `"g2"`, `"B3"`.
    pub fn parse(name: &str) -> Result<RootSystem> {
        Self::parse_with_cap(name, DEFAULT_WEYL_CAP)
    }

    pub fn parse_with_cap(name: &str, cap: usize) -> Result<RootSystem> {
        let name = name.trim();
        let mut chars = name.chars();
        let fam = chars
            .next()
            .and_then(Family::from_letter)
            .ok_or_else(|| Error::BadRootSystemName(name.to_string()))?;
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::BadRootSystemName(name.to_string()))?;
        Self::build_with_cap(fam, rank, cap)
    }

    /// Builds from an arbitrary (connected) Cartan matrix whose type is known.
    fn from_cartan(
        cartan: Vec<Vec<i64>>,
        family: Family,
        rank: usize,
        cap: usize,
    ) -> Result<RootSystem> {
        let n = rank;
        let name = format!("{}{}", family.letter(), rank);
        let simple_roots: Vec<Weight> = (0..n)
            .map(|j| Weight::new((0..n).map(|i| cartan[i][j])))
            .collect();

        // squared lengths of simple roots along the Dynkin graph,
        // from A_ij |α_i|² = A_ji |α_j|²
        let mut sq: Vec<Option<Rational64>> = vec![None; n];
        sq[0] = Some(Rational64::one());
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for j in 0..n {
                if j != i && cartan[i][j] != 0 && sq[j].is_none() {
                    let v = sq[i].unwrap() * Rational64::from_integer(cartan[i][j])
                        / Rational64::from_integer(cartan[j][i]);
                    sq[j] = Some(v);
                    queue.push_back(j);
                }
            }
        }
        let sq: Vec<Rational64> = sq
            .into_iter()
            .map(|v| v.ok_or_else(|| Error::Internal("disconnected Dynkin diagram".into())))
            .collect::<Result<_>>()?;
        let min = *sq.iter().min().unwrap();
        let squared_lengths: Vec<i64> = sq
            .iter()
            .map(|v| (v / min * Rational64::from_integer(2)).to_integer())
            .collect();
        let short = *squared_lengths.iter().min().unwrap();
        let long = *squared_lengths.iter().max().unwrap();
        let m_phi = long / short;
        let len_of = |s: i64| {
            if s == long && long != short {
                RootLength::Long
            } else if s == long {
                // simply laced: every root counts as long and short at once;
                // report them as short so that ρ̃ = ρ.
                RootLength::Short
            } else {
                RootLength::Short
            }
        };
        let simple_lengths: Vec<RootLength> = squared_lengths.iter().map(|&s| len_of(s)).collect();

        // positive roots in simple-root coordinates, by height
        let mut roots: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 1;
                v
            })
            .collect();
        let mut known: HashSet<Vec<i64>> = roots.iter().cloned().collect();
        let mut level: Vec<Vec<i64>> = roots.clone();
        while !level.is_empty() {
            let mut next = Vec::new();
            for beta in &level {
                for i in 0..n {
                    let mut q = 0i64;
                    let mut down = beta.clone();
                    loop {
                        down[i] -= 1;
                        if known.contains(&down) {
                            q += 1;
                        } else {
                            break;
                        }
                    }
                    let pairing: i64 = (0..n).map(|j| cartan[i][j] * beta[j]).sum();
                    let p = q - pairing;
                    if p > 0 {
                        let mut up = beta.clone();
                        up[i] += 1;
                        if known.insert(up.clone()) {
                            next.push(up.clone());
                            roots.push(up);
                        }
                    }
                }
            }
            level = next;
        }
        let positive_roots: Vec<Weight> = roots
            .iter()
            .map(|c| Weight::new((0..n).map(|i| (0..n).map(|j| cartan[i][j] * c[j]).sum())))
            .collect();
        // |β|² = Σ c_i c_j (α_i, α_j), (α_i, α_j) = A_ij |α_i|² / 2
        let root_lengths: Vec<RootLength> = roots
            .iter()
            .map(|c| {
                let mut s = 0i64;
                for i in 0..n {
                    for j in 0..n {
                        s += c[i] * c[j] * cartan[i][j] * squared_lengths[i];
                    }
                }
                len_of(s / 2)
            })
            .collect();

        let rat: Vec<Vec<Rational64>> = cartan
            .iter()
            .map(|row| row.iter().map(|&x| Rational64::from_integer(x)).collect())
            .collect();
        let inv_cartan =
            invert_rational(&rat).ok_or_else(|| Error::Internal("singular Cartan matrix".into()))?;
        // grading functional <ρ^∨, μ>: column sums of A^{-1}, cleared of denominators
        let col_sums: Vec<Rational64> = (0..n)
            .map(|j| (0..n).map(|i| inv_cartan[i][j]).sum())
            .collect();
        let den = col_sums
            .iter()
            .fold(1i64, |acc, c| acc.lcm(c.denom()));
        let grade_weights: Vec<i64> = col_sums
            .iter()
            .map(|c| (c * Rational64::from_integer(den)).to_integer())
            .collect();

        let generators: Vec<WeylElement> = (0..n)
            .map(|i| {
                let mut m = vec![0i64; n * n];
                for r in 0..n {
                    m[r * n + r] = 1;
                }
                // s_i(μ) = μ - m_i(μ) α_i; column i of the matrix picks up -α_i
                for r in 0..n {
                    m[r * n + i] -= cartan[r][i];
                }
                WeylElement {
                    rank: n,
                    matrix: m,
                    sign: -1,
                    length: 1,
                }
            })
            .collect();

        let mut identity = vec![0i64; n * n];
        for r in 0..n {
            identity[r * n + r] = 1;
        }
        let mut seen: HashMap<Vec<i64>, ()> = HashMap::new();
        seen.insert(identity.clone(), ());
        let mut weyl = vec![WeylElement {
            rank: n,
            matrix: identity,
            sign: 1,
            length: 0,
        }];
        let mut head = 0;
        while head < weyl.len() {
            let (mat, len) = (weyl[head].matrix.clone(), weyl[head].length);
            head += 1;
            for g in &generators {
                let prod = mat_mul(n, &g.matrix, &mat);
                if seen.contains_key(&prod) {
                    continue;
                }
                seen.insert(prod.clone(), ());
                weyl.push(WeylElement {
                    rank: n,
                    matrix: prod,
                    sign: if (len + 1) % 2 == 0 { 1 } else { -1 },
                    length: len + 1,
                });
                if weyl.len() > cap {
                    return Err(Error::WeylGroupTooLarge { name, cap });
                }
            }
        }

        Ok(RootSystem {
            family,
            rank,
            name,
            cartan,
            simple_roots,
            positive_roots,
            positive_roots_simple: roots,
            root_lengths,
            simple_lengths,
            squared_lengths,
            m_phi,
            weyl,
            generators,
            inv_cartan,
            grade_weights,
            ambient: None,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn simple_roots(&self) -> &[Weight] {
        &self.simple_roots
    }

    pub fn positive_roots(&self) -> &[Weight] {
        &self.positive_roots
    }

    /// Positive roots as coefficient vectors in the simple-root basis.
    pub fn positive_roots_simple_coords(&self) -> &[Vec<i64>] {
        &self.positive_roots_simple
    }

    /// Lengths of the positive roots, parallel to [`Self::positive_roots`].
    pub fn root_lengths(&self) -> &[RootLength] {
        &self.root_lengths
    }

    pub fn simple_root_lengths(&self) -> &[RootLength] {
        &self.simple_lengths
    }

    /// Squared lengths of the simple roots, shortest normalized to 2.
    pub fn squared_lengths(&self) -> &[i64] {
        &self.squared_lengths
    }

    pub fn is_simply_laced(&self) -> bool {
        self.m_phi == 1
    }

    /// Ratio of squared lengths of long to short roots.
    pub fn m_phi(&self) -> i64 {
        self.m_phi
    }

    pub fn weyl(&self) -> &[WeylElement] {
        &self.weyl
    }

    /// The simple reflections `s_α`.
    pub fn generators(&self) -> &[WeylElement] {
        &self.generators
    }

    pub fn ambient(&self) -> Option<&Ambient> {
        self.ambient.as_ref()
    }

    /// `(A^{-1})_{ij} = <ω*_i, ω_j>`.
    pub fn inverse_cartan(&self) -> &[Vec<Rational64>] {
        &self.inv_cartan
    }

    /// Positive integer weights `c_j` such that `Σ c_j m_j` is a positive
    /// multiple of `<ρ^∨, μ>`. Every simple root has positive grade, so the
    /// induced term order refines the dominance order.
    pub fn grade_weights(&self) -> &[i64] {
        &self.grade_weights
    }

    pub fn grade(&self, w: &Weight) -> i64 {
        self.grade_weights
            .iter()
            .zip(w.coords())
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn check_weight(&self, w: &Weight) -> Result<()> {
        w.check_rank(self.rank)
    }

    /// All roots, positive then negative.
    pub fn roots(&self) -> Vec<Weight> {
        let mut v = self.positive_roots.clone();
        v.extend(self.positive_roots.iter().map(|r| -r));
        v
    }

    /// `(ρ, ρ̃)`; `ρ̃` has `m(Φ)` at short simple roots and 1 at long ones.
    pub fn weyl_vectors(&self) -> (Weight, Weight) {
        let rho = Weight::constant(self.rank, 1);
        let rho_tilde = if self.is_simply_laced() {
            rho.clone()
        } else {
            Weight::new(self.simple_lengths.iter().map(|l| match l {
                RootLength::Short => self.m_phi,
                RootLength::Long => 1,
            }))
        };
        (rho, rho_tilde)
    }

    pub fn rho(&self) -> Weight {
        self.weyl_vectors().0
    }

    pub fn rho_tilde(&self) -> Weight {
        self.weyl_vectors().1
    }

    /// `d(λ)` and `d*(λ)` (the latter absent when `ρ̃ ∤ λ`).
    pub fn gcd_invariants(&self, lambda: &Weight) -> Result<(i64, Option<i64>)> {
        self.check_weight(lambda)?;
        if !lambda.is_regular() {
            return Err(Error::NotRegular(lambda.to_vec()));
        }
        let d = lambda.content().abs();
        let rt = self.rho_tilde();
        let d_star = if rt.divides(lambda) {
            let quotients: Vec<i64> = lambda
                .coords()
                .iter()
                .zip(rt.coords())
                .map(|(a, b)| a / b)
                .collect();
            Some(quotients.iter().fold(0i64, |g, &q| g.gcd(&q)))
        } else {
            None
        };
        Ok((d, d_star))
    }

    /// `λ ∈ m^k P*`: `m^k` divides short coordinates and `m^{k-1}` long ones.
    pub fn in_scaled_coweight_lattice(&self, lambda: &Weight, k: u32) -> bool {
        if k == 0 {
            return true;
        }
        let m = self.m_phi;
        lambda
            .coords()
            .iter()
            .zip(&self.simple_lengths)
            .all(|(&c, len)| match len {
                RootLength::Short => c % m.pow(k) == 0,
                RootLength::Long => c % m.pow(k - 1) == 0,
            })
    }

    /// `λ ∈ m^k P`.
    pub fn in_scaled_weight_lattice(&self, lambda: &Weight, k: u32) -> bool {
        let mk = self.m_phi.pow(k);
        lambda.coords().iter().all(|&c| c % mk == 0)
    }

    /// Position of `λ` in the chain `P* ⊃ P ⊃ mP* ⊃ mP ⊃ …`, without the
    /// `ρ`/`ρ̃` flags.
    pub fn lattice_chain_class(&self, lambda: &Weight) -> Result<LatticeClass> {
        self.check_weight(lambda)?;
        if !lambda.is_regular() {
            return Err(Error::NotRegular(lambda.to_vec()));
        }
        let mut i = 0u32;
        let kind = if self.m_phi == 1 {
            LatticeKind::InMiPNotMi1PStar
        } else {
            while self.in_scaled_weight_lattice(lambda, i + 1) {
                i += 1;
            }
            if self.in_scaled_coweight_lattice(lambda, i + 1) {
                LatticeKind::InMi1PStarNotMi1P
            } else {
                LatticeKind::InMiPNotMi1PStar
            }
        };
        Ok(LatticeClass { i, kind })
    }

    /// Like [`Self::lattice_chain_class`], but multiples of `ρ` and `ρ̃` are
    /// reported as such.
    pub fn lattice_class(&self, lambda: &Weight) -> Result<LatticeClass> {
        let LatticeClass { i, kind } = self.lattice_chain_class(lambda)?;
        let (rho, rho_tilde) = self.weyl_vectors();
        let kind = if lambda.multiple_of(&rho).is_some() {
            LatticeKind::MultipleOfRho
        } else if lambda.multiple_of(&rho_tilde).is_some() {
            LatticeKind::MultipleOfRhoTilde
        } else {
            kind
        };
        Ok(LatticeClass { i, kind })
    }

    /// `λ` is a positive multiple of `ρ` or `ρ̃`.
    pub fn is_rho_multiple(&self, lambda: &Weight) -> bool {
        let (rho, rho_tilde) = self.weyl_vectors();
        lambda.multiple_of(&rho).is_some_and(|c| c > 0)
            || lambda.multiple_of(&rho_tilde).is_some_and(|c| c > 0)
    }

    /// Indices of the Dynkin neighbours of simple root `i`.
    pub fn neighbours(&self, i: usize) -> Vec<usize> {
        (0..self.rank)
            .filter(|&j| j != i && self.cartan[i][j] != 0)
            .collect()
    }

    pub fn is_corner(&self, i: usize) -> bool {
        i < self.rank && self.neighbours(i).len() == 1
    }

    pub fn corners(&self) -> Vec<usize> {
        (0..self.rank).filter(|&i| self.is_corner(i)).collect()
    }

    pub fn check_corner(&self, alpha: usize) -> Result<()> {
        if alpha >= self.rank {
            return Err(Error::IndexOutOfRange(alpha, self.rank));
        }
        if !self.is_corner(alpha) {
            return Err(Error::NotCorner(alpha, self.name.clone()));
        }
        Ok(())
    }

    /// The based root system on `Δ \ {α}` for a corner root `α`, with simple
    /// roots in the inherited order, and the projection `μ ↦ μ^α`.
    pub fn subsystem_at_corner(&self, alpha: usize) -> Result<(RootSystem, Projection)> {
        self.check_corner(alpha)?;
        let keep: Vec<usize> = (0..self.rank).filter(|&j| j != alpha).collect();
        let sub: Vec<Vec<i64>> = keep
            .iter()
            .map(|&i| keep.iter().map(|&j| self.cartan[i][j]).collect())
            .collect();
        let (fam, rank) = identify_cartan(&sub)
            .ok_or_else(|| Error::Internal(format!("{} minus node {alpha} is not simple", self.name)))?;
        let rs = RootSystem::from_cartan(sub, fam, rank, usize::MAX)?;
        Ok((rs, Projection { dropped: alpha }))
    }

    /// `w_{αβ} = <ω*_α, ω_β>`.
    pub fn pairing_w(&self, alpha: usize, beta: usize) -> Result<Rational64> {
        if alpha >= self.rank || beta >= self.rank {
            return Err(Error::IndexOutOfRange(alpha.max(beta), self.rank));
        }
        Ok(self.inv_cartan[alpha][beta])
    }

    /// `<ω*_α, μ>`, the (raw) degree of `μ` along `α`.
    pub fn coweight_pairing(&self, alpha: usize, mu: &Weight) -> Rational64 {
        self.inv_cartan[alpha]
            .iter()
            .zip(mu.coords())
            .map(|(a, &b)| a * Rational64::from_integer(b))
            .sum()
    }

    /// Degree along `l_α = ω_α / <ω*_α, ω_α>`.
    pub fn l_alpha_degree(&self, alpha: usize, mu: &Weight) -> Rational64 {
        self.coweight_pairing(alpha, mu) / self.inv_cartan[alpha][alpha]
    }

    pub fn has_minus_one(&self) -> bool {
        self.weyl.iter().any(|w| w.is_minus_identity())
    }

    /// Inverse of a Weyl element, looked up in the stored group.
    pub fn inverse_of(&self, w: &WeylElement) -> &WeylElement {
        let n = self.rank;
        self.weyl
            .iter()
            .find(|v| mat_mul(n, &v.matrix, &w.matrix) == identity_matrix(n))
            .expect("group is closed under inverses")
    }

    pub fn compose(&self, a: &WeylElement, b: &WeylElement) -> Option<&WeylElement> {
        let prod = mat_mul(self.rank, &a.matrix, &b.matrix);
        self.weyl.iter().find(|w| w.matrix == prod)
    }
}

fn identity_matrix(n: usize) -> Vec<i64> {
    let mut m = vec![0; n * n];
    for i in 0..n {
        m[i * n + i] = 1;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(name: &str) -> RootSystem {
        RootSystem::parse(name).unwrap()
    }

    #[test]
    fn weyl_orders_and_root_counts() {
        // |W| and |Φ+| for the desk-scale suite
        let expected = [
            ("A1", 2, 1),
            ("A2", 6, 3),
            ("A3", 24, 6),
            ("A4", 120, 10),
            ("B2", 8, 4),
            ("B3", 48, 9),
            ("C3", 48, 9),
            ("D4", 192, 12),
            ("G2", 12, 6),
            ("F4", 1152, 24),
        ];
        for (name, w, p) in expected {
            let r = rs(name);
            assert_eq!(r.weyl().len(), w, "{name}");
            assert_eq!(r.positive_roots().len(), p, "{name}");
        }
    }

    #[test]
    fn e6_exceeds_default_cap() {
        assert!(matches!(
            RootSystem::parse("E6"),
            Err(Error::WeylGroupTooLarge { .. })
        ));
    }

    #[test]
    fn invalid_types_rejected() {
        assert!(RootSystem::parse("D3").is_err());
        assert!(RootSystem::parse("G3").is_err());
        assert!(RootSystem::parse("X2").is_err());
        assert!(RootSystem::parse("B1").is_err());
    }

    #[test]
    fn m_phi_values() {
        assert_eq!(rs("A3").m_phi(), 1);
        assert_eq!(rs("D4").m_phi(), 1);
        assert_eq!(rs("B2").m_phi(), 2);
        assert_eq!(rs("C3").m_phi(), 2);
        assert_eq!(rs("F4").m_phi(), 2);
        assert_eq!(rs("G2").m_phi(), 3);
    }

    #[test]
    fn a1_weyl_group() {
        let r = rs("A1");
        let signs: Vec<i8> = r.weyl().iter().map(|w| w.sign()).collect();
        assert_eq!(signs, vec![1, -1]);
        assert!(r.weyl()[0].is_identity());
        assert_eq!(r.weyl()[1].apply(&Weight::new([1])), Weight::new([-1]));
    }

    #[test]
    fn weyl_vectors_match_duality() {
        assert_eq!(rs("A2").weyl_vectors(), (Weight::new([1, 1]), Weight::new([1, 1])));
        assert_eq!(rs("B2").rho_tilde(), Weight::new([2, 1]));
        assert_eq!(rs("G2").rho_tilde(), Weight::new([3, 1]));
        assert_eq!(rs("C3").rho_tilde(), Weight::new([2, 2, 1]));
        assert_eq!(rs("F4").rho_tilde(), Weight::new([1, 1, 2, 2]));
    }

    #[test]
    fn gcd_invariant_examples() {
        let a2 = rs("A2");
        assert_eq!(a2.gcd_invariants(&Weight::new([4, 2])).unwrap().0, 2);
        assert_eq!(a2.gcd_invariants(&Weight::new([3, 3])).unwrap().0, 3);
        let b2 = rs("B2");
        assert_eq!(b2.gcd_invariants(&Weight::new([4, 1])).unwrap(), (1, Some(1)));
        assert_eq!(b2.gcd_invariants(&Weight::new([3, 1])).unwrap(), (1, None));
        assert!(b2.gcd_invariants(&Weight::new([0, 1])).is_err());
    }

    #[test]
    fn lattice_class_examples() {
        let a2 = rs("A2");
        assert_eq!(
            a2.lattice_class(&Weight::new([2, 1])).unwrap(),
            LatticeClass {
                i: 0,
                kind: LatticeKind::InMiPNotMi1PStar
            }
        );
        let b2 = rs("B2");
        assert_eq!(
            b2.lattice_class(&Weight::new([4, 1])).unwrap(),
            LatticeClass {
                i: 0,
                kind: LatticeKind::InMi1PStarNotMi1P
            }
        );
        assert_eq!(
            b2.lattice_class(&Weight::new([1, 1])).unwrap().kind,
            LatticeKind::MultipleOfRho
        );
        assert_eq!(
            b2.lattice_class(&Weight::new([4, 2])).unwrap().kind,
            LatticeKind::MultipleOfRhoTilde
        );
        // (8,2) ∈ 4P* \ 4P
        assert_eq!(
            b2.lattice_class(&Weight::new([8, 2])).unwrap(),
            LatticeClass {
                i: 1,
                kind: LatticeKind::InMi1PStarNotMi1P
            }
        );
        assert_eq!(
            b2.lattice_class(&Weight::new([2, 4])).unwrap(),
            LatticeClass {
                i: 1,
                kind: LatticeKind::InMiPNotMi1PStar
            }
        );
    }

    #[test]
    fn corner_subsystems() {
        let (sub, proj) = rs("A3").subsystem_at_corner(0).unwrap();
        assert_eq!(sub.name(), "A2");
        assert_eq!(proj.apply(&Weight::new([1, 1, 1])), Weight::new([1, 1]));
        for c in rs("G2").corners() {
            assert_eq!(rs("G2").subsystem_at_corner(c).unwrap().0.name(), "A1");
        }
        let b3 = rs("B3");
        assert_eq!(b3.corners(), vec![0, 2]);
        assert_eq!(b3.subsystem_at_corner(2).unwrap().0.name(), "B2");
        assert_eq!(b3.subsystem_at_corner(0).unwrap().0.name(), "A2");
        assert!(matches!(
            rs("A3").subsystem_at_corner(1),
            Err(Error::NotCorner(1, _))
        ));
        assert_eq!(rs("D4").corners(), vec![0, 2, 3]);
    }

    #[test]
    fn pairing_tables() {
        let half = Rational64::new(1, 2);
        let b2 = rs("B2");
        assert_eq!(b2.pairing_w(0, 1).unwrap() * b2.pairing_w(1, 0).unwrap(), half);
        let c3 = rs("C3");
        assert_eq!(c3.pairing_w(0, 2).unwrap() * c3.pairing_w(2, 0).unwrap(), half);
        let f4 = rs("F4");
        // short corner 3, long corner 0
        assert_eq!(f4.pairing_w(3, 0).unwrap(), Rational64::from_integer(2));
        assert_eq!(f4.pairing_w(0, 3).unwrap(), Rational64::from_integer(1));
        let g2 = rs("G2");
        assert_eq!(g2.pairing_w(0, 1).unwrap(), Rational64::from_integer(3));
        assert_eq!(g2.pairing_w(1, 0).unwrap(), Rational64::from_integer(1));
    }

    #[test]
    fn ambient_realizations_reproduce_cartan_and_pairings() {
        for name in ["A1", "A2", "A3", "C2", "C3", "F4", "G2"] {
            let r = rs(name);
            let amb = r.ambient().expect(name);
            let c = amb.cartan();
            for i in 0..r.rank() {
                for j in 0..r.rank() {
                    assert_eq!(c[i][j], Rational64::from_integer(r.cartan()[i][j]), "{name}");
                    assert_eq!(amb.pairing_w(i, j), r.pairing_w(i, j).unwrap(), "{name}");
                }
            }
        }
    }

    #[test]
    fn minus_one_membership() {
        for (name, expected) in [
            ("A1", true),
            ("A2", false),
            ("A3", false),
            ("B2", true),
            ("B3", true),
            ("C3", true),
            ("D4", true),
            ("F4", true),
            ("G2", true),
        ] {
            assert_eq!(rs(name).has_minus_one(), expected, "{name}");
        }
    }

    #[test]
    fn weyl_group_permutes_roots_and_signs_balance() {
        for name in ["A2", "B2", "G2", "B3", "C3"] {
            let r = rs(name);
            let roots: HashSet<Weight> = r.roots().into_iter().collect();
            for w in r.weyl() {
                assert_eq!(w.sign() as i64, if w.length() % 2 == 0 { 1 } else { -1 });
                for a in &roots {
                    assert!(roots.contains(&w.apply(a)));
                }
            }
            let sum: i64 = r.weyl().iter().map(|w| w.sign() as i64).sum();
            assert_eq!(sum, 0);
            for a in r.weyl().iter().step_by(3) {
                for b in r.weyl().iter().step_by(5) {
                    assert!(r.compose(a, b).is_some());
                }
            }
        }
    }

    #[test]
    fn grading_is_positive_on_simple_roots() {
        for name in ["A3", "B3", "C3", "D4", "F4", "G2"] {
            let r = rs(name);
            for a in r.simple_roots() {
                assert!(r.grade(a) > 0, "{name}");
            }
        }
    }

    #[test]
    fn projection_is_equivariant_for_corner_subgroup() {
        let r = rs("B3");
        let alpha = 2;
        let (sub, proj) = r.subsystem_at_corner(alpha).unwrap();
        let mu = Weight::new([3, -1, 2]);
        let mut k = 0;
        for (i, s) in r.generators().iter().enumerate() {
            if i == alpha {
                continue;
            }
            let lhs = proj.apply(&s.apply(&mu));
            let rhs = sub.generators()[k].apply(&proj.apply(&mu));
            assert_eq!(lhs, rhs);
            k += 1;
        }
    }
}
