//! Integer weights in the fundamental-weight basis.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

pub type Coords = SmallVec<[i64; 4]>;

/// A weight `λ = Σ m_α(λ) ω_α`, stored as its coordinates `m_α(λ)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Coords);

impl Weight {
    pub fn new(coords: impl IntoIterator<Item = i64>) -> Self {
        Weight(coords.into_iter().collect())
    }

    pub fn zero(rank: usize) -> Self {
        Weight(smallvec::smallvec![0; rank])
    }

    /// The fundamental weight `ω_i`.
    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut w = Self::zero(rank);
        w.0[i] = 1;
        w
    }

    /// `c·ρ`, the all-`c` vector.
    pub fn constant(rank: usize, c: i64) -> Self {
        Weight(smallvec::smallvec![c; rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn to_vec(&self) -> Vec<i64> {
        self.0.to_vec()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn is_regular(&self) -> bool {
        self.0.iter().all(|&c| c != 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|&c| c * k).collect())
    }

    /// gcd of the coordinates (0 for the zero weight).
    pub fn content(&self) -> i64 {
        self.0.iter().fold(0i64, |g, &c| g.gcd(&c))
    }

    /// Coordinate-wise divisibility: `self` divides `other` when every
    /// `m_α(self)` divides `m_α(other)`. A zero coordinate only divides zero.
    pub fn divides(&self, other: &Weight) -> bool {
        self.rank() == other.rank()
            && self.0.iter().zip(other.0.iter()).all(|(&a, &b)| {
                if a == 0 {
                    b == 0
                } else {
                    b % a == 0
                }
            })
    }

    /// Returns `Some(c)` when `self = c·other` for an integer `c`.
    pub fn multiple_of(&self, other: &Weight) -> Option<i64> {
        if self.rank() != other.rank() || other.is_zero() {
            return None;
        }
        let mut ratio: Option<i64> = None;
        for (&a, &b) in self.0.iter().zip(other.0.iter()) {
            if b == 0 {
                if a != 0 {
                    return None;
                }
                continue;
            }
            if a % b != 0 {
                return None;
            }
            let q = a / b;
            match ratio {
                None => ratio = Some(q),
                Some(r) if r != q => return None,
                _ => {}
            }
        }
        ratio
    }

    pub fn check_rank(&self, rank: usize) -> Result<()> {
        if self.rank() != rank {
            return Err(Error::RankMismatch(self.to_vec(), self.rank(), rank));
        }
        Ok(())
    }

    /// Drops coordinate `i`.
    pub fn without(&self, i: usize) -> Weight {
        Weight(
            self.0
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &c)| c)
                .collect(),
        )
    }

    /// Parses `"2,1"` or `"(2, 1)"`.
    pub fn parse(s: &str) -> Result<Weight> {
        let t = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
        if t.is_empty() {
            return Err(Error::Usage(format!("empty weight `{s}`")));
        }
        t.split(',')
            .map(|p| {
                p.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Usage(format!("bad weight coordinate in `{s}`")))
            })
            .collect::<Result<Coords>>()
            .map(Weight)
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(rhs.0.iter()).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(rhs.0.iter()).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisibility_is_coordinatewise() {
        let rho_tilde = Weight::new([2, 1]);
        assert!(rho_tilde.divides(&Weight::new([4, 1])));
        assert!(!rho_tilde.scale(2).divides(&Weight::new([4, 1])));
        assert!(!Weight::new([0, 1]).divides(&Weight::new([1, 1])));
    }

    #[test]
    fn multiple_of() {
        assert_eq!(Weight::new([6, 3]).multiple_of(&Weight::new([2, 1])), Some(3));
        assert_eq!(Weight::new([6, 2]).multiple_of(&Weight::new([2, 1])), None);
    }

    #[test]
    fn parse_forms() {
        assert_eq!(Weight::parse("2,1").unwrap(), Weight::new([2, 1]));
        assert_eq!(Weight::parse("(3, -1)").unwrap(), Weight::new([3, -1]));
        assert!(Weight::parse("a,1").is_err());
    }
}
