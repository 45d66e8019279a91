//! Rank computations: modular Gaussian elimination and fraction-free
//! (Bareiss) elimination over `ℤ`.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Rank of a dense matrix over `F_p`, `p < 2^32`. Consumes the rows.
pub fn rank_mod_p(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = super::zp::inv(rows[rank][col], p);
        for x in rows[rank][col..].iter_mut() {
            *x = *x * inv % p;
        }
        let (top, bottom) = rows.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in bottom.iter_mut() {
            let f = row[col];
            if f == 0 {
                continue;
            }
            for (x, &y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x = (*x + p - f * y % p) % p;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Exact rank over `ℚ` of an integer matrix by Bareiss elimination.
pub fn rank_bareiss(mut rows: Vec<Vec<BigInt>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    let mut prev = BigInt::from(1);
    for col in 0..ncols {
        // smallest pivot keeps entries short
        let Some(piv) = (rank..rows.len())
            .filter(|&i| !rows[i][col].is_zero())
            .min_by_key(|&i| rows[i][col].abs())
        else {
            continue;
        };
        rows.swap(rank, piv);
        let (top, bottom) = rows.split_at_mut(rank + 1);
        let pr = &top[rank];
        let a = pr[col].clone();
        for row in bottom.iter_mut() {
            let b = row[col].clone();
            for j in col..ncols {
                let v = &a * &row[j] - &b * &pr[j];
                row[j] = v / &prev;
            }
        }
        prev = a;
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}
