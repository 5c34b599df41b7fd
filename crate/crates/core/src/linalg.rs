//! Exact linear algebra: rank, span membership and linear solves.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::scalar::{is_zero, Rational, Scalar};

/// Rank of a list of row vectors over any exact field (Gauss–Jordan).
pub fn rank<F: Scalar>(mut rows: Vec<Vec<F>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !is_zero(&rows[r][col])) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = F::one() / rows[rank][col].clone();
        for x in rows[rank].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || is_zero(&row[col]) {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !is_zero(p) {
                    let mut t = p.clone();
                    t *= &factor;
                    *x -= &t;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Clears denominators row by row, giving an integer matrix with the same
/// row space.
pub fn integer_rows(rows: &[Vec<Rational>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|row| {
            let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
        })
        .collect()
}

/// Rank of an integer matrix by Bareiss fraction-free elimination.
/// All intermediate entries stay integral and every division is exact.
pub fn bareiss_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let nrows = m.len();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(pivot) = (rank..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        for r in rank + 1..nrows {
            for c in col + 1..ncols {
                let v = &m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c];
                debug_assert!((&v % &prev).is_zero());
                m[r][c] = v / &prev;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Fraction-free rank of a rational matrix.
pub fn rational_rank(rows: &[Vec<Rational>]) -> usize {
    bareiss_rank(integer_rows(rows))
}

/// Finds `x` with `Σ_i x_i rows[i] = target`, if one exists.
pub fn solve_combination<F: Scalar>(rows: &[Vec<F>], target: &[F]) -> Option<Vec<F>> {
    let n = rows.len();
    let m = target.len();
    // Augmented system with unknowns as columns: A^T x = target.
    let mut aug: Vec<Vec<F>> = (0..m)
        .map(|j| {
            let mut r: Vec<F> = rows.iter().map(|row| row[j].clone()).collect();
            r.push(target[j].clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..n {
        let Some(p) = (rank..m).find(|&r| !is_zero(&aug[r][col])) else {
            continue;
        };
        aug.swap(rank, p);
        let inv = F::one() / aug[rank][col].clone();
        for x in aug[rank].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = aug[rank].clone();
        for (r, row) in aug.iter_mut().enumerate() {
            if r == rank || is_zero(&row[col]) {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !is_zero(p) {
                    let mut t = p.clone();
                    t *= &factor;
                    *x -= &t;
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    if aug[rank..].iter().any(|row| !is_zero(&row[n])) {
        return None;
    }
    let mut x = vec![F::zero(); n];
    for (r, &col) in pivots.iter().enumerate() {
        x[col] = aug[r][n].clone();
    }
    Some(x)
}
