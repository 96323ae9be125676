//! The extended matrix `A^ext` attached to a `2 × (n-2)` matrix `A = (a; b)`.
//!
//! Columns are indexed by pairs `3 ≤ i < j ≤ n` in lexicographic order. Rows
//! are the blocks `X` (indexed by `k = 3..n`), `Y` (same) and the single row
//! `Z`, giving shape `(2n-3) × C(n-2, 2)`.

use std::ops::{Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::linalg::{subsets, ExactMatrix, Scalar};

/// Row ranges of the `X`, `Y` and `Z` blocks of `A^ext` for a given `n`.
pub fn a_ext_blocks(n: usize) -> [std::ops::Range<usize>; 3] {
    let m = n - 2;
    [0..m, m..2 * m, 2 * m..2 * m + 1]
}

pub fn a_ext(a: &ExactMatrix) -> Result<ExactMatrix> {
    if a.rows() != 2 {
        return Err(Error::dim(format!("A must have 2 rows, got {}", a.rows())));
    }
    let m = a.cols();
    if m + 2 < 4 {
        return Err(Error::invalid(format!("A^ext needs n >= 4, got n = {}", m + 2)));
    }
    let rows = a_ext_generic(m, |r, j| a[(r, j)].clone(), Scalar::zero());
    ExactMatrix::from_rows(rows)
}

/// Entries of `A^ext` over any commutative ring, with `entry(0, j) = a_j` and
/// `entry(1, j) = b_j` (zero-based `j`).
pub fn a_ext_generic<T>(m: usize, entry: impl Fn(usize, usize) -> T, zero: T) -> Vec<Vec<T>>
where
    T: Clone + Neg<Output = T> + Sub<Output = T> + Mul<Output = T>,
{
    let pairs = subsets(m, 2);
    let mut out = vec![vec![zero; pairs.len()]; 2 * m + 1];
    for (col, pair) in pairs.iter().enumerate() {
        let (i, j) = (pair[0], pair[1]);
        for (block, row) in [(0, 0usize), (m, 1)] {
            out[block + i][col] = -entry(row, j);
            out[block + j][col] = entry(row, i);
        }
        out[2 * m][col] = entry(0, j) * entry(1, i) - entry(0, i) * entry(1, j);
    }
    out
}

/// Float entry point for sampled matrices.
pub fn a_ext_f64(a: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    let rows = a
        .iter()
        .map(|r| r.iter().map(|&x| Scalar::from_f64(x).ok_or_else(|| Error::invalid("non-finite entry"))).collect())
        .collect::<Result<Vec<Vec<Scalar>>>>()?;
    let ext = a_ext(&ExactMatrix::from_rows(rows)?)?;
    Ok((0..ext.rows()).map(|i| ext.row(i).iter().map(Scalar::to_f64).collect()).collect())
}
