use num_bigint::BigInt;

use super::matrix::ExactMatrix;
use super::scalar::Scalar;
use super::wedge::{binomial, subsets};
use crate::error::{Error, Result};

/// Antisymmetric matrix `S` of a 2-vector `Σ C_ij e_i ∧ e_j`, with
/// `S_ij = C_ij` and `S_ji = -C_ij` for `i < j`.
pub fn two_form_matrix(n: usize, coords: &[Scalar]) -> Result<ExactMatrix> {
    if coords.len() != binomial(n, 2) {
        return Err(Error::dim(format!("expected {} coordinates for ∧²R^{n}", binomial(n, 2))));
    }
    let mut s = ExactMatrix::zeros(n, n);
    for (c, ij) in coords.iter().zip(subsets(n, 2)) {
        s[(ij[0], ij[1])] = c.clone();
        s[(ij[1], ij[0])] = -c.clone();
    }
    Ok(s)
}

/// Pfaffian of an antisymmetric integer matrix.
///
/// Skew Gaussian elimination: each pivot pair `(k, k+1)` is cleared from
/// the remaining rows and columns by a unimodular congruence, so the
/// Pfaffian is the product of the pivots times the sign of the swaps.
pub fn pfaffian(s: &ExactMatrix) -> Result<BigInt> {
    if !s.is_square() {
        return Err(Error::dim("pfaffian needs a square matrix"));
    }
    let n = s.rows();
    if n % 2 == 1 {
        return Err(Error::invalid(format!("pfaffian of odd dimension {n}")));
    }
    for i in 0..n {
        for j in 0..n {
            if !s[(i, j)].is_integer() {
                return Err(Error::invalid("pfaffian expects integer entries"));
            }
            if s[(i, j)] != -s[(j, i)].clone() {
                return Err(Error::invalid("matrix is not antisymmetric"));
            }
        }
    }
    let mut a = s.clone();
    let mut pf = Scalar::one();
    for k in (0..n).step_by(2) {
        let Some(p) = (k + 1..n).find(|&j| !a[(k, j)].is_zero()) else {
            return Ok(BigInt::from(0));
        };
        if p != k + 1 {
            swap_both(&mut a, p, k + 1);
            pf = -pf;
        }
        let pivot = a[(k, k + 1)].clone();
        pf *= &pivot;
        let inv = pivot.inverse().expect("nonzero pivot");
        for i in k + 2..n {
            let c = &a[(k, i)] * &inv;
            let d = &a[(k + 1, i)] * &inv;
            if c.is_zero() && d.is_zero() {
                continue;
            }
            // col_i -= c col_{k+1} - d col_k, then the same on rows
            for r in 0..n {
                let t = &(&c * &a[(r, k + 1)]) - &(&d * &a[(r, k)]);
                a[(r, i)] -= &t;
            }
            for col in 0..n {
                let t = &(&c * &a[(k + 1, col)]) - &(&d * &a[(k, col)]);
                a[(i, col)] -= &t;
            }
        }
    }
    pf.to_integer().ok_or_else(|| Error::invalid("non-integral pfaffian"))
}

fn swap_both(a: &mut ExactMatrix, x: usize, y: usize) {
    a.swap_rows(x, y);
    for r in 0..a.rows() {
        let t = a[(r, x)].clone();
        a[(r, x)] = a[(r, y)].clone();
        a[(r, y)] = t;
    }
}
