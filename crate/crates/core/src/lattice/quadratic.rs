//! Affine subspaces defined over a real quadratic field `K = Q(√D)`.
//!
//! With the basis `{1, √D}` of `K` the matrix `l_0^{-1}` is
//! `[[I_r, √D I_r], [I_r, -√D I_r]]`. Its first `r` rows, moved by a fixed
//! rational unipotent `g_Q`, span an `r`-dimensional `K`-rational subspace of
//! `R^n`. Normalised to `(I_r | A)` it gives an affine `(r-1)`-dimensional
//! family, emitted as a curve on the unit ball of `R^{r-1}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flows::{Curve, Polynomial};
use crate::linalg::{ExactMatrix, Scalar};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadraticExample {
    pub n: usize,
    pub r: usize,
    pub m: usize,
    pub radicand: u64,
    pub l0_inv: ExactMatrix,
    pub g_q: ExactMatrix,
    /// `(I_r | A)`, spanning the same subspace as the first `r` rows of
    /// `l_0^{-1} g_Q`.
    pub subspace: ExactMatrix,
    pub curve: Curve,
    /// Dimension of the smallest rational subspace containing the span.
    pub rational_closure_dim: usize,
}

/// `g_Q`: identity on the first `r` rows; row `i ≥ r` has ones in columns
/// `i - r`, `i - r + 1` and `i`.
fn g_rational(n: usize, r: usize) -> ExactMatrix {
    ExactMatrix::from_fn(n, n, |i, j| {
        let hit = if i < r { i == j } else { j == i || j == i - r || j == i - r + 1 };
        if hit {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    })
}

pub fn l0_inverse(r: usize, d: u64) -> Result<ExactMatrix> {
    let root = Scalar::sqrt_of(d)?;
    let n = 2 * r;
    Ok(ExactMatrix::from_fn(n, n, |i, j| {
        let (bi, bj) = (i / r, j / r);
        if i % r != j % r {
            Scalar::zero()
        } else if bj == 0 {
            Scalar::one()
        } else if bi == 0 {
            root.clone()
        } else {
            -root.clone()
        }
    }))
}

pub fn quadratic_subspace_example(n: usize, r: usize, m: usize, d: u64) -> Result<QuadraticExample> {
    if m != 2 {
        return Err(Error::Unsupported(format!("field degree m = {m}; only quadratic fields are supported")));
    }
    if r < 2 {
        return Err(Error::invalid(format!("r = {r} must be at least 2")));
    }
    if n != r * m {
        return Err(Error::invalid(format!("n = {n} must equal r*m = {}", r * m)));
    }
    let l0_inv = l0_inverse(r, d)?;
    let g_q = g_rational(n, r);
    let rows: Vec<usize> = (0..r).collect();
    let all: Vec<usize> = (0..n).collect();
    let w = l0_inv.submatrix(&rows, &all).checked_mul(&g_q)?;
    let lead = w.submatrix(&rows, &rows);
    let subspace = lead.inverse().map_err(|_| Error::Singular("leading block of the K-plane".into()))?.checked_mul(&w)?;

    let a = subspace.submatrix(&rows, &(r..n).collect::<Vec<_>>());
    let k = r - 1;
    let mut coords: Vec<Polynomial> = (0..k)
        .map(|i| {
            let mut slopes = vec![Scalar::zero(); k];
            slopes[i] = Scalar::one();
            Polynomial::affine(Scalar::zero(), &slopes)
        })
        .collect();
    for j in 0..n - r {
        let slopes: Vec<Scalar> = (1..r).map(|i| a[(i, j)].clone()).collect();
        coords.push(Polynomial::affine(a[(0, j)].clone(), &slopes));
    }
    let curve = Curve::new(n, coords, vec![Scalar::zero(); k], Scalar::one())?;

    // rational and irrational parts of the spanning rows
    let mut parts = Vec::with_capacity(2 * r);
    for i in 0..r {
        let row = w.row(i);
        parts.push(row.iter().map(|x| Scalar::from_rational(x.rational_part().clone())).collect());
        parts.push(row.iter().map(|x| Scalar::from_rational(x.irrational_part().clone())).collect());
    }
    let rational_closure_dim = ExactMatrix::from_rows(parts)?.rank();

    Ok(QuadraticExample { n, r, m, radicand: d, l0_inv, g_q, subspace, curve, rational_closure_dim })
}
