//! Exterior powers `∧^k R^n` in the lexicographically ordered basis
//! `e_I = e_{i_1} ∧ … ∧ e_{i_k}`, `i_1 < … < i_k`.
//!
//! Indices are zero-based internally; `e_1 ∧ e_2` is the subset `[0, 1]`,
//! which has rank 0. CSV and JSON outputs use the same order.

use super::matrix::ExactMatrix;
use super::scalar::Scalar;
use crate::error::{Error, Result};

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// A strictly increasing `k`-subset of `{0, …, n-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WedgeIndex {
    n: usize,
    subset: Vec<usize>,
}

impl WedgeIndex {
    pub fn new(n: usize, subset: Vec<usize>) -> Result<Self> {
        if subset.windows(2).any(|w| w[0] >= w[1]) || subset.iter().any(|&i| i >= n) {
            return Err(Error::invalid(format!("{subset:?} is not an increasing subset of 0..{n}")));
        }
        Ok(WedgeIndex { n, subset })
    }

    pub fn subset(&self) -> &[usize] {
        &self.subset
    }

    pub fn k(&self) -> usize {
        self.subset.len()
    }

    /// Lexicographic rank among all `k`-subsets.
    pub fn rank(&self) -> usize {
        let k = self.subset.len();
        let mut rank = 0;
        let mut prev = 0;
        for (j, &i) in self.subset.iter().enumerate() {
            for v in prev..i {
                rank += binomial(self.n - 1 - v, k - 1 - j);
            }
            prev = i + 1;
        }
        rank
    }

    pub fn unrank(n: usize, k: usize, mut rank: usize) -> Result<Self> {
        if rank >= binomial(n, k) {
            return Err(Error::invalid(format!("rank {rank} out of range for C({n},{k})")));
        }
        let mut subset = Vec::with_capacity(k);
        let mut v = 0;
        for j in 0..k {
            loop {
                let block = binomial(n - 1 - v, k - 1 - j);
                if rank < block {
                    break;
                }
                rank -= block;
                v += 1;
            }
            subset.push(v);
            v += 1;
        }
        Ok(WedgeIndex { n, subset })
    }
}

/// All `k`-subsets of `{0..n-1}` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::with_capacity(binomial(n, k));
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Largest absolute entry; zero for the empty vector.
pub fn sup_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

pub fn sup_norm_exact(v: &[Scalar]) -> Scalar {
    v.iter().map(Scalar::abs).max().unwrap_or_else(Scalar::zero)
}

/// Induced action of `m` on `∧^k`: entry `(I, J)` is the minor with rows `I`
/// and columns `J`.
pub fn wedge_matrix(m: &ExactMatrix, k: usize) -> Result<ExactMatrix> {
    if !m.is_square() {
        return Err(Error::dim("wedge_matrix needs a square matrix"));
    }
    let n = m.rows();
    if k == 0 || k > n {
        return Err(Error::invalid(format!("exterior degree {k} out of range 1..={n}")));
    }
    let idx = subsets(n, k);
    let size = idx.len();
    let mut out = ExactMatrix::zeros(size, size);
    for (a, rows) in idx.iter().enumerate() {
        for (b, cols) in idx.iter().enumerate() {
            out[(a, b)] = m.submatrix(rows, cols).det()?;
        }
    }
    Ok(out)
}

/// Coordinates of `v_1 ∧ … ∧ v_k`.
pub fn wedge_vector(vectors: &[Vec<Scalar>]) -> Result<Vec<Scalar>> {
    let k = vectors.len();
    let Some(n) = vectors.first().map(Vec::len) else {
        return Err(Error::invalid("wedge of no vectors"));
    };
    if vectors.iter().any(|v| v.len() != n) {
        return Err(Error::dim("wedge factors have different lengths"));
    }
    if k > n {
        return Ok(Vec::new());
    }
    // columns are the factors
    let m = ExactMatrix::from_fn(n, k, |i, j| vectors[j][i].clone());
    let cols: Vec<usize> = (0..k).collect();
    subsets(n, k).iter().map(|rows| m.submatrix(rows, &cols).det()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: usize, i: usize) -> Vec<Scalar> {
        (0..n).map(|j| Scalar::from_int((i == j) as i64)).collect()
    }

    #[test]
    fn rank_is_a_bijection() {
        for n in 1..=7 {
            for k in 1..=n {
                for (r, s) in subsets(n, k).into_iter().enumerate() {
                    let w = WedgeIndex::new(n, s.clone()).unwrap();
                    assert_eq!(w.rank(), r);
                    assert_eq!(WedgeIndex::unrank(n, k, r).unwrap().subset(), &s[..]);
                }
            }
        }
        assert!(WedgeIndex::new(4, vec![2, 1]).is_err());
    }

    #[test]
    fn sup_norm_examples() {
        assert_eq!(sup_norm(&[1.0, -3.0, 2.0]), 3.0);
        assert_eq!(sup_norm(&[0.0; 4]), 0.0);
        // e1∧e2 + 2 e1∧e3 in ∧²R³
        let w: Vec<Scalar> = [1, 2, 0].iter().map(|&x| Scalar::from_int(x)).collect();
        assert_eq!(sup_norm_exact(&w), Scalar::from_int(2));
    }

    #[test]
    fn wedge_vector_basics() {
        let w = wedge_vector(&[e(3, 0), e(3, 1)]).unwrap();
        assert_eq!(w, vec![Scalar::one(), Scalar::zero(), Scalar::zero()]);
        let w2 = wedge_vector(&[e(3, 1), e(3, 0)]).unwrap();
        assert!(w.iter().zip(&w2).all(|(a, b)| a == &-b));
        let twice: Vec<Scalar> = e(3, 0).iter().map(|x| x * &Scalar::from_int(2)).collect();
        assert!(wedge_vector(&[e(3, 0), twice]).unwrap().iter().all(Scalar::is_zero));
    }

    #[test]
    fn wedge_matrix_identity_and_top_degree() {
        assert_eq!(wedge_matrix(&ExactMatrix::identity(3), 2).unwrap(), ExactMatrix::identity(3));
        let m = ExactMatrix::parse("2,1,0;1/2,3,1;0,-1,4").unwrap();
        let top = wedge_matrix(&m, 3).unwrap();
        assert_eq!(top.shape(), (1, 1));
        assert_eq!(top[(0, 0)], m.det().unwrap());
        assert!(wedge_matrix(&m, 4).is_err());
        assert!(wedge_matrix(&m, 0).is_err());
    }
}
