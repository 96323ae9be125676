//! From a decomposable integer `w ∈ ∧^k Z^n` to a short integer vector of
//! its span.
//!
//! The span of `w` is the kernel of `v ↦ v ∧ w`, and `w` is decomposable
//! exactly when that kernel has dimension `k`. The saturated integer kernel
//! is the lattice `[w] ∩ Z^n`; reduction and enumeration give a shortest
//! vector of it.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::reduce::{lll_reduce, shortest_of_reduced, LatticeBasis, DEFAULT_NODE_BUDGET};
use crate::error::{Error, Result};
use crate::linalg::integer::{det_bareiss, integer_kernel};
use crate::linalg::{binomial, subsets, ExactMatrix, Scalar};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Descent {
    pub v: Vec<i64>,
    pub norm: f64,
    /// Covolume of `[w] ∩ Z^n`.
    pub covolume: f64,
    /// `√k · covolume^{1/k}`.
    pub minkowski_bound: f64,
    /// `√k · ‖w‖^{1/k}`; at least `minkowski_bound` since `‖w‖ ≥ covolume`.
    pub wedge_bound: f64,
    pub sublattice_basis: Vec<Vec<i64>>,
}

/// Matrix of `v ↦ v ∧ w`, rows indexed by `(k+1)`-subsets, columns by `i`.
pub fn contraction_matrix(w: &[i64], n: usize, k: usize) -> Result<Vec<Vec<BigInt>>> {
    if k == 0 || k >= n {
        return Err(Error::invalid(format!("k = {k} outside 1..n-1 for n = {n}")));
    }
    if w.len() != binomial(n, k) {
        return Err(Error::dim(format!("w must have C({n},{k}) = {} coordinates", binomial(n, k))));
    }
    let index: std::collections::HashMap<Vec<usize>, usize> =
        subsets(n, k).into_iter().enumerate().map(|(r, s)| (s, r)).collect();
    let rows = subsets(n, k + 1)
        .into_iter()
        .map(|j| {
            let mut row = vec![BigInt::zero(); n];
            for (pos, &i) in j.iter().enumerate() {
                // e_i ∧ e_I = (-1)^pos e_J with I = J \ {i}
                let rest: Vec<usize> = j.iter().copied().filter(|&x| x != i).collect();
                let c = BigInt::from(w[index[&rest]]);
                row[i] = if pos % 2 == 0 { c } else { -c };
            }
            row
        })
        .collect();
    Ok(rows)
}

pub fn is_decomposable(w: &[i64], n: usize, k: usize) -> Result<bool> {
    if w.iter().all(|&x| x == 0) {
        return Ok(false);
    }
    let m = contraction_matrix(w, n, k)?;
    let exact = ExactMatrix::from_rows(
        m.iter().map(|r| r.iter().map(|x| Scalar::from_rational(x.clone().into())).collect()).collect(),
    )?;
    Ok(n - exact.rank() == k)
}

pub fn descend_to_vector(w: &[i64], n: usize, k: usize) -> Result<Descent> {
    if !is_decomposable(w, n, k)? {
        return Err(Error::NotDecomposable);
    }
    let kernel = integer_kernel(&contraction_matrix(w, n, k)?, n);
    debug_assert_eq!(kernel.len(), k);
    let basis: Vec<Vec<i64>> = kernel
        .iter()
        .map(|v| v.iter().map(|x| x.to_i64().ok_or_else(|| Error::Overflow("sublattice basis".into()))).collect())
        .collect::<Result<_>>()?;
    let gram: Vec<Vec<BigInt>> = kernel
        .iter()
        .map(|x| kernel.iter().map(|y| x.iter().zip(y).map(|(a, b)| a * b).sum()).collect())
        .collect();
    let covolume = det_bareiss(&gram).to_f64().unwrap_or(f64::INFINITY).sqrt();

    let floats: Vec<Vec<f64>> = basis.iter().map(|v| v.iter().map(|&x| x as f64).collect()).collect();
    let red = lll_reduce(&LatticeBasis::from_vectors(&floats)?)?;
    let sv = shortest_of_reduced(&red, DEFAULT_NODE_BUDGET)?;
    let v: Vec<i64> = (0..n)
        .map(|i| {
            let s: i128 = sv.coords.iter().zip(&basis).map(|(&c, b)| c as i128 * b[i] as i128).sum();
            i64::try_from(s).map_err(|_| Error::Overflow("descended vector".into()))
        })
        .collect::<Result<_>>()?;
    let norm = v.iter().map(|&x| (x as f64).powi(2)).sum::<f64>().sqrt();
    let kf = k as f64;
    let w_norm = w.iter().map(|&x| (x as f64).powi(2)).sum::<f64>().sqrt();
    Ok(Descent {
        v,
        norm,
        covolume,
        minkowski_bound: kf.sqrt() * covolume.powf(1.0 / kf),
        wedge_bound: kf.sqrt() * w_norm.powf(1.0 / kf),
        sublattice_basis: basis,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plane_examples() {
        // ∧²Z^3 in the basis e12, e13, e23
        let d = descend_to_vector(&[1, 0, 0], 3, 2).unwrap();
        assert_eq!(d.norm, 1.0);
        assert_eq!(d.v, vec![1, 0, 0]);
        let five = descend_to_vector(&[5, 0, 0], 3, 2).unwrap();
        assert_eq!(five.v, vec![1, 0, 0]);
        assert!((five.covolume - 1.0).abs() < 1e-12);
        assert!(five.norm <= five.minkowski_bound);
        assert!((five.wedge_bound - 2f64.sqrt() * 5f64.sqrt()).abs() < 1e-12);
        assert_eq!(descend_to_vector(&[6, 0, 0], 3, 2).unwrap().v, vec![1, 0, 0]);
    }

    #[test]
    fn rejects_indecomposable() {
        // e1∧e2 + e3∧e4 in ∧²Z^4: e12, e13, e14, e23, e24, e34
        assert_eq!(descend_to_vector(&[1, 0, 0, 0, 0, 1], 4, 2), Err(Error::NotDecomposable));
        assert_eq!(descend_to_vector(&[0, 0, 0], 3, 2), Err(Error::NotDecomposable));
    }

    #[test]
    fn vectors_descend_to_primitive_part() {
        let d = descend_to_vector(&[4, -6, 2], 3, 1).unwrap();
        assert_eq!(d.v.iter().map(|x| x.abs()).collect::<Vec<_>>(), vec![2, 3, 1]);
    }
}
