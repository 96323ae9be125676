//! LLL reduction and Fincke–Pohst enumeration for lattices of rank `k` in
//! `R^n`.
//!
//! A basis is stored as `diag(scale) · core` and lattice vectors are always
//! recomputed from integer coefficients with a compensated dot product. The
//! flow lattices `g_t u(φ) Z^n` are extremely skewed for large `t`, and
//! accumulating float row operations loses the short vectors.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{dot_compensated, sup_norm};

/// Lovász parameter used throughout.
pub const LLL_DELTA: f64 = 0.99;

/// Default cap on enumeration tree nodes.
pub const DEFAULT_NODE_BUDGET: u64 = 20_000_000;

#[derive(Clone, Debug, PartialEq)]
pub struct LatticeBasis {
    n: usize,
    k: usize,
    /// `n × k`, row-major.
    core: Vec<Vec<f64>>,
    scale: Vec<f64>,
}

impl LatticeBasis {
    /// Basis given by `k` vectors of length `n`.
    pub fn from_vectors(vectors: &[Vec<f64>]) -> Result<Self> {
        let k = vectors.len();
        let n = vectors.first().map_or(0, Vec::len);
        if k == 0 || n == 0 || k > n || vectors.iter().any(|v| v.len() != n) {
            return Err(Error::dim("need 1 <= k <= n vectors of equal length n"));
        }
        let core = (0..n).map(|i| vectors.iter().map(|v| v[i]).collect()).collect();
        Self::scaled(core, vec![1.0; n])
    }

    /// Basis whose `j`-th vector is `diag(scale) · core[.., j]`.
    pub fn scaled(core: Vec<Vec<f64>>, scale: Vec<f64>) -> Result<Self> {
        let n = core.len();
        let k = core.first().map_or(0, Vec::len);
        if n == 0 || k == 0 || k > n || scale.len() != n || core.iter().any(|r| r.len() != k) {
            return Err(Error::dim("core must be n x k with k <= n and one scale per row"));
        }
        if core.iter().flatten().chain(&scale).any(|x| !x.is_finite()) {
            return Err(Error::invalid("non-finite basis entry"));
        }
        Ok(LatticeBasis { n, k, core, scale })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.k
    }

    /// The lattice vector with integer coordinates `c`.
    pub fn vector(&self, c: &[i64]) -> Vec<f64> {
        let cf: Vec<f64> = c.iter().map(|&x| x as f64).collect();
        self.core.iter().zip(&self.scale).map(|(row, s)| s * dot_compensated(row, &cf)).collect()
    }

    pub fn vectors(&self) -> Vec<Vec<f64>> {
        (0..self.k).map(|j| self.vector(&unit(self.k, j))).collect()
    }
}

fn unit(k: usize, j: usize) -> Vec<i64> {
    let mut e = vec![0; k];
    e[j] = 1;
    e
}

fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

/// Gram–Schmidt data: `mu[i][j]` for `j < i` and squared norms `bstar[i]`.
#[derive(Clone, Debug)]
struct Gso {
    mu: Vec<Vec<f64>>,
    bstar: Vec<f64>,
}

fn gso(b: &[Vec<f64>]) -> Gso {
    let k = b.len();
    let mut star: Vec<Vec<f64>> = Vec::with_capacity(k);
    let mut mu = vec![vec![0.0; k]; k];
    let mut bstar = vec![0.0; k];
    for i in 0..k {
        let mut v = b[i].clone();
        for j in 0..i {
            mu[i][j] = if bstar[j] > 0.0 { dot(&b[i], &star[j]) / bstar[j] } else { 0.0 };
            for (x, y) in v.iter_mut().zip(&star[j]) {
                *x -= mu[i][j] * y;
            }
        }
        bstar[i] = dot(&v, &v);
        star.push(v);
    }
    Gso { mu, bstar }
}

/// A reduced basis together with the unimodular change of coordinates.
#[derive(Clone, Debug)]
pub struct Reduced {
    basis: LatticeBasis,
    /// `u[j]` holds the input coordinates of the `j`-th reduced vector.
    u: Vec<Vec<i64>>,
    vectors: Vec<Vec<f64>>,
    gso: Gso,
}

impl Reduced {
    pub fn vectors(&self) -> &[Vec<f64>] {
        &self.vectors
    }

    pub fn coefficients(&self) -> &[Vec<i64>] {
        &self.u
    }

    pub fn basis(&self) -> &LatticeBasis {
        &self.basis
    }

    /// `sqrt(det Gram)`, the covolume of the lattice.
    pub fn covolume(&self) -> f64 {
        self.gso.bstar.iter().map(|b| b.sqrt()).product()
    }

    /// Input coordinates of `Σ x_j · reduced_j`.
    pub fn to_input_coords(&self, x: &[i64]) -> Result<Vec<i64>> {
        let k = self.u.len();
        (0..k)
            .map(|i| {
                let s: i128 = x.iter().zip(&self.u).map(|(&xj, col)| xj as i128 * col[i] as i128).sum();
                i64::try_from(s).map_err(|_| Error::Overflow("lattice coordinates".into()))
            })
            .collect()
    }
}

fn combine(dst: &mut [i64], src: &[i64], r: i64) -> Result<()> {
    for (d, s) in dst.iter_mut().zip(src) {
        *d = s.checked_mul(r).and_then(|x| d.checked_sub(x)).ok_or_else(|| Error::Overflow("LLL coefficients".into()))?;
    }
    Ok(())
}

/// LLL with Lovász parameter [`LLL_DELTA`] and size reduction `|μ| ≤ 1/2`.
pub fn lll_reduce(basis: &LatticeBasis) -> Result<Reduced> {
    let k = basis.k;
    let mut u: Vec<Vec<i64>> = (0..k).map(|j| unit(k, j)).collect();
    let mut b: Vec<Vec<f64>> = u.iter().map(|c| basis.vector(c)).collect();
    let mut g = gso(&b);
    let scale = g.bstar.iter().cloned().fold(0.0, f64::max);
    if g.bstar.iter().any(|&x| !(x > scale * 1e-28)) {
        return Err(Error::Singular("basis vectors are linearly dependent".into()));
    }
    let mut i = 1;
    let mut iterations = 0u64;
    while i < k {
        iterations += 1;
        if iterations > 1_000_000 {
            return Err(Error::budget("LLL iterations", 1_000_000));
        }
        // size reduction, repeated while float rounding leaves |μ| > 1/2
        for _ in 0..32 {
            let mut changed = false;
            for j in (0..i).rev() {
                let r = g.mu[i][j].round();
                if r != 0.0 {
                    if r.abs() > 9.0e18 {
                        return Err(Error::Overflow("LLL coefficients".into()));
                    }
                    let (head, tail) = u.split_at_mut(i);
                    combine(&mut tail[0], &head[j], r as i64)?;
                    b[i] = basis.vector(&u[i]);
                    g = gso(&b);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let m = g.mu[i][i - 1];
        if g.bstar[i] >= (LLL_DELTA - m * m) * g.bstar[i - 1] {
            i += 1;
        } else {
            u.swap(i, i - 1);
            b.swap(i, i - 1);
            g = gso(&b);
            i = (i - 1).max(1);
        }
    }
    Ok(Reduced { basis: basis.clone(), u, vectors: b, gso: g })
}

/// Calls `f(x, norm²)` for every nonzero `x` (coordinates in the reduced
/// basis) with `‖Σ x_j b_j‖² ≤ radius2`, up to float tolerance.
fn enumerate(red: &Reduced, radius2: f64, budget: u64, f: &mut dyn FnMut(&[i64])) -> Result<()> {
    let k = red.vectors.len();
    let Gso { mu, bstar } = &red.gso;
    let r2 = radius2 * (1.0 + 1e-9);
    let mut x = vec![0i64; k];
    let mut nodes = 0u64;

    #[allow(clippy::too_many_arguments)]
    fn rec(
        i: usize,
        partial: f64,
        x: &mut [i64],
        mu: &[Vec<f64>],
        bstar: &[f64],
        r2: f64,
        nodes: &mut u64,
        budget: u64,
        f: &mut dyn FnMut(&[i64]),
    ) -> Result<()> {
        let k = x.len();
        let c: f64 = -(i + 1..k).map(|j| x[j] as f64 * mu[j][i]).sum::<f64>();
        let room = (r2 - partial).max(0.0);
        let w = (room / bstar[i]).sqrt();
        let lo = (c - w).ceil() as i64;
        let hi = (c + w).floor() as i64;
        for v in lo..=hi {
            *nodes += 1;
            if *nodes > budget {
                return Err(Error::budget("enumeration nodes", budget));
            }
            x[i] = v;
            let p = partial + (v as f64 - c).powi(2) * bstar[i];
            if p > r2 {
                continue;
            }
            if i == 0 {
                if x.iter().any(|&y| y != 0) {
                    f(x);
                }
            } else {
                rec(i - 1, p, x, mu, bstar, r2, nodes, budget, f)?;
            }
        }
        x[i] = 0;
        Ok(())
    }

    rec(k - 1, 0.0, &mut x, mu, bstar, r2, &mut nodes, budget, f)
}

/// A lattice point with its input coordinates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LatticePoint {
    pub coords: Vec<i64>,
    pub vector: Vec<f64>,
    pub norm: f64,
}

fn lex_cmp(a: &[f64], b: &[f64]) -> std::cmp::Ordering {
    a.iter().zip(b).map(|(x, y)| x.total_cmp(y)).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal)
}

/// Enumerated points of the ball of the given radius, as lattice points.
pub fn points_in_ball(red: &Reduced, radius: f64, budget: u64) -> Result<Vec<LatticePoint>> {
    let mut out = Vec::new();
    let mut err = None;
    enumerate(red, radius * radius, budget, &mut |x| {
        if err.is_some() {
            return;
        }
        match red.to_input_coords(x) {
            Ok(c) => {
                let v = red.basis.vector(&c);
                let norm = dot(&v, &v).sqrt();
                out.push(LatticePoint { coords: c, vector: v, norm });
            }
            Err(e) => err = Some(e),
        }
    })?;
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// Euclidean shortest nonzero vector; among ties the lexicographically
/// largest vector wins, so `e_1` is returned for `Z^n`.
pub fn shortest_vector(basis: &LatticeBasis) -> Result<LatticePoint> {
    if basis.k > 8 {
        return Err(Error::Unsupported(format!("shortest vectors need rank <= 8, got {}", basis.k)));
    }
    let red = lll_reduce(basis)?;
    shortest_of_reduced(&red, DEFAULT_NODE_BUDGET)
}

pub fn shortest_of_reduced(red: &Reduced, budget: u64) -> Result<LatticePoint> {
    let radius = red.vectors.iter().map(|v| dot(v, v).sqrt()).fold(f64::INFINITY, f64::min);
    let pts = points_in_ball(red, radius, budget)?;
    let min = pts.iter().map(|p| p.norm).fold(f64::INFINITY, f64::min);
    pts.into_iter()
        .filter(|p| p.norm <= min * (1.0 + 1e-12))
        .max_by(|a, b| lex_cmp(&a.vector, &b.vector))
        .ok_or_else(|| Error::Singular("no nonzero lattice point found".into()))
}

/// First minimum in the sup-norm, searched inside the Euclidean ball of
/// radius `√k · ‖v‖∞` around the Euclidean shortest vector `v`.
pub fn sup_min_of_reduced(red: &Reduced, shortest: &LatticePoint, budget: u64) -> Result<LatticePoint> {
    let s = sup_norm(&shortest.vector);
    let radius = s * (red.basis.n as f64).sqrt();
    let pts = points_in_ball(red, radius, budget)?;
    pts.into_iter()
        .min_by(|a, b| sup_norm(&a.vector).total_cmp(&sup_norm(&b.vector)).then_with(|| lex_cmp(&b.vector, &a.vector)))
        .ok_or_else(|| Error::Singular("no nonzero lattice point found".into()))
}

/// `#{v ∈ Λ \ {0} : ‖v‖∞ ≤ R}`.
pub fn siegel_count(basis: &LatticeBasis, r: f64, budget: u64) -> Result<u64> {
    siegel_count_reduced(&lll_reduce(basis)?, r, budget)
}

pub fn siegel_count_reduced(red: &Reduced, r: f64, budget: u64) -> Result<u64> {
    if !(r > 0.0) {
        return Err(Error::invalid("R must be positive"));
    }
    let radius = r * (red.basis.n as f64).sqrt();
    let mut count = 0u64;
    let mut err = None;
    enumerate(red, radius * radius, budget, &mut |x| {
        match red.to_input_coords(x) {
            Ok(c) => {
                if sup_norm(&red.basis.vector(&c)) <= r * (1.0 + 1e-12) {
                    count += 1;
                }
            }
            Err(e) => err = Some(e),
        }
    })?;
    match err {
        Some(e) => Err(e),
        None => Ok(count),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cols(v: &[&[f64]]) -> LatticeBasis {
        LatticeBasis::from_vectors(&v.iter().map(|c| c.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn identity_stays_identity() {
        let b = cols(&[&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[0.0, 0.0, 1.0]]);
        let red = lll_reduce(&b).unwrap();
        assert_eq!(red.vectors(), b.vectors().as_slice());
        let sv = shortest_vector(&b).unwrap();
        assert_eq!(sv.vector, vec![1.0, 0.0, 0.0]);
        assert_eq!(sv.norm, 1.0);
    }

    #[test]
    fn shear_reduces_to_unit_vectors() {
        let red = lll_reduce(&cols(&[&[1.0, 1e6], &[0.0, 1.0]])).unwrap();
        for v in red.vectors() {
            assert!((dot(v, v) - 1.0).abs() < 1e-12, "{v:?}");
        }
    }

    #[test]
    fn hexagonal_first_minimum() {
        let h = 3f64.sqrt() / 2.0;
        let sv = shortest_vector(&cols(&[&[1.0, 0.0], &[0.5, h]])).unwrap();
        assert!((sv.norm - 1.0).abs() < 1e-12);
        assert_eq!(siegel_count(&cols(&[&[1.0, 0.0], &[0.5, h]]), 1.0, 1000).unwrap(), 6);
    }

    #[test]
    fn siegel_counts_of_z2() {
        let z2 = cols(&[&[1.0, 0.0], &[0.0, 1.0]]);
        assert_eq!(siegel_count(&z2, 1.0, 1000).unwrap(), 8);
        assert_eq!(siegel_count(&z2, 0.5, 1000).unwrap(), 0);
        assert!(matches!(siegel_count(&z2, 1000.0, 100), Err(Error::Budget { .. })));
    }

    #[test]
    fn singular_and_oversized_inputs() {
        assert!(matches!(lll_reduce(&cols(&[&[1.0, 2.0], &[2.0, 4.0]])), Err(Error::Singular(_))));
        let nine: Vec<Vec<f64>> = (0..9).map(|j| (0..9).map(|i| (i == j) as u8 as f64).collect()).collect();
        assert!(matches!(shortest_vector(&LatticeBasis::from_vectors(&nine).unwrap()), Err(Error::Unsupported(_))));
    }

    #[test]
    fn rank_two_in_r3() {
        let b = cols(&[&[1.0, 1.0, 0.0], &[0.0, 3.0, 1.0]]);
        let red = lll_reduce(&b).unwrap();
        assert!((red.covolume() - 11f64.sqrt()).abs() < 1e-12);
        let sv = shortest_of_reduced(&red, 1000).unwrap();
        assert!((sv.norm - 2f64.sqrt()).abs() < 1e-12);
    }
}
