//! Nearest point to the origin in the convex hull of finitely many rational
//! points.
//!
//! A candidate face `F` is accepted when the affine minimiser of `F` has
//! strictly positive barycentric weights and satisfies `⟨p, x⟩ ≥ ‖x‖²` for
//! every point `p`. That optimality certificate is always checked exactly.

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::linalg::{subsets, Rational};

/// Supports up to this size are solved by exact face enumeration.
pub const EXACT_FACE_LIMIT: usize = 12;

#[derive(Clone, Debug, PartialEq)]
pub struct NearestPoint {
    pub point: Vec<Rational>,
    pub dist2: Rational,
    /// Indices of the points spanning the minimal face containing `point`.
    pub face: Vec<usize>,
}

fn dot(x: &[Rational], y: &[Rational]) -> Rational {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

/// Unique solution of a square system, or `None` when singular.
fn solve(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        b.swap(col, piv);
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = &a[r][col] / &a[col][col];
                for c in col..n {
                    let t = &f * &a[col][c];
                    a[r][c] -= t;
                }
                let t = &f * &b[col];
                b[r] -= t;
            }
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

/// Barycentric weights of the point of least norm in the affine hull of
/// `face`; `None` when the face is affinely dependent.
fn affine_minimiser(points: &[Vec<Rational>], face: &[usize]) -> Option<Vec<Rational>> {
    let k = face.len();
    let mut a = vec![vec![Rational::zero(); k + 1]; k + 1];
    for (i, &fi) in face.iter().enumerate() {
        for (j, &fj) in face.iter().enumerate() {
            a[i][j] = dot(&points[fi], &points[fj]);
        }
        a[i][k] = Rational::one();
        a[k][i] = Rational::one();
    }
    let mut b = vec![Rational::zero(); k + 1];
    b[k] = Rational::one();
    let mut sol = solve(a, b)?;
    sol.truncate(k);
    Some(sol)
}

/// Exact check of a candidate face.
fn certify(points: &[Vec<Rational>], face: &[usize]) -> Option<NearestPoint> {
    let weights = affine_minimiser(points, face)?;
    if weights.iter().any(|w| !w.is_positive()) {
        return None;
    }
    let dim = points[0].len();
    let point: Vec<Rational> = (0..dim).map(|c| face.iter().zip(&weights).map(|(&f, w)| w * &points[f][c]).sum()).collect();
    let dist2 = dot(&point, &point);
    if points.iter().any(|p| dot(p, &point) < dist2) {
        return None;
    }
    Some(NearestPoint { point, dist2, face: face.to_vec() })
}

/// Exact enumeration of faces with at most `max_face` vertices.
pub fn nearest_by_faces(points: &[Vec<Rational>], max_face: usize) -> Option<NearestPoint> {
    (1..=max_face.min(points.len())).find_map(|k| subsets(points.len(), k).into_iter().find_map(|f| certify(points, &f)))
}

/// Wolfe's minimum-norm-point iteration in floats; returns the final corral.
fn wolfe_corral(points: &[Vec<f64>]) -> Vec<usize> {
    let fdot = |x: &[f64], y: &[f64]| x.iter().zip(y).map(|(a, b)| a * b).sum::<f64>();
    let scale = points.iter().map(|p| fdot(p, p)).fold(0.0, f64::max).max(1e-300);
    let tol = 1e-12 * scale;
    let start = (0..points.len()).min_by(|&i, &j| fdot(&points[i], &points[i]).total_cmp(&fdot(&points[j], &points[j]))).unwrap();
    let mut corral = vec![start];
    let mut w = vec![1.0];
    let mut x = points[start].clone();
    let combine = |corral: &[usize], w: &[f64]| -> Vec<f64> {
        (0..points[0].len()).map(|c| corral.iter().zip(w).map(|(&i, wi)| wi * points[i][c]).sum()).collect()
    };
    for _ in 0..10_000 {
        let xx = fdot(&x, &x);
        let j = (0..points.len()).min_by(|&a, &b| fdot(&x, &points[a]).total_cmp(&fdot(&x, &points[b]))).unwrap();
        if fdot(&x, &points[j]) >= xx - tol || corral.contains(&j) {
            break;
        }
        corral.push(j);
        w.push(0.0);
        loop {
            let k = corral.len();
            let mut a = nalgebra::DMatrix::<f64>::zeros(k + 1, k + 1);
            for r in 0..k {
                for c in 0..k {
                    a[(r, c)] = fdot(&points[corral[r]], &points[corral[c]]);
                }
                a[(r, k)] = 1.0;
                a[(k, r)] = 1.0;
            }
            let mut b = nalgebra::DVector::<f64>::zeros(k + 1);
            b[k] = 1.0;
            let Some(alpha) = a.lu().solve(&b) else {
                // dependent corral: drop the newest point
                corral.pop();
                w.pop();
                return corral;
            };
            if (0..k).all(|i| alpha[i] > 1e-14) {
                w = (0..k).map(|i| alpha[i]).collect();
                x = combine(&corral, &w);
                break;
            }
            let theta = (0..k)
                .filter(|&i| alpha[i] <= 1e-14)
                .map(|i| w[i] / (w[i] - alpha[i]))
                .fold(1.0, f64::min);
            for i in 0..k {
                w[i] = theta * alpha[i] + (1.0 - theta) * w[i];
            }
            let keep: Vec<usize> = (0..k).filter(|&i| w[i] > 1e-14).collect();
            corral = keep.iter().map(|&i| corral[i]).collect();
            w = keep.iter().map(|&i| w[i]).collect();
        }
    }
    corral
}

/// Exact nearest point. Small supports use face enumeration; larger ones
/// take the float corral and certify it, enumerating faces only when the
/// certificate fails. `max_face` bounds the affine dimension plus one.
pub fn nearest_point(points: &[Vec<Rational>], max_face: usize) -> NearestPoint {
    assert!(!points.is_empty(), "hull of an empty set");
    if points.len() > EXACT_FACE_LIMIT {
        let floats: Vec<Vec<f64>> =
            points.iter().map(|p| p.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect()).collect();
        let mut corral = wolfe_corral(&floats);
        corral.sort_unstable();
        if let Some(np) = certify(points, &corral) {
            return np;
        }
    }
    nearest_by_faces(points, max_face).expect("some face always carries the nearest point")
}
