//! Diagonal flows, horospherical embeddings and curves in the expanding
//! horosphere.
//!
//! Conventions: `g_t = diag(e^{(n-1)t}, e^{-t}, …, e^{-t})`. The lattice at
//! sample `s` and time `t` is generated by the columns of `g_t · u(φ(s))`.

pub mod curve;

use nalgebra::DMatrix;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{rat, rat_int, ExactMatrix, Rational, Scalar};

pub use curve::{AffineSpanData, Curve, Monomial, Polynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FlowKind {
    /// The full flow `g_t`.
    G,
    /// The factor acting on the first `d` coordinates against the rest.
    B,
    /// The factor with `g_t = c_t b_t`.
    C,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowSpec {
    n: usize,
    d: usize,
    kind: FlowKind,
    exponents: Vec<Rational>,
}

impl FlowSpec {
    /// Builds the exponent vector for `kind`. `d` is ignored for [`FlowKind::G`].
    pub fn new(kind: FlowKind, n: usize, d: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::invalid(format!("n = {n} must be at least 2")));
        }
        if kind != FlowKind::G && !(2..n).contains(&d) {
            return Err(Error::invalid(format!("d = {d} outside 2..={}", n - 1)));
        }
        let (ni, di) = (n as i64, d as i64);
        let exponents = match kind {
            FlowKind::G => (0..n).map(|i| if i == 0 { rat_int(ni - 1) } else { rat_int(-1) }).collect(),
            FlowKind::B => (0..n).map(|i| if i < d { rat(ni - di, di) } else { rat_int(-1) }).collect(),
            FlowKind::C => (0..n)
                .map(|i| match i {
                    0 => rat(ni * di - ni, di),
                    i if i < d => rat(-ni, di),
                    _ => rat_int(0),
                })
                .collect(),
        };
        Ok(FlowSpec { n, d, kind, exponents })
    }

    pub fn g(n: usize) -> Result<Self> {
        Self::new(FlowKind::G, n, 0)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn kind(&self) -> FlowKind {
        self.kind
    }

    /// Exponents per unit time; they sum to zero.
    pub fn exponents(&self) -> &[Rational] {
        &self.exponents
    }

    pub fn exponents_f64(&self) -> Vec<f64> {
        self.exponents.iter().map(|e| e.to_f64().unwrap_or(f64::NAN)).collect()
    }

    /// Diagonal entries `e^{e_i t}`.
    pub fn diagonal(&self, t: f64) -> Vec<f64> {
        self.exponents_f64().into_iter().map(|e| (e * t).exp()).collect()
    }
}

/// The flow element at time `t` as a float diagonal matrix.
pub fn make_flow(spec: &FlowSpec, t: f64) -> DMatrix<f64> {
    DMatrix::from_diagonal(&nalgebra::DVector::from_vec(spec.diagonal(t)))
}

/// `u(v) = [[1, v], [0, I_{n-1}]]`.
pub fn u_row(v: &[Scalar]) -> ExactMatrix {
    let n = v.len() + 1;
    let mut m = ExactMatrix::identity(n);
    for (j, x) in v.iter().enumerate() {
        m[(0, j + 1)] = x.clone();
    }
    m
}

/// Float version of [`u_row`].
pub fn u_row_f64(v: &[f64]) -> DMatrix<f64> {
    let n = v.len() + 1;
    let mut m = DMatrix::identity(n, n);
    for (j, &x) in v.iter().enumerate() {
        m[(0, j + 1)] = x;
    }
    m
}

/// `g_A = [[I_d, A], [0, I_{n-d}]]` for a `d × (n-d)` matrix `A`.
pub fn g_of_a(a: &ExactMatrix, n: usize) -> Result<ExactMatrix> {
    let (d, m) = a.shape();
    if d + m != n {
        return Err(Error::dim(format!("A is {d}x{m}, expected d x (n-d) with n = {n}")));
    }
    if !(2..n).contains(&d) {
        return Err(Error::invalid(format!("d = {d} outside 2..={}", n - 1)));
    }
    let mut g = ExactMatrix::identity(n);
    for i in 0..d {
        for j in 0..m {
            g[(i, d + j)] = a[(i, j)].clone();
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flow_exponents() {
        let g = FlowSpec::g(3).unwrap();
        assert_eq!(g.exponents(), &[rat_int(2), rat_int(-1), rat_int(-1)]);
        assert!(FlowSpec::new(FlowKind::B, 4, 1).is_err());
        assert!(FlowSpec::new(FlowKind::C, 4, 4).is_err());
        for n in 3..=8 {
            for d in 2..n {
                let b = FlowSpec::new(FlowKind::B, n, d).unwrap();
                let c = FlowSpec::new(FlowKind::C, n, d).unwrap();
                let g = FlowSpec::g(n).unwrap();
                for i in 0..n {
                    assert_eq!(&b.exponents()[i] + &c.exponents()[i], g.exponents()[i]);
                }
                let sum: Rational = b.exponents().iter().sum();
                assert_eq!(sum, rat_int(0));
                let sum: Rational = c.exponents().iter().sum();
                assert_eq!(sum, rat_int(0));
            }
        }
    }

    #[test]
    fn flow_at_zero_and_one() {
        let g = FlowSpec::g(3).unwrap();
        assert_eq!(make_flow(&g, 0.0), DMatrix::identity(3, 3));
        let m = make_flow(&g, 1.0);
        let e = std::f64::consts::E;
        assert!((m[(0, 0)] - e * e).abs() < 1e-12);
        assert!((m[(1, 1)] - 1.0 / e).abs() < 1e-15);
        assert!((m.determinant() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn c_times_b_is_g() {
        let c = make_flow(&FlowSpec::new(FlowKind::C, 4, 2).unwrap(), 0.7);
        let b = make_flow(&FlowSpec::new(FlowKind::B, 4, 2).unwrap(), 0.7);
        let g = make_flow(&FlowSpec::g(4).unwrap(), 0.7);
        let cb = &c * &b;
        for i in 0..4 {
            assert!((cb[(i, i)] - g[(i, i)]).abs() <= 1e-12 * g[(i, i)].abs());
        }
    }

    #[test]
    fn u_row_group_law() {
        let s = |x: i64| Scalar::from_int(x);
        assert_eq!(u_row(&[s(0), s(0)]), ExactMatrix::identity(3));
        assert_eq!(&u_row(&[s(1), s(2)]) * &u_row(&[s(3), s(4)]), u_row(&[s(4), s(6)]));
        let e1 = vec![s(1), s(0), s(0)];
        assert_eq!(u_row(&[s(5), s(-7)]).mul_vec(&e1).unwrap(), e1);
    }

    #[test]
    fn g_of_a_row_action() {
        let a = ExactMatrix::parse("1/2;1/3").unwrap();
        let g = g_of_a(&a, 3).unwrap();
        assert_eq!(g.det().unwrap(), Scalar::one());
        let x = Scalar::from_frac(5, 7);
        let row = g.vec_mul(&[Scalar::one(), x.clone(), Scalar::zero()]).unwrap();
        assert_eq!(row[2], Scalar::from_frac(1, 2) + &x * &Scalar::from_frac(1, 3));
        assert_eq!(g_of_a(&ExactMatrix::zeros(2, 2), 4).unwrap(), ExactMatrix::identity(4));
        assert!(g_of_a(&a, 4).is_err());
    }
}
