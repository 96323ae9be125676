//! Exact scalar and matrix arithmetic, sup-norms, exterior powers and
//! Pfaffians.

pub mod integer;
pub mod matrix;
pub mod pfaffian;
pub mod scalar;
pub mod wedge;

pub use matrix::ExactMatrix;
pub use pfaffian::{pfaffian, two_form_matrix};
pub use scalar::{parse_rational, rat, rat_int, Rational, Scalar};
pub use wedge::{binomial, subsets, sup_norm, sup_norm_exact, wedge_matrix, wedge_vector, WedgeIndex};

/// Error-free `a·b = p + e` via fused multiply-add.
#[inline]
pub(crate) fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

#[inline]
pub(crate) fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

/// Dot product in twice the working precision (Ogita–Rump–Oishi `Dot2`).
pub fn dot_compensated(x: &[f64], y: &[f64]) -> f64 {
    let mut s = 0.0;
    let mut c = 0.0;
    for (&a, &b) in x.iter().zip(y) {
        let (p, pe) = two_prod(a, b);
        let (t, te) = two_sum(s, p);
        s = t;
        c += pe + te;
    }
    s + c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensated_dot_recovers_cancellation() {
        let x = [1e16, 1.0, -1e16];
        let y = [1.0, 1.0, 1.0];
        assert_eq!(dot_compensated(&x, &y), 1.0);
    }
}
