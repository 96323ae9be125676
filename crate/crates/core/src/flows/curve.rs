//! Polynomial curves `φ: B → R^{n-1}` with exact coefficients.

use std::collections::BTreeMap;

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{ExactMatrix, Scalar};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Monomial {
    pub exps: Vec<u32>,
    pub coeff: Scalar,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Polynomial {
    pub monomials: Vec<Monomial>,
}

impl Polynomial {
    pub fn constant(c: Scalar, k: usize) -> Self {
        Polynomial { monomials: vec![Monomial { exps: vec![0; k], coeff: c }] }
    }

    /// `c0 + Σ c_i s_i`.
    pub fn affine(c0: Scalar, slopes: &[Scalar]) -> Self {
        let k = slopes.len();
        let mut monomials = vec![Monomial { exps: vec![0; k], coeff: c0 }];
        for (i, c) in slopes.iter().enumerate() {
            let mut exps = vec![0; k];
            exps[i] = 1;
            monomials.push(Monomial { exps, coeff: c.clone() });
        }
        Polynomial { monomials }
    }

    pub fn eval_exact(&self, s: &[Scalar]) -> Scalar {
        self.monomials.iter().fold(Scalar::zero(), |acc, m| {
            let term = m.exps.iter().zip(s).fold(m.coeff.clone(), |t, (&e, x)| t * x.pow(e));
            acc + term
        })
    }

    pub fn eval_f64(&self, s: &[f64]) -> f64 {
        self.monomials
            .iter()
            .map(|m| m.exps.iter().zip(s).fold(m.coeff.to_f64(), |t, (&e, &x)| t * x.powi(e as i32)))
            .sum()
    }
}

/// A polynomial map from a ball in `R^k` to `R^{n-1}`, sampled uniformly.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Curve {
    pub n: usize,
    pub k: usize,
    pub coords: Vec<Polynomial>,
    pub center: Vec<Scalar>,
    pub radius: Scalar,
}

/// Affine span `{(x, x̃A)}` of a curve after a coordinate permutation.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineSpanData {
    /// One plus the dimension of the span.
    pub d: usize,
    /// `permutation[i]` is the original coordinate placed at position `i`.
    pub permutation: Vec<usize>,
    /// `d × (n-d)`; row 0 holds constants, row `r` the coefficient of `x_r`.
    /// `None` when the span is all of `R^{n-1}`.
    pub a: Option<ExactMatrix>,
}

impl AffineSpanData {
    pub fn is_full(&self) -> bool {
        self.a.is_none()
    }

    /// Exact membership of a point of `R^{n-1}` (original coordinates).
    pub fn contains(&self, point: &[Scalar]) -> bool {
        let Some(a) = &self.a else {
            return true;
        };
        let permuted: Vec<Scalar> = self.permutation.iter().map(|&i| point[i].clone()).collect();
        let (x, rest) = permuted.split_at(self.d - 1);
        let mut xt = vec![Scalar::one()];
        xt.extend_from_slice(x);
        match a.vec_mul(&xt) {
            Ok(img) => img == rest,
            Err(_) => false,
        }
    }
}

impl Curve {
    pub fn new(n: usize, coords: Vec<Polynomial>, center: Vec<Scalar>, radius: Scalar) -> Result<Self> {
        let c = Curve { n, k: center.len(), coords, center, radius };
        c.validate()?;
        Ok(c)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let c: Curve = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        c.validate()?;
        Ok(c)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("curve serializes")
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::invalid("ambient dimension n must be at least 2"));
        }
        if self.coords.len() != self.n - 1 {
            return Err(Error::dim(format!("{} coordinates given, expected n-1 = {}", self.coords.len(), self.n - 1)));
        }
        if self.k == 0 || self.center.len() != self.k {
            return Err(Error::dim("center must have k >= 1 coordinates"));
        }
        if self.radius.signum() <= 0 {
            return Err(Error::invalid("radius must be positive"));
        }
        for p in &self.coords {
            if p.monomials.iter().any(|m| m.exps.len() != self.k) {
                return Err(Error::dim("monomial exponent length differs from k"));
            }
        }
        Ok(())
    }

    fn in_ball_exact(&self, s: &[Scalar]) -> bool {
        let r2 = s.iter().zip(&self.center).fold(Scalar::zero(), |acc, (x, c)| {
            let d = x - c;
            acc + &d * &d
        });
        r2 <= &self.radius * &self.radius
    }

    pub fn eval_exact(&self, s: &[Scalar]) -> Result<Vec<Scalar>> {
        if s.len() != self.k {
            return Err(Error::dim("parameter has wrong dimension"));
        }
        if !self.in_ball_exact(s) {
            return Err(Error::invalid("parameter outside the domain ball"));
        }
        Ok(self.coords.iter().map(|p| p.eval_exact(s)).collect())
    }

    pub fn eval_f64(&self, s: &[f64]) -> Result<Vec<f64>> {
        if s.len() != self.k {
            return Err(Error::dim("parameter has wrong dimension"));
        }
        let r = self.radius.to_f64();
        let dist2: f64 = s.iter().zip(&self.center).map(|(x, c)| (x - c.to_f64()).powi(2)).sum();
        if dist2 > r * r * (1.0 + 1e-12) {
            return Err(Error::invalid("parameter outside the domain ball"));
        }
        Ok(self.coords.iter().map(|p| p.eval_f64(s)).collect())
    }

    /// A point drawn uniformly from the domain ball.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        let r = self.radius.to_f64();
        let center: Vec<f64> = self.center.iter().map(Scalar::to_f64).collect();
        if self.k == 1 {
            return vec![center[0] + r * (2.0 * rng.random::<f64>() - 1.0)];
        }
        let dir: Vec<f64> = (0..self.k).map(|_| rng.sample(StandardNormal)).collect();
        let len = dir.iter().map(|x| x * x).sum::<f64>().sqrt();
        let rad = r * rng.random::<f64>().powf(1.0 / self.k as f64);
        center.iter().zip(&dir).map(|(c, x)| c + rad * x / len).collect()
    }

    /// Constant vector and the coefficient vectors of every nonconstant monomial.
    fn coefficient_vectors(&self) -> (Vec<Scalar>, Vec<Vec<Scalar>>) {
        let m = self.n - 1;
        let mut constant = vec![Scalar::zero(); m];
        let mut by_exp: BTreeMap<Vec<u32>, Vec<Scalar>> = BTreeMap::new();
        for (j, p) in self.coords.iter().enumerate() {
            for mono in &p.monomials {
                if mono.exps.iter().all(|&e| e == 0) {
                    constant[j] += &mono.coeff;
                } else {
                    by_exp.entry(mono.exps.clone()).or_insert_with(|| vec![Scalar::zero(); m])[j] += &mono.coeff;
                }
            }
        }
        let vectors = by_exp.into_values().filter(|v| v.iter().any(|x| !x.is_zero())).collect();
        (constant, vectors)
    }

    /// Exact affine span. Pivot coordinates come from exact row reduction of
    /// the nonconstant coefficient vectors, first admissible column wins.
    pub fn affine_span(&self) -> Result<AffineSpanData> {
        let m = self.n - 1;
        let (c0, vectors) = self.coefficient_vectors();
        if vectors.is_empty() {
            return Err(Error::invalid("constant curve has an affine span of dimension 0"));
        }
        let v = ExactMatrix::from_rows(vectors)?;
        let ech = v.rref();
        let pivots = ech.pivots.clone();
        let d = pivots.len() + 1;
        let rest: Vec<usize> = (0..m).filter(|c| !pivots.contains(c)).collect();
        let permutation: Vec<usize> = pivots.iter().chain(&rest).copied().collect();
        if d == self.n {
            return Ok(AffineSpanData { d, permutation, a: None });
        }
        let mut a = ExactMatrix::zeros(d, self.n - d);
        for (col, &j) in rest.iter().enumerate() {
            let mut alpha = c0[j].clone();
            for (r, &p) in pivots.iter().enumerate() {
                let beta = ech.reduced[(r, j)].clone();
                alpha -= &(&beta * &c0[p]);
                a[(r + 1, col)] = beta;
            }
            a[(0, col)] = alpha;
        }
        Ok(AffineSpanData { d, permutation, a: Some(a) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(x: &str) -> Scalar {
        x.parse().unwrap()
    }

    fn poly(terms: &[(u32, &str)]) -> Polynomial {
        Polynomial { monomials: terms.iter().map(|&(e, c)| Monomial { exps: vec![e], coeff: q(c) }).collect() }
    }

    fn curve(coords: Vec<Polynomial>) -> Curve {
        let n = coords.len() + 1;
        Curve::new(n, coords, vec![q("0")], q("10")).unwrap()
    }

    #[test]
    fn evaluation() {
        let parabola = curve(vec![poly(&[(1, "1")]), poly(&[(2, "1")])]);
        assert_eq!(parabola.eval_exact(&[q("1/2")]).unwrap(), vec![q("1/2"), q("1/4")]);
        let konst = curve(vec![poly(&[(0, "3")]), poly(&[(0, "r2")])]);
        assert_eq!(konst.eval_exact(&[q("1")]).unwrap(), vec![q("3"), q("r2")]);
        let line = curve(vec![poly(&[(1, "1")]), poly(&[(0, "1/2"), (1, "1/3")])]);
        assert_eq!(line.eval_exact(&[q("3")]).unwrap(), vec![q("3"), q("3/2")]);
        assert!(line.eval_exact(&[q("11")]).is_err());
    }

    #[test]
    fn span_examples() {
        let line = curve(vec![poly(&[(1, "1")]), poly(&[(0, "1/2"), (1, "1/3")])]);
        let span = line.affine_span().unwrap();
        assert_eq!(span.d, 2);
        assert_eq!(span.a.unwrap(), ExactMatrix::parse("1/2;1/3").unwrap());

        let parabola = curve(vec![poly(&[(1, "1")]), poly(&[(2, "1")])]);
        let span = parabola.affine_span().unwrap();
        assert_eq!(span.d, 3);
        assert!(span.is_full());

        let diag = curve(vec![poly(&[(1, "1")]), poly(&[(1, "2")])]);
        assert_eq!(diag.affine_span().unwrap().a.unwrap(), ExactMatrix::parse("0;2").unwrap());

        let konst = curve(vec![poly(&[(0, "1")]), poly(&[(0, "2")])]);
        assert!(konst.affine_span().is_err());
    }

    #[test]
    fn span_with_permutation() {
        // φ(s) = (1, s, 2s + 1/2): first coordinate is constant, so the pivot is coordinate 1
        let c = curve(vec![poly(&[(0, "1")]), poly(&[(1, "1")]), poly(&[(0, "1/2"), (1, "2")])]);
        let span = c.affine_span().unwrap();
        assert_eq!(span.d, 2);
        assert_eq!(span.permutation, vec![1, 0, 2]);
        for s in ["0", "1/3", "-2"] {
            assert!(span.contains(&c.eval_exact(&[q(s)]).unwrap()));
        }
        assert!(!span.contains(&[q("1"), q("0"), q("1")]));
    }

    #[test]
    fn json_roundtrip() {
        let text = r#"{"n":3,"k":1,"coords":[{"monomials":[{"exps":[1],"coeff":"1"}]},
            {"monomials":[{"exps":[2],"coeff":1}]}],"center":["0"],"radius":"1"}"#;
        let c = Curve::from_json(text).unwrap();
        assert_eq!(Curve::from_json(&c.to_json()).unwrap(), c);
        assert!(Curve::from_json(r#"{"n":3,"k":1,"coords":[],"center":["0"],"radius":"1"}"#).is_err());
    }
}
