//! Instability over the diagonal torus of `SL_n`: weight supports, the
//! pairing `m(v, λ)`, the optimum `B_v` with its destabilising cocharacter,
//! and the parabolic attached to a cocharacter.
//!
//! Cocharacters are sum-zero integer vectors with the Euclidean norm.
//! `B_v` is the distance from the origin to the convex hull of the support
//! weights projected onto the sum-zero hyperplane.

pub mod hull;

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{binomial, rat_int, subsets, Rational, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind", content = "k")]
pub enum Rep {
    Standard,
    Wedge(usize),
    /// Trace-zero matrices, stored row-major with `n²` coordinates.
    Adjoint,
}

impl Rep {
    pub fn dim(self, n: usize) -> usize {
        match self {
            Rep::Standard => n,
            Rep::Wedge(k) => binomial(n, k),
            Rep::Adjoint => n * n,
        }
    }

    /// Weight of each monomial basis element, in storage order.
    pub fn weights(self, n: usize) -> Result<Vec<WeightVector>> {
        match self {
            Rep::Standard => Ok((0..n).map(|i| WeightVector::unit(n, i)).collect()),
            Rep::Wedge(k) => {
                if k == 0 || k > n {
                    return Err(Error::Unsupported(format!("wedge({k}) of a rank-{n} space")));
                }
                Ok(subsets(n, k)
                    .into_iter()
                    .map(|s| {
                        let mut w = vec![0; n];
                        for i in s {
                            w[i] = 1;
                        }
                        WeightVector(w)
                    })
                    .collect())
            }
            Rep::Adjoint => Ok((0..n * n)
                .map(|r| {
                    let (i, j) = (r / n, r % n);
                    let mut w = vec![0; n];
                    w[i] += 1;
                    w[j] -= 1;
                    WeightVector(w)
                })
                .collect()),
        }
    }
}

impl std::str::FromStr for Rep {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "standard" => Ok(Rep::Standard),
            "adjoint" => Ok(Rep::Adjoint),
            _ => s
                .strip_prefix("wedge")
                .map(|k| k.trim_matches(|c| c == '(' || c == ')' || c == ':'))
                .and_then(|k| k.parse().ok())
                .map(Rep::Wedge)
                .ok_or_else(|| Error::Unsupported(format!("representation '{s}'"))),
        }
    }
}

/// Exponent vector of a monomial basis element.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct WeightVector(pub Vec<i64>);

impl WeightVector {
    fn unit(n: usize, i: usize) -> Self {
        let mut w = vec![0; n];
        w[i] = 1;
        WeightVector(w)
    }

    pub fn pair(&self, lambda: &Cocharacter) -> i64 {
        self.0.iter().zip(&lambda.0).map(|(a, b)| a * b).sum()
    }

    /// Projection onto the sum-zero hyperplane.
    pub fn projected(&self) -> Vec<Rational> {
        let n = self.0.len() as i64;
        let sum: i64 = self.0.iter().sum();
        self.0.iter().map(|&x| Rational::new(BigInt::from(x * n - sum), BigInt::from(n))).collect()
    }
}

/// Sum-zero integer cocharacter of the diagonal torus.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cocharacter(Vec<i64>);

impl Cocharacter {
    pub fn new(v: Vec<i64>) -> Result<Self> {
        if v.iter().sum::<i64>() != 0 {
            return Err(Error::invalid(format!("cocharacter {v:?} does not sum to zero")));
        }
        Ok(Cocharacter(v))
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn norm(&self) -> f64 {
        (self.norm2() as f64).sqrt()
    }

    pub fn norm2(&self) -> i64 {
        self.0.iter().map(|x| x * x).sum()
    }

    pub fn is_indivisible(&self) -> bool {
        self.0.iter().fold(0i64, |g, &x| g.gcd(&x)) == 1
    }

    pub fn scaled(&self, k: i64) -> Cocharacter {
        Cocharacter(self.0.iter().map(|x| x * k).collect())
    }
}

impl fmt::Display for Cocharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A vector in one of the supported representations, in its monomial basis.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RepVector {
    pub n: usize,
    pub rep: Rep,
    pub coords: Vec<Scalar>,
}

impl RepVector {
    pub fn new(n: usize, rep: Rep, coords: Vec<Scalar>) -> Result<Self> {
        if n < 2 {
            return Err(Error::invalid("n must be at least 2"));
        }
        if coords.len() != rep.dim(n) {
            return Err(Error::dim(format!("{:?} of SL_{n} has dimension {}, got {}", rep, rep.dim(n), coords.len())));
        }
        if rep == Rep::Adjoint {
            let trace = (0..n).fold(Scalar::zero(), |acc, i| acc + &coords[i * n + i]);
            if !trace.is_zero() {
                return Err(Error::invalid("adjoint vectors must be trace-free"));
            }
        }
        Ok(RepVector { n, rep, coords })
    }

    pub fn from_ints(n: usize, rep: Rep, coords: &[i64]) -> Result<Self> {
        Self::new(n, rep, coords.iter().map(|&x| Scalar::from_int(x)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }
}

/// Weights of the nonzero coordinates.
pub fn weight_support(v: &RepVector) -> Result<BTreeSet<WeightVector>> {
    let weights = v.rep.weights(v.n)?;
    Ok(weights.into_iter().zip(&v.coords).filter(|(_, c)| !c.is_zero()).map(|(w, _)| w).collect())
}

/// `min ⟨χ, λ⟩` over the support of `v`.
pub fn m_value(v: &RepVector, lambda: &Cocharacter) -> Result<i64> {
    if lambda.0.len() != v.n {
        return Err(Error::dim("cocharacter length differs from n"));
    }
    weight_support(v)?.iter().map(|w| w.pair(lambda)).min().ok_or_else(|| Error::invalid("m(v, λ) needs v != 0"))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KempfOptimum {
    pub unstable: bool,
    /// `B_v²` as an exact rational.
    pub b_squared: String,
    pub b: f64,
    pub lambda_star: Option<Vec<i64>>,
    /// Block sizes of the parabolic of `λ*`.
    pub blocks: Option<Vec<usize>>,
    /// Nearest hull point, exact.
    #[serde(skip)]
    pub nearest: Vec<Rational>,
}

pub fn kempf_optimum(v: &RepVector) -> Result<KempfOptimum> {
    let support = weight_support(v)?;
    if support.is_empty() {
        return Err(Error::invalid("the optimum is undefined for v = 0"));
    }
    let points: Vec<Vec<Rational>> = support.iter().map(WeightVector::projected).collect();
    let np = hull::nearest_point(&points, v.n);
    let b = np.dist2.to_f64().unwrap_or(f64::NAN).sqrt();
    if np.dist2.is_zero() {
        return Ok(KempfOptimum {
            unstable: false,
            b_squared: "0".into(),
            b: 0.0,
            lambda_star: None,
            blocks: None,
            nearest: np.point,
        });
    }
    let lambda = primitive_on_ray(&np.point);
    let blocks = parabolic_of(&lambda).block_sizes();
    Ok(KempfOptimum {
        unstable: true,
        b_squared: np.dist2.to_string(),
        b,
        lambda_star: Some(lambda.0),
        blocks: Some(blocks),
        nearest: np.point,
    })
}

/// The indivisible integer vector on the ray through a nonzero rational point.
fn primitive_on_ray(x: &[Rational]) -> Cocharacter {
    let den = x.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let ints: Vec<BigInt> = x.iter().map(|r| (r * &den).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, a| acc.gcd(a));
    Cocharacter(ints.iter().map(|a| (a / &g).to_i64().expect("cocharacter entries fit in i64")).collect())
}

/// `max m(v, λ)/‖λ‖` over sum-zero integer `λ` with `‖λ‖ ≤ radius`.
/// Exhaustive; meant for small `n`.
pub fn brute_force_optimum(v: &RepVector, radius: i64) -> Result<(f64, Option<Cocharacter>)> {
    let n = v.n;
    let support: Vec<WeightVector> = weight_support(v)?.into_iter().collect();
    if support.is_empty() {
        return Err(Error::invalid("the optimum is undefined for v = 0"));
    }
    let r2 = radius * radius;
    let mut best = (f64::NEG_INFINITY, None);
    let mut lam = vec![0i64; n];
    fn rec(
        i: usize,
        used2: i64,
        sum: i64,
        lam: &mut [i64],
        r2: i64,
        radius: i64,
        support: &[WeightVector],
        best: &mut (f64, Option<Cocharacter>),
    ) {
        let n = lam.len();
        if i == n - 1 {
            let last = -sum;
            if used2 + last * last > r2 {
                return;
            }
            lam[i] = last;
            if lam.iter().all(|&x| x == 0) {
                return;
            }
            let c = Cocharacter(lam.to_vec());
            let m = support.iter().map(|w| w.pair(&c)).min().unwrap();
            let q = m as f64 / c.norm();
            if q > best.0 {
                *best = (q, Some(c));
            }
            return;
        }
        for x in -radius..=radius {
            if used2 + x * x > r2 {
                continue;
            }
            lam[i] = x;
            rec(i + 1, used2 + x * x, sum + x, lam, r2, radius, support, best);
        }
    }
    rec(0, 0, 0, &mut lam, r2, radius, &support, &mut best);
    Ok(best)
}

/// `P(λ)`: entry `(i, j)` is allowed iff `λ_i ≥ λ_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Parabolic {
    /// Level sets of `λ` in order of first appearance.
    pub blocks: Vec<Vec<usize>>,
    pub mask: Vec<Vec<bool>>,
}

impl Parabolic {
    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }
}

pub fn parabolic_of(lambda: &Cocharacter) -> Parabolic {
    let l = &lambda.0;
    let mut blocks: Vec<(i64, Vec<usize>)> = Vec::new();
    for (i, &x) in l.iter().enumerate() {
        match blocks.iter_mut().find(|(v, _)| *v == x) {
            Some((_, b)) => b.push(i),
            None => blocks.push((x, vec![i])),
        }
    }
    let mask = l.iter().map(|&a| l.iter().map(|&b| a >= b).collect()).collect();
    Parabolic { blocks: blocks.into_iter().map(|(_, b)| b).collect(), mask }
}

/// `⟨χ, x⟩` for a rational point, used to check optimality of `λ*`.
pub fn pairing_rational(w: &WeightVector, x: &[Rational]) -> Rational {
    w.0.iter().zip(x).map(|(&a, b)| rat_int(a) * b).sum()
}
