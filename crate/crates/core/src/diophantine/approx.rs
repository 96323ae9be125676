//! Best approximations `min ‖Aq + p‖` over integer `q` in sup-norm shells.
//!
//! Shell `h` is `{q ∈ Z^l : ‖q‖ = h}` modulo `q ~ -q`. Representatives have
//! their last nonzero coordinate positive and are visited in colexicographic
//! order (last coordinate most significant), so `e_1` is the first vector of
//! shell 1. Shells are evaluated in parallel chunks and merged in order.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{dot_compensated, ExactMatrix, Scalar};

/// Default cap on the number of `q` vectors a search may visit.
pub const DEFAULT_BUDGET: u64 = 50_000_000;

const CHUNK: usize = 2048;

#[derive(Clone, Debug)]
enum RowForm {
    Float(Vec<f64>),
    /// Row equals `nums / den` with everything fitting comfortably in i128.
    Small { nums: Vec<i128>, den: i128 },
    Big { nums: Vec<BigInt>, den: BigInt },
}

/// The matrix `A ∈ M_{m,l}` in a form suited to fast residual evaluation.
#[derive(Clone, Debug)]
pub struct ApproxTarget {
    m: usize,
    l: usize,
    rows: Vec<RowForm>,
    exact: bool,
}

/// `q` is nonzero; `p` is the nearest-integer choice; `residual = ‖Aq + p‖`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ApproxRecord {
    pub qnorm: u64,
    pub q: Vec<i64>,
    pub p: Vec<i64>,
    pub residual: f64,
}

impl ApproxRecord {
    /// `residual · ‖q‖^r`.
    pub fn quality(&self, r: f64) -> f64 {
        self.residual * (self.qnorm as f64).powf(r)
    }
}

impl ApproxTarget {
    pub fn from_f64(rows: &[Vec<f64>]) -> Result<Self> {
        let m = rows.len();
        let l = rows.first().map_or(0, Vec::len);
        if m == 0 || l == 0 || rows.iter().any(|r| r.len() != l) {
            return Err(Error::dim("approximation target must be a nonempty rectangular matrix"));
        }
        if rows.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::invalid("non-finite matrix entry"));
        }
        Ok(ApproxTarget { m, l, rows: rows.iter().map(|r| RowForm::Float(r.clone())).collect(), exact: false })
    }

    /// Rational matrices are kept exact; anything else is embedded in `f64`.
    pub fn from_exact(a: &ExactMatrix) -> Result<Self> {
        if !a.is_rational() {
            let rows: Vec<Vec<f64>> = (0..a.rows()).map(|i| a.row(i).iter().map(Scalar::to_f64).collect()).collect();
            return Self::from_f64(&rows);
        }
        let rows = (0..a.rows())
            .map(|i| {
                let row: Vec<_> = a.row(i).iter().map(|x| x.as_rational().unwrap().clone()).collect();
                let den = row.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
                let nums: Vec<BigInt> = row.iter().map(|r| (r * &den).to_integer()).collect();
                RowForm::Big { nums, den }
            })
            .collect();
        Ok(ApproxTarget { m: a.rows(), l: a.cols(), rows, exact: true })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    /// Switches rows to i128 arithmetic when `|q_j| ≤ hmax` cannot overflow.
    fn specialised(&self, hmax: u64) -> Self {
        let limit = BigInt::from(1u128 << 120);
        let rows = self
            .rows
            .iter()
            .map(|row| match row {
                RowForm::Big { nums, den } => {
                    let bound: BigInt =
                        nums.iter().map(|x| x.abs()).sum::<BigInt>() * BigInt::from(hmax) + den * BigInt::from(4);
                    if bound < limit {
                        RowForm::Small {
                            nums: nums.iter().map(|x| x.to_i128().unwrap()).collect(),
                            den: den.to_i128().unwrap(),
                        }
                    } else {
                        row.clone()
                    }
                }
                other => other.clone(),
            })
            .collect();
        ApproxTarget { rows, ..self.clone() }
    }

    /// `(p, residual)` for one `q`, or an overflow error for `p`.
    pub fn evaluate(&self, q: &[i64]) -> Result<(Vec<i64>, f64)> {
        let mut p = Vec::with_capacity(self.m);
        let mut worst = 0.0f64;
        for row in &self.rows {
            let (pi, ri) = eval_row(row, q)?;
            p.push(pi);
            worst = worst.max(ri);
        }
        Ok((p, worst))
    }
}

fn eval_row(row: &RowForm, q: &[i64]) -> Result<(i64, f64)> {
    match row {
        RowForm::Float(a) => {
            let qf: Vec<f64> = q.iter().map(|&x| x as f64).collect();
            let x = dot_compensated(a, &qf);
            let k = x.round();
            let scale: f64 = a.iter().zip(&qf).map(|(a, q)| (a * q).abs()).sum();
            let mut res = (x - k).abs();
            // below the rounding error of the dot product: treat as an exact hit
            if res <= 4.0 * f64::EPSILON * scale {
                res = 0.0;
            }
            if k.abs() > 9.0e18 {
                return Err(Error::Overflow("nearest integer p".into()));
            }
            Ok((-(k as i64), res))
        }
        RowForm::Small { nums, den } => {
            let s: i128 = nums.iter().zip(q).map(|(a, &b)| a * b as i128).sum();
            let k = (2 * s + den).div_euclid(2 * den);
            let rem = (s - k * den).abs();
            let p = i64::try_from(-k).map_err(|_| Error::Overflow("nearest integer p".into()))?;
            Ok((p, rem as f64 / *den as f64))
        }
        RowForm::Big { nums, den } => {
            let s: BigInt = nums.iter().zip(q).map(|(a, &b)| a * BigInt::from(b)).sum();
            let two = BigInt::from(2);
            let k = (&two * &s + den).div_floor(&(&two * den));
            let rem = (&s - &k * den).abs();
            let p = (-k).to_i64().ok_or_else(|| Error::Overflow("nearest integer p".into()))?;
            let res = num_rational::BigRational::new(rem, den.clone()).to_f64().unwrap_or(f64::NAN);
            Ok((p, res))
        }
    }
}

/// Number of `q` (modulo sign) with `1 ≤ ‖q‖ ≤ h` in dimension `l`.
pub fn count_up_to(h: u64, l: usize) -> Option<u64> {
    let side = 2u64.checked_mul(h)?.checked_add(1)?;
    let mut total: u64 = 1;
    for _ in 0..l {
        total = total.checked_mul(side)?;
    }
    Some((total - 1) / 2)
}

/// Calls `f` on each canonical representative of shell `h`, in order.
pub fn for_each_in_shell(h: u64, l: usize, mut f: impl FnMut(&[i64])) {
    fn rec(i: usize, h: i64, hit: bool, leading_zero: bool, q: &mut [i64], f: &mut dyn FnMut(&[i64])) {
        // i counts down from the most significant coordinate
        let lo = if leading_zero { 0 } else { -h };
        if i == 0 {
            if hit {
                for v in lo..=h {
                    if leading_zero && v == 0 {
                        continue;
                    }
                    q[0] = v;
                    f(q);
                }
            } else {
                for v in [-h, h] {
                    if v < lo {
                        continue;
                    }
                    q[0] = v;
                    f(q);
                }
            }
            return;
        }
        for v in lo..=h {
            q[i] = v;
            rec(i - 1, h, hit || v.abs() == h, leading_zero && v == 0, q, f);
        }
    }
    if h == 0 || l == 0 {
        return;
    }
    let mut q = vec![0i64; l];
    rec(l - 1, h as i64, false, true, &mut q, &mut f);
}

/// Best record of one shell; the first vector wins ties.
fn shell_best(target: &ApproxTarget, h: u64) -> Result<ApproxRecord> {
    let mut best: Option<ApproxRecord> = None;
    let mut err = None;
    for_each_in_shell(h, target.l, |q| {
        if err.is_some() {
            return;
        }
        match target.evaluate(q) {
            Ok((p, residual)) => {
                if best.as_ref().is_none_or(|b| residual < b.residual) {
                    best = Some(ApproxRecord { qnorm: h, q: q.to_vec(), p, residual });
                }
            }
            Err(e) => err = Some(e),
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(best.expect("shells are nonempty")),
    }
}

/// Streams the best record of every shell `1..=hmax` to `f`, in shell order.
/// `f` returns `false` to stop early.
pub fn scan_shells(
    target: &ApproxTarget,
    hmax: u64,
    budget: u64,
    mut f: impl FnMut(&ApproxRecord) -> bool,
) -> Result<()> {
    if hmax == 0 {
        return Err(Error::invalid("search bound must be at least 1"));
    }
    let total = count_up_to(hmax, target.l).unwrap_or(u64::MAX);
    if total > budget {
        return Err(Error::budget(format!("{total} candidate vectors"), budget));
    }
    let target = target.specialised(hmax);
    let mut start = 1u64;
    while start <= hmax {
        let end = (start + CHUNK as u64 - 1).min(hmax);
        let chunk: Vec<ApproxRecord> =
            (start..=end).into_par_iter().map(|h| shell_best(&target, h)).collect::<Result<_>>()?;
        for rec in &chunk {
            if !f(rec) {
                return Ok(());
            }
        }
        start = end + 1;
    }
    Ok(())
}

/// Successive minima: per-shell best records with strictly decreasing
/// residual, up to `‖q‖ ≤ qmax`. Stops after an exact hit.
pub fn best_approximations(target: &ApproxTarget, qmax: u64, budget: u64) -> Result<Vec<ApproxRecord>> {
    let mut out: Vec<ApproxRecord> = Vec::new();
    scan_shells(target, qmax, budget, |rec| {
        if out.last().is_none_or(|last| rec.residual < last.residual) {
            out.push(rec.clone());
        }
        rec.residual > 0.0
    })?;
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExponentEstimate {
    /// Least-squares slope of `-log residual` against `log ‖q‖`.
    pub estimate: Option<f64>,
    /// Set when some `q` gives residual zero.
    pub infinite: bool,
    pub points: usize,
}

pub fn exponent_from_records(records: &[ApproxRecord]) -> ExponentEstimate {
    if records.iter().any(|r| r.residual == 0.0) {
        return ExponentEstimate { estimate: None, infinite: true, points: records.len() };
    }
    let pts: Vec<(f64, f64)> = records.iter().map(|r| ((r.qnorm as f64).ln(), -r.residual.ln())).collect();
    let k = pts.len() as f64;
    let estimate = if pts.len() >= 2 {
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        (sxx > 0.0).then(|| sxy / sxx)
    } else {
        None
    };
    ExponentEstimate { estimate, infinite: false, points: pts.len() }
}

pub fn exponent_estimate(target: &ApproxTarget, qmax: u64, budget: u64) -> Result<ExponentEstimate> {
    if qmax < 10 {
        return Err(Error::invalid("exponent estimates need qmax >= 10"));
    }
    Ok(exponent_from_records(&best_approximations(target, qmax, budget)?))
}

/// Exact zero-residual pair for a rational matrix: `q = L e_1` where `L`
/// clears the denominators of the first column, and `p = -A q`.
pub fn rational_certificate(a: &ExactMatrix) -> Result<(Vec<BigInt>, Vec<BigInt>)> {
    if !a.is_rational() {
        return Err(Error::invalid("rational certificate needs a rational matrix"));
    }
    let col = a.col(0);
    let den = col.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.as_rational().unwrap().denom()));
    let mut q = vec![BigInt::zero(); a.cols()];
    q[0] = den.clone();
    let p = col.iter().map(|x| -(x.as_rational().unwrap() * &den).to_integer()).collect();
    Ok((p, q))
}
