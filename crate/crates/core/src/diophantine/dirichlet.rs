//! Exhaustive solvability of the Dirichlet systems
//!
//! - vector form: `‖q x + p‖ ≤ δ/T` with `1 ≤ q ≤ T^n`,
//! - linear form: `|x·q + p| ≤ δ T^{-n}` with `0 < ‖q‖ ≤ T`,
//!
//! over a grid of `T`. Inputs are exact; floats enter as their binary values.

use serde::{Deserialize, Serialize};

use super::approx::{count_up_to, scan_shells, ApproxRecord, ApproxTarget, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::linalg::{ExactMatrix, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DirichletForm {
    Vector,
    LinearForm,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DirichletQuery {
    pub form: DirichletForm,
    pub x: Vec<Scalar>,
    pub delta: f64,
    pub t_grid: Vec<f64>,
    #[serde(default = "default_budget")]
    pub budget: u64,
}

fn default_budget() -> u64 {
    DEFAULT_BUDGET
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DirichletRow {
    pub t: f64,
    /// Largest admissible `|q|` (vector form) or `‖q‖` (linear form).
    pub bound: u64,
    pub threshold: f64,
    pub solvable: bool,
    /// Best pair found within the bound.
    pub q: Vec<i64>,
    pub p: Vec<i64>,
    pub residual: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DirichletVerdict {
    ImprovableEvidence,
    NoEvidence,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DirichletReport {
    pub form: DirichletForm,
    pub delta: f64,
    pub rows: Vec<DirichletRow>,
    /// The tail is the last half of the grid.
    pub tail_start: f64,
    pub verdict: DirichletVerdict,
}

impl DirichletQuery {
    pub fn from_f64(form: DirichletForm, x: &[f64], delta: f64, t_grid: Vec<f64>) -> Result<Self> {
        let x = x
            .iter()
            .map(|&v| Scalar::from_f64(v).ok_or_else(|| Error::invalid("non-finite coordinate")))
            .collect::<Result<_>>()?;
        Ok(DirichletQuery { form, x, delta, t_grid, budget: DEFAULT_BUDGET })
    }

    fn validate(&self) -> Result<()> {
        if self.x.is_empty() {
            return Err(Error::invalid("x must be nonempty"));
        }
        if !(self.delta > 0.0 && self.delta <= 1.0) {
            return Err(Error::invalid(format!("delta = {} outside (0, 1]", self.delta)));
        }
        if self.t_grid.is_empty() || self.t_grid.iter().any(|&t| !(t > 1.0 && t.is_finite())) {
            return Err(Error::invalid("T grid must be nonempty with every T > 1"));
        }
        if self.t_grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid("T grid must be strictly increasing"));
        }
        Ok(())
    }

    fn bound(&self, t: f64) -> u64 {
        let n = self.x.len() as i32;
        match self.form {
            DirichletForm::Vector => t.powi(n).floor() as u64,
            DirichletForm::LinearForm => t.floor() as u64,
        }
    }

    fn threshold(&self, t: f64) -> f64 {
        match self.form {
            DirichletForm::Vector => self.delta / t,
            DirichletForm::LinearForm => self.delta * t.powi(-(self.x.len() as i32)),
        }
    }
}

pub fn dirichlet_solve(query: &DirichletQuery) -> Result<DirichletReport> {
    query.validate()?;
    let a = match query.form {
        DirichletForm::Vector => ExactMatrix::column(query.x.clone()),
        DirichletForm::LinearForm => ExactMatrix::from_rows(vec![query.x.clone()])?,
    };
    let target = ApproxTarget::from_exact(&a)?;
    let hmax = query.bound(*query.t_grid.last().unwrap());
    let total = count_up_to(hmax, target.l()).unwrap_or(u64::MAX);
    if total > query.budget {
        return Err(Error::budget(format!("{total} candidate vectors"), query.budget));
    }

    // running best per T, filled in one increasing sweep over shells
    let bounds: Vec<u64> = query.t_grid.iter().map(|&t| query.bound(t)).collect();
    let mut best_at: Vec<Option<ApproxRecord>> = vec![None; bounds.len()];
    let mut running: Option<ApproxRecord> = None;
    let mut next = 0;
    while next < bounds.len() && bounds[next] == 0 {
        next += 1;
    }
    if hmax > 0 {
        scan_shells(&target, hmax, query.budget, |rec| {
            if running.as_ref().is_none_or(|b| rec.residual < b.residual) {
                running = Some(rec.clone());
            }
            while next < bounds.len() && bounds[next] == rec.qnorm {
                best_at[next] = running.clone();
                next += 1;
            }
            true
        })?;
    }

    let rows: Vec<DirichletRow> = query
        .t_grid
        .iter()
        .zip(bounds.iter().zip(best_at))
        .map(|(&t, (&bound, best))| {
            let threshold = query.threshold(t);
            match best {
                Some(b) => DirichletRow {
                    t,
                    bound,
                    threshold,
                    solvable: b.residual <= threshold * (1.0 + 1e-12),
                    q: b.q,
                    p: b.p,
                    residual: b.residual,
                },
                None => DirichletRow {
                    t,
                    bound,
                    threshold,
                    solvable: false,
                    q: vec![],
                    p: vec![],
                    residual: f64::INFINITY,
                },
            }
        })
        .collect();
    let tail_from = rows.len() / 2;
    let verdict = if rows[tail_from..].iter().all(|r| r.solvable) {
        DirichletVerdict::ImprovableEvidence
    } else {
        DirichletVerdict::NoEvidence
    };
    Ok(DirichletReport { form: query.form, delta: query.delta, tail_start: rows[tail_from].t, rows, verdict })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SingularVerdict {
    SingularEvidence,
    NoEvidence,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SingularReport {
    pub reports: Vec<DirichletReport>,
    pub verdict: SingularVerdict,
}

/// Singular evidence: improvable evidence at every `δ` in the list.
pub fn singular_probe(query: &DirichletQuery, deltas: &[f64]) -> Result<SingularReport> {
    if deltas.is_empty() {
        return Err(Error::invalid("delta list is empty"));
    }
    let reports = deltas
        .iter()
        .map(|&delta| dirichlet_solve(&DirichletQuery { delta, ..query.clone() }))
        .collect::<Result<Vec<_>>>()?;
    let verdict = if reports.iter().all(|r| r.verdict == DirichletVerdict::ImprovableEvidence) {
        SingularVerdict::SingularEvidence
    } else {
        SingularVerdict::NoEvidence
    };
    Ok(SingularReport { reports, verdict })
}
