//! Translates `g_t u(φ(s)) Z^n` along sampled points of a curve.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::reduce::{lll_reduce, shortest_of_reduced, siegel_count_reduced, LatticeBasis, DEFAULT_NODE_BUDGET};
use crate::error::{Error, Result};
use crate::flows::{Curve, FlowKind, FlowSpec};
use crate::rng::substream;

/// A lattice together with where it came from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LatticeState {
    pub n: usize,
    /// Column `j` of the generating matrix is `basis[j]`.
    pub basis: Vec<Vec<f64>>,
    pub t: f64,
    pub s: Vec<f64>,
    pub sample_index: Option<usize>,
}

impl LatticeState {
    /// The lattice generated by the columns of `diag(e^{e_i t}) · u(φ(s))`.
    pub fn translate(flow: &FlowSpec, curve: &Curve, s: &[f64], t: f64) -> Result<(Self, LatticeBasis)> {
        let n = flow.n();
        if curve.n != n {
            return Err(Error::dim(format!("curve lives in R^{}, flow acts on R^{n}", curve.n - 1)));
        }
        let phi = curve.eval_f64(s)?;
        let mut core = vec![vec![0.0; n]; n];
        for (i, row) in core.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        core[0][1..].copy_from_slice(&phi);
        let basis = LatticeBasis::scaled(core, flow.diagonal(t))?;
        let state = LatticeState { n, basis: basis.vectors(), t, s: s.to_vec(), sample_index: None };
        Ok((state, basis))
    }

    /// `|det|` of the generating matrix.
    pub fn covolume(&self) -> f64 {
        nalgebra::DMatrix::from_fn(self.n, self.n, |i, j| self.basis[j][i]).determinant().abs()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub curve: Curve,
    #[serde(default = "default_kind")]
    pub flow: FlowKind,
    /// Only used for the `b` and `c` flows.
    #[serde(default)]
    pub d: usize,
    pub t_grid: Vec<f64>,
    pub samples: usize,
    pub eps: f64,
    /// Siegel radius; counting is skipped when absent.
    pub r: Option<f64>,
    pub seed: u64,
    #[serde(default = "default_budget")]
    pub node_budget: u64,
}

fn default_kind() -> FlowKind {
    FlowKind::G
}

fn default_budget() -> u64 {
    DEFAULT_NODE_BUDGET
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleRow {
    pub sample_index: usize,
    pub s: Vec<f64>,
    pub t: f64,
    pub lambda1: f64,
    pub siegel_count: Option<u64>,
    pub below_eps: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TimeAggregate {
    pub t: f64,
    pub mean_siegel: Option<f64>,
    pub median_siegel: Option<f64>,
    pub haar_ref: Option<f64>,
    pub rel_dev: Option<f64>,
    pub frac_below_eps: f64,
    pub min_lambda1: f64,
    pub median_lambda1: f64,
    pub max_lambda1: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub n: usize,
    pub eps: f64,
    pub r: Option<f64>,
    pub seed: u64,
    /// Ordered by sample index, then by position in the time grid.
    pub rows: Vec<SampleRow>,
    pub aggregates: Vec<TimeAggregate>,
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let m = xs.len();
    if m % 2 == 1 {
        xs[m / 2]
    } else {
        0.5 * (xs[m / 2 - 1] + xs[m / 2])
    }
}

/// Per-time summaries recomputed from the rows.
pub fn aggregate(rows: &[SampleRow], t_grid: &[f64], n: usize, r: Option<f64>) -> Vec<TimeAggregate> {
    t_grid
        .iter()
        .map(|&t| {
            let at: Vec<&SampleRow> = rows.iter().filter(|row| row.t == t).collect();
            let lambdas: Vec<f64> = at.iter().map(|row| row.lambda1).collect();
            let counts: Option<Vec<f64>> = at.iter().map(|row| row.siegel_count.map(|c| c as f64)).collect();
            let haar_ref = r.map(|r| (2.0 * r).powi(n as i32));
            let mean_siegel = counts.as_ref().map(|c| c.iter().sum::<f64>() / c.len() as f64);
            TimeAggregate {
                t,
                mean_siegel,
                median_siegel: counts.map(median),
                haar_ref,
                rel_dev: mean_siegel.zip(haar_ref).map(|(m, h)| (m - h).abs() / h),
                frac_below_eps: at.iter().filter(|row| row.below_eps).count() as f64 / at.len() as f64,
                min_lambda1: lambdas.iter().cloned().fold(f64::INFINITY, f64::min),
                median_lambda1: median(lambdas.clone()),
                max_lambda1: lambdas.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
            }
        })
        .collect()
}

pub fn translate_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.curve.validate()?;
    if cfg.samples == 0 || cfg.t_grid.is_empty() {
        return Err(Error::invalid("need at least one sample and one time"));
    }
    if !(cfg.eps > 0.0) || cfg.r.is_some_and(|r| !(r > 0.0)) {
        return Err(Error::invalid("eps and R must be positive"));
    }
    let n = cfg.curve.n;
    let flow = FlowSpec::new(cfg.flow, n, cfg.d)?;
    let per_sample: Vec<Vec<SampleRow>> = (0..cfg.samples)
        .into_par_iter()
        .map(|i| {
            let s = cfg.curve.sample(&mut substream(cfg.seed, i as u64));
            cfg.t_grid
                .iter()
                .map(|&t| {
                    let (_, basis) = LatticeState::translate(&flow, &cfg.curve, &s, t)?;
                    let red = lll_reduce(&basis)?;
                    let lambda1 = shortest_of_reduced(&red, cfg.node_budget)?.norm;
                    let siegel_count = cfg.r.map(|r| siegel_count_reduced(&red, r, cfg.node_budget)).transpose()?;
                    Ok(SampleRow { sample_index: i, s: s.clone(), t, lambda1, siegel_count, below_eps: lambda1 < cfg.eps })
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    let rows: Vec<SampleRow> = per_sample.into_iter().flatten().collect();
    let aggregates = aggregate(&rows, &cfg.t_grid, n, cfg.r);
    Ok(ExperimentReport { n, eps: cfg.eps, r: cfg.r, seed: cfg.seed, rows, aggregates })
}

impl ExperimentReport {
    /// `sample_index,s,t,lambda1,siegel_count,below_eps`; `s` is `;`-joined.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("sample_index,s,t,lambda1,siegel_count,below_eps\n");
        for row in &self.rows {
            let s = row.s.iter().map(|x| format!("{x:e}")).collect::<Vec<_>>().join(";");
            let count = row.siegel_count.map(|c| c.to_string()).unwrap_or_default();
            out.push_str(&format!(
                "{},{},{},{:e},{},{}\n",
                row.sample_index, s, row.t, row.lambda1, count, row.below_eps
            ));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flows::Polynomial;
    use crate::linalg::Scalar;

    fn line(c0: Scalar, slope: Scalar) -> Curve {
        let s = |x: i64| Scalar::from_int(x);
        Curve::new(3, vec![Polynomial::affine(s(0), &[s(1)]), Polynomial::affine(c0, &[slope])], vec![s(0)], s(1))
            .unwrap()
    }

    #[test]
    fn diagonal_flow_first_minimum() {
        let flow = FlowSpec::g(3).unwrap();
        let curve = line(Scalar::zero(), Scalar::zero());
        let (state, basis) = LatticeState::translate(&flow, &curve, &[0.0], 1.0).unwrap();
        assert!((state.covolume() - 1.0).abs() < 1e-9);
        let sv = super::super::shortest_vector(&basis).unwrap();
        assert!((sv.norm - (-1f64).exp()).abs() < 1e-15);
        assert_eq!(sv.vector[1], (-1f64).exp());
    }

    #[test]
    fn time_zero_rows_and_determinism() {
        let cfg = ExperimentConfig {
            curve: line(Scalar::from_frac(1, 2), Scalar::from_frac(1, 3)),
            flow: FlowKind::G,
            d: 0,
            t_grid: vec![0.0, 1.0],
            samples: 20,
            eps: 0.5,
            r: Some(1.0),
            seed: 7,
            node_budget: DEFAULT_NODE_BUDGET,
        };
        let a = translate_experiment(&cfg).unwrap();
        let b = translate_experiment(&cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.rows.len(), 40);
        assert!(a.rows.iter().filter(|r| r.t == 0.0).all(|r| r.lambda1 <= 1.0 + 1e-12));
        assert!(a.rows.iter().all(|r| r.siegel_count.unwrap() % 2 == 0));
        assert_eq!(aggregate(&a.rows, &cfg.t_grid, 3, cfg.r), a.aggregates);
        assert_eq!(a.to_csv().lines().count(), 41);
    }
}
