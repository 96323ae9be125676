//! Leaf commands: option structs, validation and execution.

use std::path::PathBuf;

use clap::Args;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use latflow::diophantine::{
    a_ext, best_approximations, dirichlet_solve, exponent_estimate, records_csv, singular_probe, w_probe,
    ApproxTarget, DirichletForm, DirichletQuery, DirichletReport, ProbeConfig, WSet, DEFAULT_BUDGET,
};
use latflow::flows::{Curve, FlowKind, FlowSpec};
use latflow::instability::{brute_force_optimum, kempf_optimum, Rep, RepVector};
use latflow::lattice::{quadratic_subspace_example, translate_experiment, ExperimentConfig, DEFAULT_NODE_BUDGET};
use latflow::linalg::{ExactMatrix, Scalar};
use latflow::rootsys::{check_fundamental, exhaustive_law, RootSystem};

use crate::config;
use crate::{CliError, Format};

type Runner = Box<dyn FnOnce(Format) -> Result<String, CliError>>;

pub struct Prepared {
    pub default_format: Format,
    pub formats: &'static [Format],
    pub run: Runner,
}

pub struct Job {
    pub name: &'static str,
    pub resolved: Value,
    pub default_format: Format,
    pub formats: &'static [Format],
    pub run: Runner,
}

pub fn prepare<T: Serialize + DeserializeOwned>(
    name: &'static str,
    flags: T,
    file: Option<&Map<String, Value>>,
    build: fn(&mut T) -> Result<Prepared, CliError>,
) -> Result<Job, CliError> {
    let mut args = config::merge(&flags, file)?;
    // `build` fills in defaults, so the plan shows effective values
    let p = build(&mut args)?;
    let mut resolved = serde_json::to_value(&args).expect("arguments serialize");
    if let Value::Object(map) = &mut resolved {
        map.retain(|_, v| !v.is_null());
    }
    Ok(Job { name, resolved, default_format: p.default_format, formats: p.formats, run: p.run })
}

const JSON: &[Format] = &[Format::Json];
const JSON_CSV: &[Format] = &[Format::Json, Format::Csv];

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn require<T: Clone>(v: &Option<T>, flag: &str) -> Result<T, CliError> {
    v.clone().ok_or_else(|| usage(format!("missing --{flag}")))
}

fn pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("output serializes");
    s.push('\n');
    s
}

fn matrix(s: &str, flag: &str) -> Result<ExactMatrix, CliError> {
    ExactMatrix::parse(s).map_err(|e| usage(format!("--{flag}: {e}")))
}

fn scalars(s: &str, flag: &str) -> Result<Vec<Scalar>, CliError> {
    s.split(',').map(|x| x.parse::<Scalar>().map_err(|e| usage(format!("--{flag}: {e}")))).collect()
}

fn json_only(run: impl FnOnce() -> Result<String, CliError> + 'static) -> Prepared {
    Prepared { default_format: Format::Json, formats: JSON, run: Box::new(move |_| run()) }
}

fn from_name<T: DeserializeOwned>(name: &str, flag: &str, choices: &str) -> Result<T, CliError> {
    serde_json::from_value(Value::String(name.to_string()))
        .map_err(|_| usage(format!("--{flag} '{name}' is not one of {choices}")))
}

#[derive(Args, Debug, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct DiophApprox {
    /// Matrix A, rows separated by `;`, entries by `,` (e.g. "1/3,1/5").
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    /// Largest sup-norm of q.
    #[arg(long)]
    pub qmax: Option<u64>,
    /// Exponent used for the quality column; defaults to l/m.
    #[arg(long)]
    pub r: Option<f64>,
    /// Cap on candidate vectors q.
    #[arg(long)]
    pub budget: Option<u64>,
}

pub fn dioph_approx(args: &mut DiophApprox) -> Result<Prepared, CliError> {
    let a = matrix(&require(&args.a, "a")?, "a")?;
    let qmax = require(&args.qmax, "qmax")?;
    let target = ApproxTarget::from_exact(&a)?;
    let r = *args.r.get_or_insert(target.l() as f64 / target.m() as f64);
    let budget = *args.budget.get_or_insert(DEFAULT_BUDGET);
    Ok(Prepared {
        default_format: Format::Csv,
        formats: JSON_CSV,
        run: Box::new(move |format| {
            let recs = best_approximations(&target, qmax, budget)?;
            Ok(match format {
                Format::Csv => records_csv(&recs, r),
                _ => pretty(&json!({ "r": r, "records": recs })),
            })
        }),
    })
}

#[derive(Args, Debug, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct DiophExponent {
    /// Matrix A, rows separated by `;`, entries by `,`.
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    /// Largest sup-norm of q; at least 10.
    #[arg(long)]
    pub qmax: Option<u64>,
    /// Cap on candidate vectors q.
    #[arg(long)]
    pub budget: Option<u64>,
}

pub fn dioph_exponent(args: &mut DiophExponent) -> Result<Prepared, CliError> {
    let target = ApproxTarget::from_exact(&matrix(&require(&args.a, "a")?, "a")?)?;
    let qmax = require(&args.qmax, "qmax")?;
    if qmax < 10 {
        return Err(usage("--qmax must be at least 10"));
    }
    let budget = *args.budget.get_or_insert(DEFAULT_BUDGET);
    Ok(json_only(move || Ok(pretty(&exponent_estimate(&target, qmax, budget)?))))
}

#[derive(Args, Debug, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct DiophExt {
    /// Ambient dimension; A is 2 x (n-2).
    #[arg(long)]
    pub n: Option<usize>,
    /// Matrix A, e.g. "1,2;3,4".
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
}

pub fn dioph_ext(args: &mut DiophExt) -> Result<Prepared, CliError> {
    let n = require(&args.n, "n")?;
    let a = matrix(&require(&args.a, "a")?, "a")?;
    if n < 4 || a.shape() != (2, n - 2) {
        return Err(usage(format!("--a must be 2 x (n-2) with n >= 4; got {:?} for n = {n}", a.shape())));
    }
    Ok(Prepared {
        default_format: Format::Text,
        formats: &[Format::Text, Format::Json],
        run: Box::new(move |format| {
            let ext = a_ext(&a)?;
            Ok(match format {
                Format::Json => pretty(&ext),
                _ => ext.to_string(),
            })
        }),
    })
}

#[derive(Args, Debug, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct DiophProbe {
    /// Matrix A, rows separated by `;`, entries by `,`.
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    /// Which set to probe: `W` or `W'`.
    #[arg(long)]
    pub set: Option<String>,
    /// Approximation exponent r.
    #[arg(long)]
    pub r: Option<f64>,
    /// Largest sup-norm of q.
    #[arg(long)]
    pub qmax: Option<u64>,
    /// Quality threshold C.
    #[arg(long)]
    pub c: Option<f64>,
    /// Hits below C needed for W evidence.
    #[arg(long)]
    pub min_hits: Option<usize>,
    /// Required drop of the best quality across the range for W' evidence.
    #[arg(long)]
    pub decay: Option<f64>,
    /// Cap on candidate vectors q.
    #[arg(long)]
    pub budget: Option<u64>,
}

pub fn dioph_probe(args: &mut DiophProbe) -> Result<Prepared, CliError> {
    let a = matrix(&require(&args.a, "a")?, "a")?;
    let set = match require(&args.set, "set")?.as_str() {
        "W" | "w" | "W_r" => WSet::W,
        "W'" | "w'" | "W'_r" | "w-prime" => WSet::WPrime,
        other => return Err(usage(format!("--set '{other}' is not W or W'"))),
    };
    let r = require(&args.r, "r")?;
    let qmax = require(&args.qmax, "qmax")?;
    let d = ProbeConfig::default();
    let cfg = ProbeConfig {
        c: *args.c.get_or_insert(d.c),
        min_hits: *args.min_hits.get_or_insert(d.min_hits),
        decay: *args.decay.get_or_insert(d.decay),
        budget: *args.budget.get_or_insert(d.budget),
    };
    if !(r > 0.0) || !(cfg.c > 0.0) || !(cfg.decay >= 1.0) {
        return Err(usage("--r and --c must be positive and --decay at least 1"));
    }
    Ok(json_only(move || Ok(pretty(&w_probe(&a, set, r, qmax, &cfg)?))))
}

#[derive(Args, Debug, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct DirichletArgs {
    /// The vector x, comma separated; exact entries such as 1/3 or 1+r2.
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<String>,
    /// `vector` or `linear-form`.
    #[arg(long)]
    pub form: Option<String>,
    /// Single δ in (0, 1]; defaults to 1.
    #[arg(long)]
    pub delta: Option<f64>,
    /// Several δ values: reports singular evidence when all are improvable.
    #[arg(long, value_delimiter = ',')]
    pub deltas: Option<Vec<f64>>,
    /// Strictly increasing grid of T > 1.
    #[arg(long, value_delimiter = ',')]
    pub t: Option<Vec<f64>>,
    /// Cap on candidate integer vectors.
    #[arg(long)]
    pub budget: Option<u64>,
}

fn dirichlet_rows_csv(reports: &[DirichletReport]) -> String {
    let join = |v: &[i64]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(";");
    let mut out = String::from("delta,t,bound,threshold,solvable,q,p,residual\n");
    for rep in reports {
        for r in &rep.rows {
            out.push_str(&format!(
                "{},{},{},{:e},{},{},{},{:e}\n",
                rep.delta,
                r.t,
                r.bound,
                r.threshold,
                r.solvable,
                join(&r.q),
                join(&r.p),
                r.residual
            ));
        }
    }
    out
}

pub fn dirichlet(args: &mut DirichletArgs) -> Result<Prepared, CliError> {
    let x = scalars(&require(&args.x, "x")?, "x")?;
    let form: DirichletForm = from_name(args.form.get_or_insert_with(|| "vector".into()), "form", "vector, linear-form")?;
    let t_grid = require(&args.t, "t")?;
    if args.delta.is_some() && args.deltas.is_some() {
        return Err(usage("give either --delta or --deltas"));
    }
    let deltas = args.deltas.clone().unwrap_or_else(|| vec![args.delta.unwrap_or(1.0)]);
    if deltas.is_empty() || deltas.iter().any(|d| !(*d > 0.0 && *d <= 1.0)) {
        return Err(usage("every δ must lie in (0, 1]"));
    }
    if t_grid.is_empty() || t_grid.iter().any(|t| !(*t > 1.0 && t.is_finite())) || t_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(usage("--t must be a strictly increasing grid of values above 1"));
    }
    let query = DirichletQuery { form, x, delta: deltas[0], t_grid, budget: *args.budget.get_or_insert(DEFAULT_BUDGET) };
    let several = args.deltas.is_some();
    Ok(Prepared {
        default_format: Format::Json,
        formats: JSON_CSV,
        run: Box::new(move |format| {
            if several {
                let rep = singular_probe(&query, &deltas)?;
                Ok(match format {
                    Format::Csv => dirichlet_rows_csv(&rep.reports),
                    _ => pretty(&rep),
                })
            } else {
                let rep = dirichlet_solve(&query)?;
                Ok(match format {
                    Format::Csv => dirichlet_rows_csv(std::slice::from_ref(&rep)),
                    _ => pretty(&rep),
                })
            }
        }),
    })
}

#[derive(Args, Debug, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct SimTranslate {
    /// Curve description in JSON (see `sim example --curve-only`).
    #[arg(long)]
    pub curve: Option<PathBuf>,
    /// Times t, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub t: Option<Vec<f64>>,
    /// Points sampled uniformly on the curve parameter range.
    #[arg(long)]
    pub samples: Option<usize>,
    /// Mandatory; sample i uses substream i of this seed.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Siegel box radius R; counting is skipped when absent.
    #[arg(long)]
    pub radius: Option<f64>,
    /// Threshold for the fraction of short lattices; defaults to 0.1.
    #[arg(long)]
    pub eps: Option<f64>,
    /// `g`, `b` or `c`.
    #[arg(long)]
    pub flow: Option<String>,
    /// Block size for the `b` and `c` flows.
    #[arg(long)]
    pub d: Option<usize>,
    /// Enumeration node cap per lattice.
    #[arg(long)]
    pub node_budget: Option<u64>,
}

pub fn sim_translate(args: &mut SimTranslate) -> Result<Prepared, CliError> {
    let path = require(&args.curve, "curve")?;
    let text = std::fs::read_to_string(&path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let curve = Curve::from_json(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let t_grid = require(&args.t, "t")?;
    let samples = require(&args.samples, "samples")?;
    let seed = require(&args.seed, "seed")?;
    let eps = *args.eps.get_or_insert(0.1);
    let flow: FlowKind = from_name(args.flow.get_or_insert_with(|| "g".into()), "flow", "g, b, c")?;
    let d = *args.d.get_or_insert(0);
    FlowSpec::new(flow, curve.n, d)?;
    if t_grid.is_empty() || t_grid.iter().any(|t| !t.is_finite()) {
        return Err(usage("--t must list finite times"));
    }
    if samples == 0 || !(eps > 0.0) || args.radius.is_some_and(|r| !(r > 0.0)) {
        return Err(usage("--samples, --eps and --radius must be positive"));
    }
    let cfg = ExperimentConfig {
        curve,
        flow,
        d,
        t_grid,
        samples,
        eps,
        r: args.radius,
        seed,
        node_budget: *args.node_budget.get_or_insert(DEFAULT_NODE_BUDGET),
    };
    Ok(Prepared {
        default_format: Format::Csv,
        formats: JSON_CSV,
        run: Box::new(move |format| {
            let report = translate_experiment(&cfg)?;
            Ok(match format {
                Format::Csv => report.to_csv(),
                _ => pretty(&report),
            })
        }),
    })
}

#[derive(Args, Debug, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct SimExample {
    /// Ambient dimension n = m·r.
    #[arg(long)]
    pub n: Option<usize>,
    /// Block count r; defaults to 2.
    #[arg(long)]
    pub r: Option<usize>,
    /// Field degree m; only 2 is supported.
    #[arg(long)]
    pub m: Option<usize>,
    /// Squarefree D of Q(√D); defaults to 2.
    #[arg(long)]
    pub radicand: Option<u64>,
    /// Emit only the curve, ready for `sim translate --curve`.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub curve_only: Option<bool>,
}

pub fn sim_example(args: &mut SimExample) -> Result<Prepared, CliError> {
    let n = require(&args.n, "n")?;
    let (r, m, d) = (*args.r.get_or_insert(2), *args.m.get_or_insert(2), *args.radicand.get_or_insert(2));
    let ex = quadratic_subspace_example(n, r, m, d)?;
    let curve_only = *args.curve_only.get_or_insert(false);
    Ok(json_only(move || Ok(if curve_only { ex.curve.to_json() + "\n" } else { pretty(&ex) })))
}

#[derive(Args, Debug, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct KempfArgs {
    /// Rank of SL_n.
    #[arg(long)]
    pub n: Option<usize>,
    /// `standard`, `wedge(k)` or `adjoint`.
    #[arg(long)]
    pub rep: Option<String>,
    /// Coordinates in the monomial basis, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    pub v: Option<String>,
    /// Also search all cocharacters of norm at most this radius.
    #[arg(long)]
    pub brute: Option<i64>,
}

pub fn kempf(args: &mut KempfArgs) -> Result<Prepared, CliError> {
    let n = require(&args.n, "n")?;
    let rep: Rep = args.rep.get_or_insert_with(|| "standard".into()).parse()?;
    let v = RepVector::new(n, rep, scalars(&require(&args.v, "v")?, "v")?)?;
    if v.is_zero() {
        return Err(usage("--v must be nonzero"));
    }
    let brute = args.brute;
    if brute.is_some_and(|b| b < 1) {
        return Err(usage("--brute must be at least 1"));
    }
    Ok(json_only(move || {
        let opt = kempf_optimum(&v)?;
        let mut out = serde_json::to_value(&opt).expect("optimum serializes");
        if let Some(radius) = brute {
            let (value, lambda) = brute_force_optimum(&v, radius)?;
            out["brute_force"] = json!({ "radius": radius, "value": value, "lambda": lambda });
        }
        Ok(pretty(&out))
    }))
}

#[derive(Args, Debug, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct RootsBuild {
    /// Type and rank, e.g. `C2`.
    #[arg(long)]
    pub system: Option<String>,
}

pub fn roots_build(args: &mut RootsBuild) -> Result<Prepared, CliError> {
    let phi = RootSystem::parse(&require(&args.system, "system")?)?;
    Ok(json_only(move || Ok(pretty(&phi))))
}

#[derive(Args, Debug, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct RootsCheck {
    /// Irreducible system, e.g. `A2`; used with --k.
    #[arg(long)]
    pub system: Option<String>,
    /// Index of the fundamental weight ω_k generating the weight set.
    #[arg(long)]
    pub k: Option<usize>,
    /// Check every minuscule fundamental weight of every supported system.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub all: Option<bool>,
    /// Rank bound for --all; defaults to 3.
    #[arg(long)]
    pub max_rank: Option<usize>,
}

pub fn roots_check(args: &mut RootsCheck) -> Result<Prepared, CliError> {
    if args.all.unwrap_or(false) {
        if args.system.is_some() || args.k.is_some() {
            return Err(usage("--all excludes --system and --k"));
        }
        let max_rank = *args.max_rank.get_or_insert(3);
        if !(1..=4).contains(&max_rank) {
            return Err(usage("--max-rank must be between 1 and 4"));
        }
        return Ok(json_only(move || {
            let rows = exhaustive_law(max_rank)?;
            let passes: Vec<Value> =
                rows.iter().filter(|r| r.witnesses > 0).map(|r| json!({ "system": r.system, "k": r.k })).collect();
            Ok(pretty(&json!({ "max_rank": max_rank, "passes": passes, "rows": rows })))
        }));
    }
    let phi = RootSystem::parse(&require(&args.system, "system")?)?;
    let k = require(&args.k, "k")?;
    if k == 0 || k > phi.rank {
        return Err(usage(format!("--k must be between 1 and {}", phi.rank)));
    }
    Ok(json_only(move || Ok(pretty(&check_fundamental(&phi, k)?))))
}
