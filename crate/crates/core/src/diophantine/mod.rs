//! Diophantine side: best approximations of `A ∈ M_{m,l}(R)`, exponent
//! estimates, `W_r`/`W'_r` probes, `A^ext` and Dirichlet-improvability
//! searches.

pub mod aext;
pub mod approx;
pub mod dirichlet;
pub mod probe;

pub use aext::{a_ext, a_ext_blocks, a_ext_f64, a_ext_generic};
pub use approx::{
    best_approximations, exponent_estimate, exponent_from_records, rational_certificate, ApproxRecord, ApproxTarget,
    ExponentEstimate, DEFAULT_BUDGET,
};
pub use dirichlet::{
    dirichlet_solve, singular_probe, DirichletForm, DirichletQuery, DirichletReport, DirichletRow, DirichletVerdict,
    SingularReport, SingularVerdict,
};
pub use probe::{w_evidence, w_probe, Certificate, DiophVerdict, ProbeConfig, Verdict, WSet, Witness};

/// CSV rows `qnorm,q,p,residual,quality` with `q`, `p` joined by `;`.
pub fn records_csv(records: &[ApproxRecord], r: f64) -> String {
    let join = |v: &[i64]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(";");
    let mut out = String::from("qnorm,q,p,residual,quality\n");
    for rec in records {
        out.push_str(&format!("{},{},{},{:e},{:e}\n", rec.qnorm, join(&rec.q), join(&rec.p), rec.residual, rec.quality(r)));
    }
    out
}
