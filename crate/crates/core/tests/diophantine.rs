use latflow::diophantine::*;
use latflow::linalg::{ExactMatrix, Scalar};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::Rng;

/// Independent brute force over the full cube `[-h, h]^l`.
fn brute_min(a: &[Vec<f64>], h: i64) -> f64 {
    let l = a[0].len();
    let mut best = f64::INFINITY;
    let mut q = vec![-h; l];
    loop {
        if q.iter().any(|&x| x != 0) {
            let res = a
                .iter()
                .map(|row| {
                    let s: f64 = row.iter().zip(&q).map(|(x, &y)| x * y as f64).sum();
                    (s - s.round()).abs()
                })
                .fold(0.0, f64::max);
            best = best.min(res);
        }
        let mut i = 0;
        loop {
            if i == l {
                return best;
            }
            if q[i] < h {
                q[i] += 1;
                break;
            }
            q[i] = -h;
            i += 1;
        }
    }
}

fn matrix() -> impl Strategy<Value = Vec<Vec<f64>>> {
    (1usize..=2, 1usize..=2).prop_flat_map(|(m, l)| prop::collection::vec(prop::collection::vec(-3.0f64..3.0, l), m))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn records_are_optimal_and_monotone(a in matrix()) {
        let target = ApproxTarget::from_f64(&a).unwrap();
        let recs = best_approximations(&target, 12, DEFAULT_BUDGET).unwrap();
        prop_assert!(!recs.is_empty());
        for w in recs.windows(2) {
            prop_assert!(w[1].residual < w[0].residual);
            prop_assert!(w[1].qnorm > w[0].qnorm);
        }
        for rec in &recs {
            prop_assert!(rec.residual <= 0.5 + 1e-15);
            prop_assert!(rec.q.iter().any(|&x| x != 0));
            // nearest-integer characterisation, row by row
            for (row, &p) in a.iter().zip(&rec.p) {
                let s: f64 = row.iter().zip(&rec.q).map(|(x, &y)| x * y as f64).sum();
                for alt in [p - 1, p + 1] {
                    prop_assert!((s + alt as f64).abs() >= (s + p as f64).abs() - 1e-12);
                }
            }
            let oracle = brute_min(&a, rec.qnorm as i64);
            prop_assert!((oracle - rec.residual).abs() < 1e-12, "shell {}: {} vs {}", rec.qnorm, oracle, rec.residual);
        }
    }

    #[test]
    fn a_ext_is_linear_on_x_and_y(
        n in 4usize..=7,
        seed in any::<u64>(),
    ) {
        let mut rng = latflow::rng::substream(seed, 0);
        let mut random = || ExactMatrix::from_fn(2, n - 2, |_, _| Scalar::from_int(rng.random_range(-9..=9)));
        let (a, b) = (random(), random());
        let sum = a_ext(&a.add(&b).unwrap()).unwrap();
        let diff = sum.sub(&a_ext(&a).unwrap()).unwrap().sub(&a_ext(&b).unwrap()).unwrap();
        let [x, y, _] = a_ext_blocks(n);
        for i in x.chain(y) {
            prop_assert!(diff.row(i).iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn smaller_delta_shrinks_solvable_set(x in prop::collection::vec(0.0f64..1.0, 1..=3), d in 0.05f64..1.0) {
        let grid = vec![1.5, 2.0, 3.0, 4.5, 6.0];
        for form in [DirichletForm::Vector, DirichletForm::LinearForm] {
            let wide = dirichlet_solve(&DirichletQuery::from_f64(form, &x, d, grid.clone()).unwrap()).unwrap();
            let narrow = dirichlet_solve(&DirichletQuery::from_f64(form, &x, d * 0.5, grid.clone()).unwrap()).unwrap();
            for (w, s) in wide.rows.iter().zip(&narrow.rows) {
                prop_assert!(!s.solvable || w.solvable);
            }
        }
    }
}

#[test]
fn random_column_exponent_is_one_half() {
    let mut rng = latflow::rng::substream(20_241_015, 0);
    let mut estimates = Vec::new();
    for _ in 0..8 {
        let a = vec![vec![rng.random::<f64>()], vec![rng.random::<f64>()]];
        let e = exponent_estimate(&ApproxTarget::from_f64(&a).unwrap(), 10_000, DEFAULT_BUDGET).unwrap();
        assert!(!e.infinite);
        estimates.push(e.estimate.unwrap());
    }
    let mean = estimates.iter().sum::<f64>() / estimates.len() as f64;
    assert!((mean - 0.5).abs() <= 0.15, "estimates {estimates:?}");
}

#[test]
fn liouville_type_column_is_in_w3() {
    // x = 10^-1 + 10^-5 + 10^-21: the partial sums give q = 1, 10, 10^5 with quality 1/10
    let ten = BigInt::from(10);
    let x = num_rational::BigRational::new(ten.pow(20) + ten.pow(16) + BigInt::from(1), ten.pow(21));
    let a = ExactMatrix::from_rows(vec![vec![Scalar::from_rational(x)]]).unwrap();
    let target = ApproxTarget::from_exact(&a).unwrap();
    let v = w_evidence(&target, WSet::W, 3.0, 1_000_000, &ProbeConfig::default()).unwrap();
    assert_eq!(v.verdict, Verdict::EvidenceMember);
    let hits: Vec<i64> = v.witnesses.iter().filter(|w| w.quality <= 1.0).map(|w| w.record.q[0]).collect();
    assert_eq!(hits, vec![1, 10, 100_000]);
    // the exact input is rational, so the full probe upgrades to a certificate
    assert_eq!(w_probe(&a, WSet::W, 3.0, 100, &ProbeConfig::default()).unwrap().verdict, Verdict::CertifiedMember);
}

#[test]
fn csv_columns() {
    let target = ApproxTarget::from_exact(&ExactMatrix::parse("1/3,1/5").unwrap()).unwrap();
    let csv = records_csv(&best_approximations(&target, 3, DEFAULT_BUDGET).unwrap(), 1.0);
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("qnorm,q,p,residual,quality"));
    assert!(lines.next().unwrap().starts_with("1,-1;1,0,"));
}
