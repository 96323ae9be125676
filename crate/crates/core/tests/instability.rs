use latflow::instability::{
    brute_force_optimum, kempf_optimum, m_value, weight_support, Cocharacter, Rep, RepVector, WeightVector,
};
use latflow::linalg::{Rational, Scalar};
use latflow::rng::substream;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

fn rint(x: i64) -> Rational {
    Rational::from_integer(x.into())
}

/// Exact phase-one simplex with Bland's rule: is there `μ ≥ 0` with
/// `Σ μ_i p_i = 0` and `Σ μ_i = 1`, where `p_i` is `w_i` projected to the
/// sum-zero hyperplane?
fn origin_in_hull(weights: &[WeightVector]) -> bool {
    let n = weights[0].0.len();
    let k = weights.len();
    // rows: n coordinates of n·p_i (integer), then the normalisation
    let mut rows: Vec<Vec<Rational>> = (0..n)
        .map(|c| {
            weights
                .iter()
                .map(|w| rint(n as i64 * w.0[c] - w.0.iter().sum::<i64>()))
                .collect()
        })
        .collect();
    rows.push(vec![rint(1); k]);
    let mut rhs: Vec<Rational> = (0..=n).map(|r| if r == n { rint(1) } else { rint(0) }).collect();
    let m = rows.len();
    // tableau over k structural and m artificial columns
    let mut t: Vec<Vec<Rational>> = (0..m)
        .map(|r| {
            let mut row = rows[r].clone();
            row.extend((0..m).map(|a| if a == r { rint(1) } else { rint(0) }));
            row
        })
        .collect();
    let mut basis: Vec<usize> = (k..k + m).collect();
    let cols = k + m;
    loop {
        // reduced costs of the phase-one objective Σ artificials
        let cost = |j: usize| -> Rational {
            let c_j = if j >= k { rint(1) } else { rint(0) };
            let mut z = Rational::zero();
            for r in 0..m {
                if basis[r] >= k {
                    z += &t[r][j];
                }
            }
            c_j - z
        };
        let Some(enter) = (0..cols).find(|&j| !basis.contains(&j) && cost(j).is_negative()) else {
            break;
        };
        let leave = (0..m)
            .filter(|&r| t[r][enter].is_positive())
            .min_by(|&a, &b| {
                let (ra, rb) = (&rhs[a] / &t[a][enter], &rhs[b] / &t[b][enter]);
                ra.cmp(&rb).then(basis[a].cmp(&basis[b]))
            })
            .expect("phase one is bounded below");
        let piv = t[leave][enter].clone();
        for x in t[leave].iter_mut() {
            *x /= &piv;
        }
        rhs[leave] /= &piv;
        for r in 0..m {
            if r != leave && !t[r][enter].is_zero() {
                let f = t[r][enter].clone();
                for c in 0..cols {
                    let v = &f * &t[leave][c];
                    t[r][c] -= v;
                }
                let v = &f * &rhs[leave];
                rhs[r] -= v;
            }
        }
        basis[leave] = enter;
    }
    (0..m).filter(|&r| basis[r] >= k).all(|r| rhs[r].is_zero())
}

fn random_vector(seed: u64, i: u64, max_n: usize) -> RepVector {
    let mut rng = substream(seed, i);
    let n = rng.random_range(2..=max_n);
    let rep = [Rep::Standard, Rep::Wedge(2), Rep::Adjoint][rng.random_range(0..3)];
    let dim = rep.dim(n);
    let density = rng.random_range(0.05..0.6);
    let mut coords: Vec<Scalar> = (0..dim)
        .map(|_| if rng.random_bool(density) { Scalar::from_frac(rng.random_range(1..=9), rng.random_range(1..=4)) } else { Scalar::zero() })
        .collect();
    if rep == Rep::Adjoint {
        for d in 0..n {
            coords[d * n + d] = Scalar::zero();
        }
    }
    if coords.iter().all(Scalar::is_zero) {
        // off the diagonal for the adjoint
        coords[(rep == Rep::Adjoint) as usize] = Scalar::one();
    }
    RepVector::new(n, rep, coords).unwrap()
}

#[test]
fn simplex_oracle_agrees_on_semistability() {
    let (mut stable, mut unstable) = (0, 0);
    for i in 0..500 {
        let v = random_vector(1, i, 6);
        let support: Vec<WeightVector> = weight_support(&v).unwrap().into_iter().collect();
        let opt = kempf_optimum(&v).unwrap();
        let semistable = origin_in_hull(&support);
        assert_eq!(!opt.unstable, semistable, "{v:?}");
        if semistable {
            stable += 1;
        } else {
            unstable += 1;
        }
    }
    assert!(stable > 50 && unstable > 50, "{stable} semistable, {unstable} unstable");
}

#[test]
fn optimum_is_attained_by_lambda_star() {
    for i in 0..300 {
        let v = random_vector(2, i, 6);
        let opt = kempf_optimum(&v).unwrap();
        let Some(lam) = &opt.lambda_star else {
            assert_eq!(opt.b, 0.0);
            continue;
        };
        let lam = Cocharacter::new(lam.clone()).unwrap();
        assert!(lam.is_indivisible());
        let ratio = m_value(&v, &lam).unwrap() as f64 / lam.norm();
        assert!((ratio - opt.b).abs() <= 1e-12 * opt.b.max(1.0), "{v:?}");
    }
}

#[test]
fn brute_force_agrees_for_small_n() {
    for i in 0..60 {
        let v = random_vector(3, i, 4);
        let opt = kempf_optimum(&v).unwrap();
        if opt.lambda_star.as_ref().is_some_and(|l| Cocharacter::new(l.clone()).unwrap().norm() > 50.0) {
            continue;
        }
        let (brute, _) = brute_force_optimum(&v, 50).unwrap();
        assert!((brute.max(0.0) - opt.b).abs() <= 1e-9, "{v:?}: brute {brute}, hull {}", opt.b);
    }
}

/// `σ` acting on coordinates of the standard or adjoint representation.
fn permute(v: &RepVector, sigma: &[usize]) -> RepVector {
    let n = v.n;
    let mut coords = vec![Scalar::zero(); v.coords.len()];
    match v.rep {
        Rep::Standard => {
            for i in 0..n {
                coords[sigma[i]] = v.coords[i].clone();
            }
        }
        Rep::Adjoint => {
            for i in 0..n {
                for j in 0..n {
                    coords[sigma[i] * n + sigma[j]] = v.coords[i * n + j].clone();
                }
            }
        }
        Rep::Wedge(_) => unreachable!(),
    }
    RepVector::new(n, v.rep, coords).unwrap()
}

#[test]
fn weyl_group_equivariance() {
    let mut checked = 0;
    for i in 0..300 {
        let v = random_vector(4, i, 6);
        if matches!(v.rep, Rep::Wedge(_)) {
            continue;
        }
        let mut sigma: Vec<usize> = (0..v.n).collect();
        sigma.shuffle(&mut substream(40, i));
        let a = kempf_optimum(&v).unwrap();
        let b = kempf_optimum(&permute(&v, &sigma)).unwrap();
        assert_eq!(a.b_squared, b.b_squared);
        if let (Some(la), Some(lb)) = (&a.lambda_star, &b.lambda_star) {
            let moved: Vec<i64> = (0..v.n).map(|j| la[sigma.iter().position(|&s| s == j).unwrap()]).collect();
            assert_eq!(&moved, lb);
        }
        checked += 1;
    }
    assert!(checked > 100);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scaling_preserves_the_optimum(seed in 0u64..10_000, num in 1i64..20, den in 1i64..20) {
        let v = random_vector(5, seed, 6);
        let c = Scalar::from_frac(num, den);
        let w = RepVector::new(v.n, v.rep, v.coords.iter().map(|x| x.clone() * c.clone()).collect()).unwrap();
        let (a, b) = (kempf_optimum(&v).unwrap(), kempf_optimum(&w).unwrap());
        prop_assert_eq!(a.b_squared, b.b_squared);
        prop_assert_eq!(a.lambda_star, b.lambda_star);
    }

    #[test]
    fn m_value_is_linear_in_lambda(seed in 0u64..10_000, k in 1i64..6) {
        let v = random_vector(6, seed, 6);
        let mut lam = vec![0i64; v.n];
        lam[0] = 2;
        lam[v.n - 1] = -2;
        let lam = Cocharacter::new(lam).unwrap();
        prop_assert_eq!(m_value(&v, &lam.scaled(k)).unwrap(), k * m_value(&v, &lam).unwrap());
    }
}
