use latflow::linalg::{rat_int, Rational};
use latflow::rootsys::{
    check_fundamental, exhaustive_law, is_minuscule, is_saturated, minuscule_fundamentals, saturate,
    supported_systems, weyl_orbit, RootSystem, RootType, WeightSet,
};
use proptest::prelude::*;

/// `Σ c_i ω_i`.
fn combo(phi: &RootSystem, c: &[i64]) -> Vec<Rational> {
    let mut out = phi.zero_weight();
    for (ci, w) in c.iter().zip(&phi.fundamental_weights) {
        for (o, x) in out.iter_mut().zip(w) {
            *o += rat_int(*ci) * x;
        }
    }
    out
}

#[test]
fn minuscule_iff_orbit_is_saturated() {
    for phi in supported_systems(4) {
        for w in &phi.fundamental_weights {
            let orbit = weyl_orbit(w, &phi).unwrap();
            assert_eq!(is_minuscule(w, &phi).unwrap(), is_saturated(&orbit, &phi).unwrap(), "{phi} {w:?}");
        }
    }
}

#[test]
fn weyl_group_orders() {
    // the orbit of a regular weight is a regular orbit
    for (name, order) in [("A2", 6), ("A3", 24), ("B2", 8), ("C3", 48), ("D4", 192), ("B4", 384)] {
        let phi = RootSystem::parse(name).unwrap();
        let rho = combo(&phi, &vec![1; phi.rank]);
        assert_eq!(weyl_orbit(&rho, &phi).unwrap().len(), order, "{name}");
    }
}

#[test]
fn rank_four_law() {
    let passing: Vec<(String, usize)> = exhaustive_law(4)
        .unwrap()
        .into_iter()
        .filter(|r| r.witnesses > 0)
        .map(|r| (r.system, r.k))
        .collect();
    let expect = [("A1", 1), ("A2", 1), ("A2", 2), ("A3", 1), ("A3", 3), ("A4", 1), ("A4", 4), ("B2", 2), ("C2", 1), ("C3", 1), ("C4", 1), ("D3", 2), ("D3", 3)];
    assert_eq!(passing, expect.iter().map(|(s, k)| (s.to_string(), *k)).collect::<Vec<_>>());
}

#[test]
fn hand_checked_failures() {
    for (name, k) in [("A3", 2), ("B3", 3), ("D3", 1), ("D4", 1), ("D4", 3), ("D4", 4), ("B4", 4)] {
        let phi = RootSystem::parse(name).unwrap();
        assert!(check_fundamental(&phi, k).unwrap().witnesses.is_empty(), "{name} ω{k}");
    }
}

#[test]
fn json_dumps() {
    let c2 = RootSystem::build(RootType::C, 2).unwrap();
    let v: serde_json::Value = serde_json::to_value(&c2).unwrap();
    assert_eq!(v["type"], "C");
    assert_eq!(v["rank"], 2);
    assert_eq!(v["roots"].as_array().unwrap().len(), 8);
    assert_eq!(v["simple_roots"][1], serde_json::json!(["0", "2"]));
    let a2 = RootSystem::build(RootType::A, 2).unwrap();
    let v = serde_json::to_value(&a2).unwrap();
    assert_eq!(v["fundamental_weights"][0], serde_json::json!(["2/3", "-1/3", "-1/3"]));
    let report = serde_json::to_value(check_fundamental(&a2, 1).unwrap()).unwrap();
    assert_eq!(report["phi1"], "A2");
    assert_eq!(report["witnesses"].as_array().unwrap().len(), 6);
    let set = serde_json::to_value(saturate(&WeightSet::seed([a2.zero_weight()]), &a2).unwrap()).unwrap();
    assert_eq!(set["provenance"], "saturation");
}

#[test]
fn minuscule_lists() {
    let got: Vec<(String, Vec<usize>)> =
        supported_systems(3).iter().map(|p| (p.to_string(), minuscule_fundamentals(p).unwrap())).collect();
    let expect = [
        ("A1", vec![1]),
        ("A2", vec![1, 2]),
        ("A3", vec![1, 2, 3]),
        ("B2", vec![2]),
        ("B3", vec![3]),
        ("C2", vec![1]),
        ("C3", vec![1]),
        ("D3", vec![1, 2, 3]),
    ];
    assert_eq!(got, expect.iter().map(|(s, v)| (s.to_string(), v.clone())).collect::<Vec<_>>());
}

fn system() -> impl Strategy<Value = RootSystem> {
    prop::sample::select(supported_systems(3))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn saturation_is_idempotent_and_weyl_stable(
        phi in system(),
        seeds in prop::collection::vec(prop::collection::vec(-1i64..=2, 4), 1..3),
    ) {
        let seed = WeightSet::seed(seeds.iter().map(|c| combo(&phi, &c[..phi.rank])));
        let sat = saturate(&seed, &phi).unwrap();
        prop_assert!(is_saturated(&sat, &phi).unwrap());
        prop_assert_eq!(saturate(&sat, &phi).unwrap().support(), sat.support());
        for w in seed.distinct() {
            prop_assert!(sat.multiplicity(w) >= seed.multiplicity(w));
        }
        for lambda in sat.distinct() {
            for mu in weyl_orbit(lambda, &phi).unwrap().distinct() {
                prop_assert!(sat.multiplicity(mu) > 0);
            }
        }
    }
}
