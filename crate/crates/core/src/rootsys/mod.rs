//! Classical root systems of rank at most 4, saturated weight sets, Weyl
//! orbits, minuscule weights and the three-case reflection-number check.
//!
//! Everything lives in the standard `ε`-coordinates: `A_r` inside the
//! sum-zero hyperplane of `Q^{r+1}`, `B_r`, `C_r`, `D_r` in `Q^r`. All
//! arithmetic is exact.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{rat, rat_int, Rational};

pub type Weight = Vec<Rational>;

pub const MAX_RANK: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum RootType {
    A,
    B,
    C,
    D,
}

fn ser_weights<S: Serializer>(ws: &[Weight], s: S) -> std::result::Result<S::Ok, S::Error> {
    let strs: Vec<Vec<String>> = ws.iter().map(|w| w.iter().map(ToString::to_string).collect()).collect();
    strs.serialize(s)
}

fn dot(x: &[Rational], y: &[Rational]) -> Rational {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

fn sub(x: &[Rational], y: &[Rational], k: &Rational) -> Weight {
    x.iter().zip(y).map(|(a, b)| a - k * b).collect()
}

/// `2(β, α)/(α, α)`, which must be an integer.
pub fn reflection_number(beta: &[Rational], alpha: &[Rational]) -> Result<i64> {
    if beta.len() != alpha.len() {
        return Err(Error::dim("weight and root live in different spaces"));
    }
    let aa = dot(alpha, alpha);
    if aa.is_zero() {
        return Err(Error::invalid("reflection number against the zero vector"));
    }
    let r = rat_int(2) * dot(beta, alpha) / aa;
    if !r.is_integer() {
        return Err(Error::invalid(format!("pairing {r} is not integral; the weight is outside the weight lattice")));
    }
    r.to_integer().to_i64().ok_or_else(|| Error::Overflow("reflection number".into()))
}

/// `σ_α(β) = β - ⟨β, α⟩ α`.
pub fn reflect(beta: &[Rational], alpha: &[Rational]) -> Weight {
    let aa = dot(alpha, alpha);
    let k = rat_int(2) * dot(beta, alpha) / aa;
    sub(beta, alpha, &k)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RootSystem {
    #[serde(rename = "type")]
    pub kind: RootType,
    pub rank: usize,
    /// Dimension of the ambient coordinate space.
    #[serde(skip)]
    pub ambient: usize,
    #[serde(serialize_with = "ser_weights")]
    pub roots: Vec<Weight>,
    #[serde(serialize_with = "ser_weights")]
    pub simple_roots: Vec<Weight>,
    #[serde(serialize_with = "ser_weights")]
    pub fundamental_weights: Vec<Weight>,
}

impl fmt::Display for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.kind, self.rank)
    }
}

fn unit(dim: usize, i: usize, c: i64) -> Weight {
    let mut v = vec![Rational::zero(); dim];
    v[i] = rat_int(c);
    v
}

fn add(x: &[Rational], y: &[Rational]) -> Weight {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

fn eps_pm(dim: usize, i: usize, j: usize, si: i64, sj: i64) -> Weight {
    add(&unit(dim, i, si), &unit(dim, j, sj))
}

/// `(ε_1 + … + ε_k)` scaled by `c`, with the last coordinate optionally negated.
fn partial_sum(dim: usize, k: usize, c: &Rational, flip_last: bool) -> Weight {
    (0..dim)
        .map(|i| match i {
            _ if i + 1 == k && flip_last => -c.clone(),
            _ if i < k => c.clone(),
            _ => Rational::zero(),
        })
        .collect()
}

impl RootSystem {
    pub fn build(kind: RootType, rank: usize) -> Result<Self> {
        let min = match kind {
            RootType::A => 1,
            RootType::B | RootType::C => 2,
            RootType::D => 3,
        };
        if rank < min || rank > MAX_RANK {
            return Err(Error::Unsupported(format!("{kind:?}{rank}: supported ranks are {min}..={MAX_RANK}")));
        }
        let r = rank;
        let mut roots = Vec::new();
        let (ambient, simple, fundamental) = match kind {
            RootType::A => {
                let d = r + 1;
                for i in 0..d {
                    for j in 0..d {
                        if i != j {
                            roots.push(eps_pm(d, i, j, 1, -1));
                        }
                    }
                }
                let simple = (0..r).map(|i| eps_pm(d, i, i + 1, 1, -1)).collect();
                let fundamental = (1..=r)
                    .map(|k| {
                        let shift = rat(k as i64, d as i64);
                        (0..d).map(|i| if i < k { Rational::one() - &shift } else { -shift.clone() }).collect()
                    })
                    .collect();
                (d, simple, fundamental)
            }
            RootType::B | RootType::C | RootType::D => {
                let d = r;
                for i in 0..d {
                    for j in i + 1..d {
                        for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                            roots.push(eps_pm(d, i, j, si, sj));
                        }
                    }
                    match kind {
                        RootType::B => roots.extend([unit(d, i, 1), unit(d, i, -1)]),
                        RootType::C => roots.extend([unit(d, i, 2), unit(d, i, -2)]),
                        _ => {}
                    }
                }
                let mut simple: Vec<Weight> = (0..r - 1).map(|i| eps_pm(d, i, i + 1, 1, -1)).collect();
                simple.push(match kind {
                    RootType::B => unit(d, r - 1, 1),
                    RootType::C => unit(d, r - 1, 2),
                    _ => eps_pm(d, r - 2, r - 1, 1, 1),
                });
                let one = Rational::one();
                let half = rat(1, 2);
                let fundamental = (1..=r)
                    .map(|k| match kind {
                        RootType::B if k == r => partial_sum(d, r, &half, false),
                        RootType::D if k == r - 1 => partial_sum(d, r, &half, true),
                        RootType::D if k == r => partial_sum(d, r, &half, false),
                        _ => partial_sum(d, k, &one, false),
                    })
                    .collect();
                (d, simple, fundamental)
            }
        };
        roots.sort();
        let sys = RootSystem { kind, rank, ambient, roots, simple_roots: simple, fundamental_weights: fundamental };
        sys.verify_axioms()?;
        Ok(sys)
    }

    /// Parses names such as `A2` or `c3`.
    pub fn parse(name: &str) -> Result<Self> {
        let name = name.trim();
        let kind = match name.chars().next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => RootType::A,
            Some('B') => RootType::B,
            Some('C') => RootType::C,
            Some('D') => RootType::D,
            _ => return Err(Error::Unsupported(format!("root system '{name}'"))),
        };
        let rank = name[1..].parse().map_err(|_| Error::Parse(format!("rank in '{name}'")))?;
        Self::build(kind, rank)
    }

    /// Coordinates of `v` in the simple-root basis, or `None` outside their span.
    pub fn simple_coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        let gram: Vec<Vec<Rational>> =
            self.simple_roots.iter().map(|a| self.simple_roots.iter().map(|b| dot(a, b)).collect()).collect();
        let rhs: Vec<Rational> = self.simple_roots.iter().map(|a| dot(a, v)).collect();
        let c = solve(gram, rhs)?;
        let back = (0..self.ambient)
            .map(|i| c.iter().zip(&self.simple_roots).map(|(ci, a)| ci * &a[i]).sum::<Rational>())
            .collect::<Vec<_>>();
        (back == v).then_some(c)
    }

    fn verify_axioms(&self) -> Result<()> {
        let fail = |what: &str| Err(Error::invalid(format!("{self}: {what}")));
        if self.simple_roots.len() != self.rank || solve(self.cartan_gram(), vec![Rational::zero(); self.rank]).is_none() {
            return fail("simple roots are not linearly independent");
        }
        let set: BTreeSet<&Weight> = self.roots.iter().collect();
        for beta in &self.roots {
            let Some(c) = self.simple_coordinates(beta) else {
                return fail("a root lies outside the span of the simple roots");
            };
            let all_nonneg = c.iter().all(|x| !x.is_negative());
            let all_nonpos = c.iter().all(|x| !x.is_positive());
            if !c.iter().all(|x| x.is_integer()) || !(all_nonneg || all_nonpos) {
                return fail("a root is not a same-sign integral combination of simple roots");
            }
            for alpha in &self.roots {
                reflection_number(beta, alpha)?;
                if !set.contains(&reflect(beta, alpha)) {
                    return fail("the root set is not reflection-stable");
                }
            }
        }
        for (i, w) in self.fundamental_weights.iter().enumerate() {
            for (j, a) in self.simple_roots.iter().enumerate() {
                if reflection_number(w, a)? != (i == j) as i64 {
                    return fail("fundamental weights are not dual to the simple coroots");
                }
            }
        }
        Ok(())
    }

    fn cartan_gram(&self) -> Vec<Vec<Rational>> {
        self.simple_roots.iter().map(|a| self.simple_roots.iter().map(|b| dot(a, b)).collect()).collect()
    }

    pub fn is_dominant(&self, lambda: &[Rational]) -> Result<bool> {
        for a in &self.simple_roots {
            if reflection_number(lambda, a)? < 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn zero_weight(&self) -> Weight {
        vec![Rational::zero(); self.ambient]
    }

    fn check_len(&self, w: &[Rational]) -> Result<()> {
        if w.len() != self.ambient {
            return Err(Error::dim(format!("{self} weights have {} coordinates, got {}", self.ambient, w.len())));
        }
        Ok(())
    }
}

/// Unique solution of a square system, or `None` when singular.
fn solve(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        b.swap(col, piv);
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = &a[r][col] / &a[col][col];
                for c in col..n {
                    let t = &f * &a[col][c];
                    a[r][c] -= t;
                }
                let t = &f * &b[col];
                b[r] -= t;
            }
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Seed,
    Saturation,
    Orbit,
}

/// Finite multiset of weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSet {
    counts: BTreeMap<Weight, usize>,
    pub provenance: Provenance,
}

impl WeightSet {
    pub fn seed<I: IntoIterator<Item = Weight>>(weights: I) -> Self {
        let mut counts = BTreeMap::new();
        for w in weights {
            *counts.entry(w).or_insert(0) += 1;
        }
        WeightSet { counts, provenance: Provenance::Seed }
    }

    /// Size counted with multiplicity.
    pub fn len(&self) -> usize {
        self.counts.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn distinct(&self) -> impl Iterator<Item = &Weight> {
        self.counts.keys()
    }

    pub fn multiplicity(&self, w: &[Rational]) -> usize {
        self.counts.get(w).copied().unwrap_or(0)
    }

    /// Weights repeated according to multiplicity.
    pub fn iter(&self) -> impl Iterator<Item = &Weight> {
        self.counts.iter().flat_map(|(w, &m)| std::iter::repeat_n(w, m))
    }

    pub fn support(&self) -> BTreeSet<Weight> {
        self.counts.keys().cloned().collect()
    }

    fn check_dims(&self, phi: &RootSystem) -> Result<()> {
        self.distinct().try_for_each(|w| phi.check_len(w))
    }
}

impl Serialize for WeightSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry {
            weight: Vec<String>,
            multiplicity: usize,
        }
        #[derive(Serialize)]
        struct Dump {
            provenance: Provenance,
            weights: Vec<Entry>,
        }
        let weights = self
            .counts
            .iter()
            .map(|(w, &m)| Entry { weight: w.iter().map(ToString::to_string).collect(), multiplicity: m })
            .collect();
        Dump { provenance: self.provenance, weights }.serialize(s)
    }
}

/// Weights `λ - iα` that saturation forces from `λ`.
fn root_string(lambda: &[Rational], alpha: &[Rational]) -> Result<Vec<Weight>> {
    let n = reflection_number(lambda, alpha)?;
    let (lo, hi) = if n >= 0 { (1, n) } else { (n, -1) };
    Ok((lo..=hi).map(|i| sub(lambda, alpha, &rat_int(i))).collect())
}

/// Least saturated superset. Seed multiplicities are kept; new weights
/// enter once.
pub fn saturate(seed: &WeightSet, phi: &RootSystem) -> Result<WeightSet> {
    seed.check_dims(phi)?;
    let mut counts = seed.counts.clone();
    let mut queue: VecDeque<Weight> = counts.keys().cloned().collect();
    while let Some(lambda) = queue.pop_front() {
        for alpha in &phi.roots {
            for mu in root_string(&lambda, alpha)? {
                if !counts.contains_key(&mu) {
                    counts.insert(mu.clone(), 1);
                    queue.push_back(mu);
                }
            }
        }
    }
    Ok(WeightSet { counts, provenance: Provenance::Saturation })
}

pub fn is_saturated(set: &WeightSet, phi: &RootSystem) -> Result<bool> {
    set.check_dims(phi)?;
    for lambda in set.distinct() {
        for alpha in &phi.roots {
            if root_string(lambda, alpha)?.iter().any(|mu| set.multiplicity(mu) == 0) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Orbit of `λ` under the Weyl group, by closure under simple reflections.
pub fn weyl_orbit(lambda: &[Rational], phi: &RootSystem) -> Result<WeightSet> {
    phi.check_len(lambda)?;
    let mut seen: BTreeSet<Weight> = BTreeSet::from([lambda.to_vec()]);
    let mut queue = VecDeque::from([lambda.to_vec()]);
    while let Some(mu) = queue.pop_front() {
        for a in &phi.simple_roots {
            let nu = reflect(&mu, a);
            if seen.insert(nu.clone()) {
                queue.push_back(nu);
            }
        }
    }
    Ok(WeightSet { counts: seen.into_iter().map(|w| (w, 1)).collect(), provenance: Provenance::Orbit })
}

/// `⟨λ, β⟩ ∈ {-1, 0, 1}` for every root `β`.
pub fn is_minuscule(lambda: &[Rational], phi: &RootSystem) -> Result<bool> {
    phi.check_len(lambda)?;
    if !phi.is_dominant(lambda)? {
        return Err(Error::invalid("is_minuscule expects a dominant weight"));
    }
    for beta in &phi.roots {
        if reflection_number(lambda, beta)?.abs() > 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Indices `k` (1-based) of the minuscule fundamental weights `ω_k`.
pub fn minuscule_fundamentals(phi: &RootSystem) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (i, w) in phi.fundamental_weights.iter().enumerate() {
        if is_minuscule(w, phi)? {
            out.push(i + 1);
        }
    }
    Ok(out)
}

/// Orthogonal sum of irreducible systems; weights are concatenated
/// coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct CompositeSystem {
    pub components: Vec<RootSystem>,
}

impl CompositeSystem {
    pub fn new(components: Vec<RootSystem>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::invalid("a composite system needs at least one component"));
        }
        Ok(CompositeSystem { components })
    }

    pub fn ambient(&self) -> usize {
        self.components.iter().map(|c| c.ambient).sum()
    }

    fn block(&self, i: usize) -> std::ops::Range<usize> {
        let start: usize = self.components[..i].iter().map(|c| c.ambient).sum();
        start..start + self.components[i].ambient
    }
}

impl From<RootSystem> for CompositeSystem {
    fn from(phi: RootSystem) -> Self {
        CompositeSystem { components: vec![phi] }
    }
}

/// Roots `α` of component `phi1` whose reflection numbers against `Π`
/// (with multiplicity) are one `+1`, one `-1` and zeros elsewhere.
pub fn classification_check(phi: &CompositeSystem, phi1: usize, pi: &WeightSet) -> Result<Vec<Weight>> {
    let comp = phi
        .components
        .get(phi1)
        .ok_or_else(|| Error::invalid(format!("component {phi1} of {}", phi.components.len())))?;
    let block = phi.block(phi1);
    for w in pi.distinct() {
        if w.len() != phi.ambient() {
            return Err(Error::dim(format!("weights must have {} coordinates", phi.ambient())));
        }
    }
    let mut witnesses = Vec::new();
    for alpha in &comp.roots {
        let (mut plus, mut minus, mut other) = (0usize, 0usize, 0usize);
        for (w, &m) in &pi.counts {
            match reflection_number(&w[block.clone()], alpha)? {
                1 => plus += m,
                -1 => minus += m,
                0 => {}
                _ => other += m,
            }
        }
        if plus == 1 && minus == 1 && other == 0 {
            witnesses.push(alpha.clone());
        }
    }
    Ok(witnesses)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub phi1: String,
    pub pi_descriptor: String,
    #[serde(serialize_with = "ser_weights")]
    pub witnesses: Vec<Weight>,
}

/// The check on `Π = saturate({ω_k})` for an irreducible system.
pub fn check_fundamental(phi: &RootSystem, k: usize) -> Result<CheckReport> {
    let omega = phi
        .fundamental_weights
        .get(k.wrapping_sub(1))
        .ok_or_else(|| Error::invalid(format!("{phi} has no fundamental weight ω{k}")))?;
    let pi = saturate(&WeightSet::seed([omega.clone()]), phi)?;
    let witnesses = classification_check(&phi.clone().into(), 0, &pi)?;
    Ok(CheckReport { phi1: phi.to_string(), pi_descriptor: format!("saturate(omega{k})"), witnesses })
}

/// `(type, rank, k)` for which the check on `saturate({ω_k})` succeeds,
/// among the irreducible systems of rank at most 3. Besides `A_r ω_1`,
/// `A_r ω_r` and `C_r ω_1` this lists the isomorphic copies `B_2 ω_2 ≅ C_2 ω_1`
/// and `D_3 ω_2, D_3 ω_3 ≅ A_3 ω_1, A_3 ω_3`.
pub const EXPECTED_PASSES: &[(RootType, usize, usize)] = &[
    (RootType::A, 1, 1),
    (RootType::A, 2, 1),
    (RootType::A, 2, 2),
    (RootType::A, 3, 1),
    (RootType::A, 3, 3),
    (RootType::B, 2, 2),
    (RootType::C, 2, 1),
    (RootType::C, 3, 1),
    (RootType::D, 3, 2),
    (RootType::D, 3, 3),
];

/// All supported irreducible systems of rank at most `max_rank`.
pub fn supported_systems(max_rank: usize) -> Vec<RootSystem> {
    let mut out = Vec::new();
    for kind in [RootType::A, RootType::B, RootType::C, RootType::D] {
        for rank in 1..=max_rank.min(MAX_RANK) {
            if let Ok(s) = RootSystem::build(kind, rank) {
                out.push(s);
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LawRow {
    pub system: String,
    pub k: usize,
    pub witnesses: usize,
    pub expected_pass: bool,
}

/// Runs the check on every minuscule fundamental weight of every supported
/// system up to `max_rank`.
pub fn exhaustive_law(max_rank: usize) -> Result<Vec<LawRow>> {
    let mut rows = Vec::new();
    for phi in supported_systems(max_rank) {
        for k in minuscule_fundamentals(&phi)? {
            let report = check_fundamental(&phi, k)?;
            rows.push(LawRow {
                system: phi.to_string(),
                k,
                witnesses: report.witnesses.len(),
                expected_pass: EXPECTED_PASSES.contains(&(phi.kind, phi.rank, k)),
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[(i64, i64)]) -> Weight {
        v.iter().map(|&(a, b)| rat(a, b)).collect()
    }

    #[test]
    fn root_counts() {
        let count = |k, r| RootSystem::build(k, r).unwrap().roots.len();
        assert_eq!(count(RootType::A, 2), 6);
        assert_eq!(count(RootType::C, 2), 8);
        assert_eq!(count(RootType::B, 3), 18);
        assert_eq!(count(RootType::D, 4), 24);
        assert_eq!(count(RootType::A, 4), 20);
        assert!(matches!(RootSystem::build(RootType::D, 2), Err(Error::Unsupported(_))));
        assert!(RootSystem::build(RootType::A, 5).is_err());
    }

    #[test]
    fn reflection_numbers() {
        let a2 = RootSystem::build(RootType::A, 2).unwrap();
        let (a1, a2s) = (&a2.simple_roots[0], &a2.simple_roots[1]);
        assert_eq!(reflection_number(a1, a1).unwrap(), 2);
        assert_eq!(reflection_number(a1, a2s).unwrap(), -1);
        assert_eq!(reflection_number(&w(&[(1, 1), (0, 1)]), &w(&[(0, 1), (1, 1)])).unwrap(), 0);
        assert!(reflection_number(a1, &a2.zero_weight()).is_err());
    }

    #[test]
    fn saturation_and_orbits_in_a2() {
        let a2 = RootSystem::build(RootType::A, 2).unwrap();
        let om1 = a2.fundamental_weights[0].clone();
        let sat = saturate(&WeightSet::seed([om1.clone()]), &a2).unwrap();
        assert_eq!(sat.len(), 3);
        assert_eq!(weyl_orbit(&om1, &a2).unwrap().len(), 3);
        let zero = WeightSet::seed([a2.zero_weight()]);
        assert_eq!(saturate(&zero, &a2).unwrap().support(), zero.support());
        let theta = w(&[(1, 1), (0, 1), (-1, 1)]);
        assert_eq!(weyl_orbit(&theta, &a2).unwrap().support(), a2.roots.iter().cloned().collect());
        // the adjoint saturation adds the zero weight once
        assert_eq!(saturate(&WeightSet::seed([theta]), &a2).unwrap().len(), 7);
    }

    #[test]
    fn minuscule_detection() {
        let a2 = RootSystem::build(RootType::A, 2).unwrap();
        assert!(is_minuscule(&a2.fundamental_weights[0], &a2).unwrap());
        assert!(!is_minuscule(&w(&[(1, 1), (0, 1), (-1, 1)]), &a2).unwrap());
        assert!(is_minuscule(&a2.zero_weight(), &a2).unwrap());
        assert!(is_minuscule(&w(&[(-1, 1), (0, 1), (1, 1)]), &a2).is_err());
        let expect = [
            ("A3", vec![1, 2, 3]),
            ("B3", vec![3]),
            ("C3", vec![1]),
            ("D4", vec![1, 3, 4]),
            ("B2", vec![2]),
        ];
        for (name, ks) in expect {
            assert_eq!(minuscule_fundamentals(&RootSystem::parse(name).unwrap()).unwrap(), ks, "{name}");
        }
    }

    #[test]
    fn check_examples() {
        let a2 = RootSystem::build(RootType::A, 2).unwrap();
        assert!(!check_fundamental(&a2, 1).unwrap().witnesses.is_empty());
        let c2 = RootSystem::build(RootType::C, 2).unwrap();
        let std: Vec<Weight> = (0..2).flat_map(|i| [unit(2, i, 1), unit(2, i, -1)]).collect();
        let wit = classification_check(&c2.clone().into(), 0, &WeightSet::seed(std)).unwrap();
        assert_eq!(wit.len(), 4);
        assert!(wit.iter().all(|a| dot(a, a) == rat_int(4)));
        let adjoint = WeightSet::seed(a2.roots.iter().cloned().chain([a2.zero_weight(), a2.zero_weight()]));
        assert!(classification_check(&a2.into(), 0, &adjoint).unwrap().is_empty());
    }

    #[test]
    fn composite_uses_the_designated_block() {
        let a1 = RootSystem::build(RootType::A, 1).unwrap();
        let a2 = RootSystem::build(RootType::A, 2).unwrap();
        let phi = CompositeSystem::new(vec![a1.clone(), a2.clone()]).unwrap();
        // standard module of A2 tensored with the trivial A1 weight
        let pi = WeightSet::seed((0..3).map(|i| {
            let mut v = a1.zero_weight();
            v.extend(weyl_orbit(&a2.fundamental_weights[0], &a2).unwrap().distinct().nth(i).unwrap().clone());
            v
        }));
        assert!(classification_check(&phi, 0, &pi).unwrap().is_empty());
        assert_eq!(classification_check(&phi, 1, &pi).unwrap().len(), 6);
    }
}
