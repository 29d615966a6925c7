//! Ring isomorphism and anti-isomorphism of central division algebras, read
//! off their local invariants, and certified families of pairwise
//! non-commensurable classes sharing one ramification set.
//!
//! Two classes are isomorphic as rings when some automorphism of the base
//! field (fixing the distinguished place ν₀) carries one invariant vector
//! onto the other; anti-isomorphic when it carries one onto the opposite of
//! the other. The field automorphism group only enters through its action
//! on places, which a [`PlaceUniverse`] stores as explicit permutations.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::first_primes;
use crate::brauer::{BrauerClass, BrauerError, LocalInvariant, Place, PlaceKind};
use crate::gassmann::{close_group, GroupError, PermGroup};
use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CommError {
    #[error("degree must be at least 3 so that 1/d and -1/d differ, got {0}")]
    DegreeTooSmall(u64),
    #[error("family size must be at least 1")]
    InvalidCount,
    #[error("class is ramified at the distinguished place {0}")]
    Nu0Ramified(String),
    #[error("place {0} is not in the universe")]
    PlaceNotInUniverse(String),
    #[error("places {first} and {second} share orbit {orbit}")]
    OrbitCollision { first: String, second: String, orbit: String },
    #[error("only {available} admissible vectors exist, {requested} requested")]
    InsufficientVectors { requested: u64, available: u64 },
    #[error("family needs {expected} places, got {found}")]
    PlaceCountMismatch { expected: usize, found: usize },
    #[error("place {label} cannot be used: {reason}")]
    InvalidPlace { label: String, reason: String },
    #[error("invalid place universe: {0}")]
    InvalidUniverse(String),
    #[error("family members {0} and {1} are related by an automorphism")]
    CollisionDetected(usize, usize),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Brauer(#[from] BrauerError),
}

impl CommError {
    pub fn name(&self) -> &'static str {
        match self {
            CommError::DegreeTooSmall(_) => "DegreeTooSmall",
            CommError::InvalidCount => "InvalidCount",
            CommError::Nu0Ramified(_) => "Nu0Ramified",
            CommError::PlaceNotInUniverse(_) => "PlaceNotInUniverse",
            CommError::OrbitCollision { .. } => "OrbitCollision",
            CommError::InsufficientVectors { .. } => "InsufficientVectors",
            CommError::PlaceCountMismatch { .. } => "PlaceCountMismatch",
            CommError::InvalidPlace { .. } => "InvalidPlace",
            CommError::InvalidUniverse(_) => "InvalidUniverse",
            CommError::CollisionDetected(..) => "CollisionDetected",
            CommError::Group(e) => e.name(),
            CommError::Brauer(e) => e.name(),
        }
    }
}

/// A finite set of places, a distinguished place ν₀, and a group of
/// permutations of the places induced by field automorphisms.
#[derive(Debug)]
pub struct PlaceUniverse {
    places: Vec<Place>,
    nu0: usize,
    group: PermGroup,
    by_label: HashMap<String, usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaceSpec {
    pub label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<PlaceKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orbit_id: Option<String>,
}

/// JSON form of a universe. Generators act on indices into `places`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniverseSpec {
    pub places: Vec<PlaceSpec>,
    pub nu0: String,
    #[serde(default)]
    pub generators: Vec<Permutation>,
}

impl PlaceUniverse {
    pub fn new(places: Vec<Place>, nu0: &str, generators: Vec<Permutation>) -> Result<Self, CommError> {
        let mut by_label = HashMap::new();
        for (i, p) in places.iter().enumerate() {
            if by_label.insert(p.label().to_string(), i).is_some() {
                return Err(CommError::InvalidUniverse(format!("duplicate label {}", p.label())));
            }
        }
        let nu0 = *by_label.get(nu0).ok_or_else(|| CommError::InvalidUniverse(format!("nu0 {nu0} is not a listed place")))?;
        let n = places.len();
        let generators = if generators.is_empty() { vec![Permutation::identity(n)] } else { generators };
        for g in &generators {
            if g.degree() != n {
                return Err(CommError::InvalidUniverse(format!("generator {g} does not act on {n} places")));
            }
            for (i, p) in places.iter().enumerate() {
                let q = &places[g.apply(i)];
                if p.kind() != q.kind() || p.orbit_id() != q.orbit_id() {
                    return Err(CommError::InvalidUniverse(format!("generator {g} maps {p} to {q} across kinds or orbits")));
                }
            }
        }
        let group = close_group(n, generators)?;
        // orbit ids must name exactly the orbits of the group
        let mut orbit_of_id: HashMap<&str, usize> = HashMap::new();
        for (i, p) in places.iter().enumerate() {
            let orbit_min = group.elements().iter().map(|g| g.apply(i)).min().expect("nonempty group");
            if let Some(prev) = orbit_of_id.insert(p.orbit_id(), orbit_min) {
                if prev != orbit_min {
                    return Err(CommError::InvalidUniverse(format!("orbit id {} spans several orbits", p.orbit_id())));
                }
            }
        }
        Ok(PlaceUniverse { places, nu0, group, by_label })
    }

    pub fn from_spec(spec: &UniverseSpec) -> Result<Self, CommError> {
        let mut places = Vec::with_capacity(spec.places.len());
        for ps in &spec.places {
            let inferred = Place::from_label(&ps.label)?;
            let kind = ps.kind.unwrap_or(inferred.kind());
            let orbit = ps.orbit_id.clone().unwrap_or_else(|| inferred.orbit_id().to_string());
            places.push(Place::new(ps.label.clone(), kind, orbit));
        }
        PlaceUniverse::new(places, &spec.nu0, spec.generators.clone())
    }

    pub fn to_spec(&self) -> UniverseSpec {
        UniverseSpec {
            places: self
                .places
                .iter()
                .map(|p| PlaceSpec { label: p.label().into(), kind: Some(p.kind()), orbit_id: Some(p.orbit_id().into()) })
                .collect(),
            nu0: self.places[self.nu0].label().into(),
            generators: self.group.generators().to_vec(),
        }
    }

    /// ℚ with the given primes and the real place as ν₀. Trivial automorphism group.
    pub fn rationals(primes: &[u64]) -> Result<Self, CommError> {
        let mut primes = primes.to_vec();
        primes.sort_unstable();
        primes.dedup();
        let mut places: Vec<Place> = primes.into_iter().map(Place::prime).collect();
        places.push(Place::real());
        PlaceUniverse::new(places, "real", vec![])
    }

    /// ℚ with the first `count` primes.
    pub fn rationals_first(count: usize) -> Result<Self, CommError> {
        PlaceUniverse::rationals(&first_primes(count))
    }

    /// ℚ(i) over the given rational primes, with the complex place as ν₀.
    ///
    /// Primes `p ≡ 1 (mod 4)` split into `p:N+` / `p:N-`, swapped by complex
    /// conjugation; `2` and the primes `p ≡ 3 (mod 4)` give one fixed place each.
    pub fn gaussian(primes: &[u64]) -> Result<Self, CommError> {
        let mut primes = primes.to_vec();
        primes.sort_unstable();
        primes.dedup();
        let mut places = vec![Place::complex()];
        let mut swaps = Vec::new();
        for p in primes {
            if p % 4 == 1 {
                swaps.push(places.len());
                places.push(Place::split_prime(p, true));
                places.push(Place::split_prime(p, false));
            } else {
                places.push(Place::prime(p));
            }
        }
        let mut images: Vec<usize> = (0..places.len()).collect();
        for i in swaps {
            images.swap(i, i + 1);
        }
        let conjugation = Permutation::new(images).expect("disjoint swaps");
        PlaceUniverse::new(places, "complex", vec![conjugation])
    }

    pub fn places(&self) -> &[Place] {
        &self.places
    }

    pub fn nu0(&self) -> &Place {
        &self.places[self.nu0]
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn place(&self, label: &str) -> Option<&Place> {
        self.by_label.get(label).map(|&i| &self.places[i])
    }

    fn index_of(&self, label: &str) -> Result<usize, CommError> {
        self.by_label.get(label).copied().ok_or_else(|| CommError::PlaceNotInUniverse(label.to_string()))
    }

    /// The invariant vector of `c` indexed by universe places.
    fn invariant_vector(&self, c: &BrauerClass) -> Result<Vec<LocalInvariant>, CommError> {
        let mut v = vec![LocalInvariant::ZERO; self.places.len()];
        for (p, inv) in c.entries() {
            v[self.index_of(p.label())?] = *inv;
        }
        if !v[self.nu0].is_zero() {
            return Err(CommError::Nu0Ramified(self.nu0().label().to_string()));
        }
        Ok(v)
    }

    /// Group elements fixing ν₀, identity first.
    fn stabilizer_of_nu0(&self) -> impl Iterator<Item = &Permutation> {
        self.group.elements().iter().filter(move |g| g.apply(self.nu0) == self.nu0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Isomorphic,
    AntiIsomorphic,
    Neither,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommensurabilityVerdict {
    pub relation: Relation,
    /// Permutation of universe place indices, one-line notation.
    pub witness: Option<Permutation>,
    pub fixes_nu0: bool,
    /// Labels moved by the witness.
    #[serde(default)]
    pub witness_map: BTreeMap<String, String>,
}

impl CommensurabilityVerdict {
    fn neither() -> Self {
        CommensurabilityVerdict { relation: Relation::Neither, witness: None, fixes_nu0: false, witness_map: BTreeMap::new() }
    }
}

/// Decides whether `c1` and `c2` are isomorphic or anti-isomorphic as rings.
///
/// `σ` carries `c1` onto `c2` when `inv_{c2}(σ(v)) = inv_{c1}(v)` at every
/// place `v`. Isomorphism is reported in preference to anti-isomorphism.
pub fn decide_ring_relation(u: &PlaceUniverse, c1: &BrauerClass, c2: &BrauerClass) -> Result<CommensurabilityVerdict, CommError> {
    let v1 = u.invariant_vector(c1)?;
    let v2 = u.invariant_vector(c2)?;
    let carries = |sigma: &Permutation, target: &dyn Fn(usize) -> LocalInvariant| {
        v1.iter().enumerate().all(|(i, inv)| target(sigma.apply(i)) == *inv)
    };
    let attempts: [(Relation, &dyn Fn(usize) -> LocalInvariant); 2] =
        [(Relation::Isomorphic, &|j| v2[j]), (Relation::AntiIsomorphic, &|j| v2[j].neg())];
    for (relation, target) in attempts {
        if let Some(sigma) = u.stabilizer_of_nu0().find(|s| carries(s, target)) {
            let witness_map = (0..u.places.len())
                .filter(|&i| sigma.apply(i) != i)
                .map(|i| (u.places[i].label().to_string(), u.places[sigma.apply(i)].label().to_string()))
                .collect();
            return Ok(CommensurabilityVerdict { relation, witness: Some(sigma.clone()), fixes_nu0: true, witness_map });
        }
    }
    Ok(CommensurabilityVerdict::neither())
}

/// Smallest even `t ≥ 2` with `2^t / t ≥ 2m`.
pub fn choose_t(m: u64, d: u64) -> Result<usize, CommError> {
    if d < 3 {
        return Err(CommError::DegreeTooSmall(d));
    }
    if m < 1 {
        return Err(CommError::InvalidCount);
    }
    let target = 2 * m as u128;
    let mut t: u32 = 2;
    // 2^t >= 2m·t, exactly
    while (1u128 << t) < target * t as u128 {
        t += 2;
    }
    Ok(t as usize)
}

/// Vectors in `{+1,-1}^t` with first entry `+1` and exactly `t/2` entries
/// `+1`, in lexicographic order with `+1 < -1`.
///
/// Bit `t-1-i` of the counter is set when entry `i` is `-1`, so numeric order
/// is lexicographic order; Gosper's hack steps through fixed-popcount words.
pub fn balanced_vectors(t: usize) -> impl Iterator<Item = Vec<i8>> {
    assert!(t >= 2 && t.is_multiple_of(2) && t < 127, "t must be even and in 2..127");
    let limit = 1u128 << (t - 1);
    let mut next = Some((1u128 << (t / 2)) - 1);
    std::iter::from_fn(move || {
        let x = next?;
        if x >= limit {
            next = None;
            return None;
        }
        let c = x & x.wrapping_neg();
        let r = x + c;
        next = Some((((r ^ x) >> 2) / c) | r);
        Some((0..t).map(|i| if x >> (t - 1 - i) & 1 == 1 { -1 } else { 1 }).collect())
    })
}

/// `C(t-1, t/2)`: the number of balanced vectors with first entry `+1`.
pub fn balanced_vector_count(t: usize) -> u128 {
    let (n, k) = ((t - 1) as u128, (t / 2) as u128);
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyCertificate {
    pub degree: u64,
    pub places: Vec<Place>,
    pub vectors: Vec<Vec<i8>>,
    pub classes: Vec<BrauerClass>,
    pub pairwise: Vec<Vec<CommensurabilityVerdict>>,
}

fn class_from_vector(places: &[Place], vector: &[i8], d: u64) -> Result<BrauerClass, CommError> {
    let entries = places
        .iter()
        .zip(vector)
        .map(|(p, &e)| Ok((p.clone(), LocalInvariant::new(e as i64, d)?)))
        .collect::<Result<Vec<_>, BrauerError>>()?;
    Ok(BrauerClass::new(entries)?)
}

/// Resolves `places` in the universe and checks they can carry a family.
fn check_family_places(u: &PlaceUniverse, places: &[Place]) -> Result<Vec<Place>, CommError> {
    let mut resolved = Vec::with_capacity(places.len());
    let mut labels = BTreeSet::new();
    let mut orbits: HashMap<String, String> = HashMap::new();
    for p in places {
        let q = u.place(p.label()).ok_or_else(|| CommError::PlaceNotInUniverse(p.label().to_string()))?.clone();
        let invalid = |reason: &str| CommError::InvalidPlace { label: q.label().to_string(), reason: reason.to_string() };
        if q.kind() != PlaceKind::Finite {
            return Err(invalid("not a finite place"));
        }
        if q.label() == u.nu0().label() {
            return Err(invalid("is the distinguished place"));
        }
        if !labels.insert(q.label().to_string()) {
            return Err(invalid("listed twice"));
        }
        if let Some(first) = orbits.insert(q.orbit_id().to_string(), q.label().to_string()) {
            return Err(CommError::OrbitCollision { first, second: q.label().to_string(), orbit: q.orbit_id().to_string() });
        }
        resolved.push(q);
    }
    Ok(resolved)
}

fn pairwise_table(u: &PlaceUniverse, classes: &[BrauerClass]) -> Result<Vec<Vec<CommensurabilityVerdict>>, CommError> {
    classes
        .iter()
        .map(|a| classes.iter().map(|b| decide_ring_relation(u, a, b)).collect())
        .collect()
}

/// The first `m` balanced vectors over the places `t_places`, expanded to
/// classes with invariants `±1/d`, with every pairwise verdict computed.
pub fn enumerate_family(u: &PlaceUniverse, d: u64, m: u64, t_places: &[Place]) -> Result<FamilyCertificate, CommError> {
    let t = choose_t(m, d)?;
    if t_places.len() != t {
        return Err(CommError::PlaceCountMismatch { expected: t, found: t_places.len() });
    }
    let places = check_family_places(u, t_places)?;
    let vectors: Vec<Vec<i8>> = balanced_vectors(t).take(usize::try_from(m).unwrap_or(usize::MAX)).collect();
    if (vectors.len() as u64) < m {
        return Err(CommError::InsufficientVectors { requested: m, available: vectors.len() as u64 });
    }
    let classes = vectors.iter().map(|e| class_from_vector(&places, e, d)).collect::<Result<Vec<_>, _>>()?;
    let pairwise = pairwise_table(u, &classes)?;
    for (i, row) in pairwise.iter().enumerate() {
        for (j, verdict) in row.iter().enumerate() {
            if i != j && verdict.relation != Relation::Neither {
                return Err(CommError::CollisionDetected(i, j));
            }
        }
    }
    Ok(FamilyCertificate { degree: d, places, vectors, classes, pairwise })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateReport {
    pub valid: bool,
    pub failures: Vec<String>,
}

/// Re-derives every structural property and pairwise verdict of `cert`.
pub fn verify_certificate(u: &PlaceUniverse, cert: &FamilyCertificate) -> CertificateReport {
    let mut failures = Vec::new();
    let d = cert.degree;
    let t = cert.places.len();
    if d < 3 {
        failures.push(format!("degree {d} is below 3"));
    }
    if t < 2 || !t.is_multiple_of(2) {
        failures.push(format!("place count {t} is not a positive even number"));
    }
    let places = match check_family_places(u, &cert.places) {
        Ok(p) => p,
        Err(e) => {
            failures.push(format!("places: {e}"));
            cert.places.clone()
        }
    };
    if cert.vectors.is_empty() {
        failures.push("no vectors".into());
    }
    if cert.classes.len() != cert.vectors.len() {
        failures.push(format!("{} classes for {} vectors", cert.classes.len(), cert.vectors.len()));
    }
    let mut seen = BTreeSet::new();
    for (i, e) in cert.vectors.iter().enumerate() {
        if e.len() != t {
            failures.push(format!("vector {i} has length {}", e.len()));
            continue;
        }
        if e.iter().any(|&x| x != 1 && x != -1) {
            failures.push(format!("vector {i} has entries other than ±1"));
        }
        if e.first() != Some(&1) {
            failures.push(format!("vector {i} does not start with +1"));
        }
        if e.iter().filter(|&&x| x == 1).count() != t / 2 {
            failures.push(format!("vector {i} is not balanced"));
        }
        if !seen.insert(e.clone()) {
            failures.push(format!("vector {i} is repeated"));
        }
        let negated: Vec<i8> = e.iter().map(|x| -x).collect();
        if let Some(j) = cert.vectors.iter().position(|f| *f == negated) {
            failures.push(format!("vector {i} is the negation of vector {j}"));
        }
        match (class_from_vector(&places, e, d.max(1)), cert.classes.get(i)) {
            (Ok(expected), Some(c)) if expected == *c => {}
            (Ok(_), Some(_)) => failures.push(format!("class {i} does not match vector {i}")),
            (Err(err), _) => failures.push(format!("vector {i} does not give a class: {err}")),
            (_, None) => {}
        }
    }
    let t_set: BTreeSet<String> = places.iter().map(|p| p.label().to_string()).collect();
    for (i, c) in cert.classes.iter().enumerate() {
        let ram: BTreeSet<String> = c.ramification_set().iter().map(|p| p.label().to_string()).collect();
        if ram != t_set {
            failures.push(format!("class {i} is not ramified exactly at the family places"));
        }
        if c.exponent() != d {
            failures.push(format!("class {i} has exponent {} rather than {d}", c.exponent()));
        }
    }
    match pairwise_table(u, &cert.classes) {
        Ok(table) => {
            if table != cert.pairwise {
                failures.push("stored pairwise table differs from recomputation".into());
            }
            for (i, row) in table.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    if i != j && v.relation != Relation::Neither {
                        failures.push(format!("classes {i} and {j} are {:?}", v.relation));
                    }
                }
            }
        }
        Err(e) => failures.push(format!("pairwise verdicts: {e}")),
    }
    CertificateReport { valid: failures.is_empty(), failures }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn class(entries: &[(&str, &str)]) -> BrauerClass {
        BrauerClass::new(entries.iter().map(|(p, i)| (Place::from_label(p).unwrap(), i.parse().unwrap()))).unwrap()
    }

    fn q() -> PlaceUniverse {
        PlaceUniverse::rationals_first(6).unwrap()
    }

    #[test]
    fn identity_and_opposite() {
        let u = q();
        let c = class(&[("p:2", "1/3"), ("p:3", "2/3")]);
        let v = decide_ring_relation(&u, &c, &c).unwrap();
        assert_eq!(v.relation, Relation::Isomorphic);
        assert!(v.witness.unwrap().is_identity());
        assert!(v.fixes_nu0);
        let v = decide_ring_relation(&u, &c, &c.opposite()).unwrap();
        assert_eq!(v.relation, Relation::AntiIsomorphic);
    }

    #[test]
    fn unrelated_classes() {
        let u = q();
        let c1 = class(&[("p:2", "1/5"), ("p:3", "1/5"), ("p:5", "3/5")]);
        let c2 = class(&[("p:2", "1/5"), ("p:3", "2/5"), ("p:5", "2/5")]);
        let v = decide_ring_relation(&u, &c1, &c2).unwrap();
        assert_eq!(v.relation, Relation::Neither);
        assert!(v.witness.is_none());
    }

    #[test]
    fn gaussian_conjugation() {
        let u = PlaceUniverse::gaussian(&[2, 3, 5]).unwrap();
        assert_eq!(u.group().order(), 2);
        let c1 = class(&[("p:5+", "1/3"), ("p:5-", "2/3")]);
        let c2 = class(&[("p:5+", "2/3"), ("p:5-", "1/3")]);
        let v = decide_ring_relation(&u, &c1, &c2).unwrap();
        assert_eq!(v.relation, Relation::Isomorphic);
        let w = v.witness.unwrap();
        assert!(!w.is_identity());
        assert_eq!(v.witness_map.get("p:5+").map(String::as_str), Some("p:5-"));
    }

    #[test]
    fn errors() {
        let u = q();
        let hamilton = class(&[("p:2", "1/2"), ("real", "1/2")]);
        assert_eq!(decide_ring_relation(&u, &hamilton, &hamilton).unwrap_err(), CommError::Nu0Ramified("real".into()));
        let far = class(&[("p:101", "1/2"), ("p:2", "1/2")]);
        assert_eq!(decide_ring_relation(&u, &far, &far).unwrap_err(), CommError::PlaceNotInUniverse("p:101".into()));
    }

    #[test]
    fn universe_validation() {
        let places = vec![Place::real(), Place::prime(2), Place::prime(3)];
        let swap = Permutation::new(vec![0, 2, 1]).unwrap();
        assert!(matches!(PlaceUniverse::new(places.clone(), "real", vec![swap]), Err(CommError::InvalidUniverse(_))));
        assert!(matches!(PlaceUniverse::new(places.clone(), "complex", vec![]), Err(CommError::InvalidUniverse(_))));
        // one orbit id covering two fixed places
        let merged = vec![Place::real(), Place::new("a", PlaceKind::Finite, "o"), Place::new("b", PlaceKind::Finite, "o")];
        assert!(matches!(PlaceUniverse::new(merged, "real", vec![]), Err(CommError::InvalidUniverse(_))));
        let spec = PlaceUniverse::gaussian(&[5, 13]).unwrap().to_spec();
        let back = PlaceUniverse::from_spec(&spec).unwrap();
        assert_eq!(back.group().order(), 2);
    }

    #[test]
    fn choose_t_examples() {
        assert_eq!(choose_t(1, 3).unwrap(), 2);
        assert_eq!(choose_t(4, 3).unwrap(), 6);
        assert_eq!(choose_t(10, 3).unwrap(), 8);
        assert_eq!(choose_t(16, 3).unwrap(), 8);
        assert_eq!(choose_t(17, 3).unwrap(), 10);
        assert_eq!(choose_t(1, 2).unwrap_err(), CommError::DegreeTooSmall(2));
        assert_eq!(choose_t(0, 3).unwrap_err(), CommError::InvalidCount);
    }

    #[test]
    fn vector_enumeration() {
        let v: Vec<_> = balanced_vectors(2).collect();
        assert_eq!(v, vec![vec![1, -1]]);
        let v: Vec<_> = balanced_vectors(6).collect();
        assert_eq!(v.len(), 10);
        assert_eq!(v[0], vec![1, 1, 1, -1, -1, -1]);
        assert_eq!(v[1], vec![1, 1, -1, 1, -1, -1]);
        assert_eq!(v[9], vec![1, -1, -1, -1, 1, 1]);
        let mut sorted = v.clone();
        sorted.sort_by(|a, b| b.cmp(a)); // +1 < -1 is reverse numeric order
        assert_eq!(sorted, v);
        for t in (2..=16).step_by(2) {
            assert_eq!(balanced_vectors(t).count() as u128, balanced_vector_count(t));
        }
    }

    #[test]
    fn family_m4() {
        let u = q();
        let t: Vec<Place> = first_primes(6).into_iter().map(Place::prime).collect();
        let cert = enumerate_family(&u, 3, 4, &t).unwrap();
        assert_eq!(cert.vectors.len(), 4);
        assert_eq!(cert.vectors[0], vec![1, 1, 1, -1, -1, -1]);
        assert!(verify_certificate(&u, &cert).valid);
    }

    #[test]
    fn family_m1() {
        let u = q();
        let cert = enumerate_family(&u, 3, 1, &[Place::prime(2), Place::prime(3)]).unwrap();
        assert_eq!(cert.classes, vec![class(&[("p:2", "1/3"), ("p:3", "2/3")])]);
    }

    #[test]
    fn family_errors() {
        let u = q();
        let two = [Place::prime(2), Place::prime(3)];
        assert_eq!(enumerate_family(&u, 2, 1, &two).unwrap_err(), CommError::DegreeTooSmall(2));
        assert!(matches!(enumerate_family(&u, 3, 4, &two), Err(CommError::PlaceCountMismatch { expected: 6, found: 2 })));
        assert!(matches!(enumerate_family(&u, 3, 1, &[Place::prime(2), Place::real()]), Err(CommError::InvalidPlace { .. })));
        assert!(matches!(enumerate_family(&u, 3, 1, &[Place::prime(2), Place::prime(2)]), Err(CommError::InvalidPlace { .. })));
        let g = PlaceUniverse::gaussian(&[5, 13]).unwrap();
        let err = enumerate_family(&g, 3, 1, &[Place::split_prime(5, true), Place::split_prime(5, false)]).unwrap_err();
        assert_eq!(err.name(), "OrbitCollision");
    }

    #[test]
    fn verify_catches_negated_vector() {
        let u = q();
        let t: Vec<Place> = first_primes(6).into_iter().map(Place::prime).collect();
        let mut cert = enumerate_family(&u, 3, 4, &t).unwrap();
        let negated: Vec<i8> = cert.vectors[0].iter().map(|x| -x).collect();
        cert.classes[1] = class_from_vector(&cert.places, &negated, 3).unwrap();
        cert.vectors[1] = negated;
        let report = verify_certificate(&u, &cert);
        assert!(!report.valid);
    }

    #[test]
    fn verify_catches_orbit_identification() {
        // Conjugation swaps 5+ <-> 5-, 13+ <-> 13-, 17+ <-> 17-, which carries
        // (+,+,-,+,-,-) onto (+,+,+,-,-,-).
        let u = PlaceUniverse::gaussian(&[5, 13, 17]).unwrap();
        let places: Vec<Place> = [5, 13, 17].iter().flat_map(|&p| [Place::split_prime(p, true), Place::split_prime(p, false)]).collect();
        let vectors = vec![vec![1, 1, 1, -1, -1, -1], vec![1, 1, -1, 1, -1, -1]];
        let classes: Vec<BrauerClass> = vectors.iter().map(|e| class_from_vector(&places, e, 3).unwrap()).collect();
        let pairwise = pairwise_table(&u, &classes).unwrap();
        assert_eq!(pairwise[0][1].relation, Relation::Isomorphic);
        let cert = FamilyCertificate { degree: 3, places, vectors, classes, pairwise };
        assert!(!verify_certificate(&u, &cert).valid);
    }

    #[test]
    fn certificate_json_roundtrip() {
        let u = q();
        let t: Vec<Place> = first_primes(6).into_iter().map(Place::prime).collect();
        let cert = enumerate_family(&u, 5, 4, &t).unwrap();
        let json = serde_json::to_string(&cert).unwrap();
        let back: FamilyCertificate = serde_json::from_str(&json).unwrap();
        assert_eq!(back, cert);
        assert!(verify_certificate(&u, &back).valid);
    }
}
