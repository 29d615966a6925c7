//! Finite permutation groups by full enumeration, conjugacy classes, the
//! Gassmann condition and Schreier coset graphs.
//!
//! Cosets are right cosets `Hx`, and the group acts on them by right
//! multiplication. The Schreier graph of `(G, H, S)` has adjacency
//! `A = Σ_{σ ∈ S} P_σ`, where `P_σ` is the permutation matrix of `σ` on the
//! cosets. With `S` closed under inverses (as a multiset) `A` is symmetric
//! and every row sums to `|S|`. When `(G, H₁, H₂)` is a Gassmann triple the
//! two coset representations are isomorphic, so the two adjacency matrices
//! are conjugate and share their characteristic polynomial.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::perm::Permutation;
use crate::spectra::AdjacencyMatrix;

pub const DEFAULT_ELEMENT_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("group closure exceeds {cap} elements")]
    TooLarge { cap: usize },
    #[error("at least one generator is required")]
    NoGenerators,
    #[error("generator acts on {found} points, expected {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("degree must be at least 1")]
    EmptyDegree,
    #[error("{0} is not an element of the group")]
    NotInGroup(String),
    #[error("element set is not closed under products")]
    NotASubgroup,
    #[error("point {0} is outside the permutation domain")]
    PointOutOfRange(usize),
}

impl GroupError {
    pub fn name(&self) -> &'static str {
        match self {
            GroupError::TooLarge { .. } => "TooLarge",
            GroupError::NoGenerators => "NoGenerators",
            GroupError::DegreeMismatch { .. } => "DegreeMismatch",
            GroupError::EmptyDegree => "EmptyDegree",
            GroupError::NotInGroup(_) => "NotInGroup",
            GroupError::NotASubgroup => "NotASubgroup",
            GroupError::PointOutOfRange(_) => "PointOutOfRange",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjugacyClass {
    pub representative: Permutation,
    pub elements: Vec<Permutation>,
}

impl ConjugacyClass {
    pub fn size(&self) -> usize {
        self.elements.len()
    }
}

/// A permutation group together with the full list of its elements.
#[derive(Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    classes: OnceLock<Vec<ConjugacyClass>>,
}

fn check_degree(degree: usize, perms: &[Permutation]) -> Result<(), GroupError> {
    match perms.iter().find(|p| p.degree() != degree) {
        Some(p) => Err(GroupError::DegreeMismatch { expected: degree, found: p.degree() }),
        None => Ok(()),
    }
}

/// Breadth-first closure of `generators` under right multiplication.
fn bfs_closure(degree: usize, generators: &[Permutation], cap: usize) -> Result<Vec<Permutation>, GroupError> {
    let identity = Permutation::identity(degree);
    let mut seen = HashSet::from([identity.clone()]);
    let mut elements = vec![identity.clone()];
    let mut queue = VecDeque::from([identity]);
    while let Some(x) = queue.pop_front() {
        for g in generators {
            let y = x.then(g);
            if seen.insert(y.clone()) {
                if elements.len() >= cap {
                    return Err(GroupError::TooLarge { cap });
                }
                elements.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(elements)
}

pub fn close_group(degree: usize, generators: Vec<Permutation>) -> Result<PermGroup, GroupError> {
    close_group_with_cap(degree, generators, DEFAULT_ELEMENT_CAP)
}

pub fn close_group_with_cap(degree: usize, generators: Vec<Permutation>, cap: usize) -> Result<PermGroup, GroupError> {
    if degree == 0 {
        return Err(GroupError::EmptyDegree);
    }
    if generators.is_empty() {
        return Err(GroupError::NoGenerators);
    }
    check_degree(degree, &generators)?;
    let elements = bfs_closure(degree, &generators, cap)?;
    let index = elements.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
    Ok(PermGroup { degree, generators, elements, index, classes: OnceLock::new() })
}

impl PermGroup {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Elements in breadth-first discovery order; the identity comes first.
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.index.contains_key(p)
    }

    fn require(&self, p: &Permutation) -> Result<(), GroupError> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(GroupError::NotInGroup(p.to_string()))
        }
    }

    /// Conjugacy classes sorted by representative, each representative being
    /// the lexicographically least element of its class.
    pub fn conjugacy_classes(&self) -> &[ConjugacyClass] {
        self.classes.get_or_init(|| {
            let mut sorted: Vec<&Permutation> = self.elements.iter().collect();
            sorted.sort();
            let mut assigned = HashSet::new();
            let mut classes = Vec::new();
            for x in sorted {
                if assigned.contains(x) {
                    continue;
                }
                let class: BTreeSet<Permutation> = self.elements.iter().map(|y| x.conjugate_by(y)).collect();
                assigned.extend(class.iter().cloned());
                let elements: Vec<Permutation> = class.into_iter().collect();
                classes.push(ConjugacyClass { representative: elements[0].clone(), elements });
            }
            classes
        })
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup::from_sorted(vec![Permutation::identity(self.degree)])
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_sorted(self.elements.clone())
    }

    /// Stabilizer of a single point.
    pub fn point_stabilizer(&self, point: usize) -> Result<Subgroup, GroupError> {
        self.set_stabilizer(&[point])
    }

    /// Setwise stabilizer of `points`.
    pub fn set_stabilizer(&self, points: &[usize]) -> Result<Subgroup, GroupError> {
        if let Some(&p) = points.iter().find(|&&p| p >= self.degree) {
            return Err(GroupError::PointOutOfRange(p));
        }
        let set: BTreeSet<usize> = points.iter().copied().collect();
        let elements = self
            .elements
            .iter()
            .filter(|g| set.iter().all(|&p| set.contains(&g.apply(p))))
            .cloned()
            .collect();
        Ok(Subgroup::from_sorted(elements))
    }
}

/// A subgroup, stored as its sorted element list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    elements: Vec<Permutation>,
    members: HashSet<Permutation>,
}

impl Subgroup {
    fn from_sorted(mut elements: Vec<Permutation>) -> Self {
        elements.sort();
        let members = elements.iter().cloned().collect();
        Subgroup { elements, members }
    }

    /// The subgroup of `group` generated by `generators`.
    pub fn generated(group: &PermGroup, generators: &[Permutation]) -> Result<Self, GroupError> {
        check_degree(group.degree, generators)?;
        for g in generators {
            group.require(g)?;
        }
        let elements = bfs_closure(group.degree, generators, group.order())?;
        Ok(Subgroup::from_sorted(elements))
    }

    /// Checks that `elements` is a subgroup of `group` and wraps it.
    pub fn from_elements(group: &PermGroup, elements: Vec<Permutation>) -> Result<Self, GroupError> {
        check_degree(group.degree, &elements)?;
        for e in &elements {
            group.require(e)?;
        }
        let sub = Subgroup::from_sorted(elements);
        let closed = !sub.elements.is_empty()
            && sub.elements.iter().all(|a| sub.elements.iter().all(|b| sub.contains(&a.then(b))));
        if !closed {
            return Err(GroupError::NotASubgroup);
        }
        Ok(sub)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.members.contains(p)
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    /// `x⁻¹ H x`.
    pub fn conjugate_by(&self, x: &Permutation) -> Subgroup {
        Subgroup::from_sorted(self.elements.iter().map(|h| h.conjugate_by(x)).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassCount {
    pub representative: Permutation,
    pub class_size: usize,
    pub in_h1: usize,
    pub in_h2: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GassmannReport {
    pub is_gassmann: bool,
    pub classes: Vec<ClassCount>,
}

/// Compares `|C ∩ H₁|` and `|C ∩ H₂|` over every conjugacy class `C` of `group`.
pub fn is_gassmann(group: &PermGroup, h1: &Subgroup, h2: &Subgroup) -> GassmannReport {
    let classes: Vec<ClassCount> = group
        .conjugacy_classes()
        .iter()
        .map(|c| ClassCount {
            representative: c.representative.clone(),
            class_size: c.size(),
            in_h1: c.elements.iter().filter(|e| h1.contains(e)).count(),
            in_h2: c.elements.iter().filter(|e| h2.contains(e)).count(),
        })
        .collect();
    let holds = classes.iter().all(|c| c.in_h1 == c.in_h2);
    if holds {
        assert_eq!(h1.order(), h2.order(), "Gassmann-equivalent subgroups must have equal order");
    }
    GassmannReport { is_gassmann: holds, classes }
}

/// Some `x` in `group` with `x⁻¹ H₁ x = H₂`, by exhaustive search.
pub fn conjugating_element(group: &PermGroup, h1: &Subgroup, h2: &Subgroup) -> Option<Permutation> {
    if h1.order() != h2.order() {
        return None;
    }
    group
        .elements()
        .iter()
        .find(|x| h1.elements.iter().all(|h| h2.contains(&h.conjugate_by(x))))
        .cloned()
}

pub fn are_conjugate(group: &PermGroup, h1: &Subgroup, h2: &Subgroup) -> bool {
    conjugating_element(group, h1, h2).is_some()
}

/// Closes a generator multiset under inverses: afterwards every `σ` occurs
/// exactly as often as `σ⁻¹`. Missing inverses are appended in input order.
pub fn symmetrize(gens: &[Permutation]) -> Vec<Permutation> {
    let mut counts: HashMap<&Permutation, usize> = HashMap::new();
    for g in gens {
        *counts.entry(g).or_default() += 1;
    }
    let mut out = gens.to_vec();
    let mut added: HashMap<Permutation, usize> = HashMap::new();
    for g in gens {
        let inv = g.inverse();
        let have = counts.get(&inv).copied().unwrap_or(0) + added.get(&inv).copied().unwrap_or(0);
        if have < counts[g] {
            *added.entry(inv.clone()).or_default() += 1;
            out.push(inv);
        }
    }
    out
}

/// The coset graph `H\G` under right multiplication by a symmetric multiset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SchreierGraph {
    /// Least element of each right coset, in increasing order.
    pub cosets: Vec<Permutation>,
    /// The symmetrized generator multiset.
    pub generators: Vec<Permutation>,
    pub adjacency: AdjacencyMatrix,
}

impl SchreierGraph {
    pub fn vertex_count(&self) -> usize {
        self.cosets.len()
    }
}

pub fn schreier_graph(group: &PermGroup, h: &Subgroup, gens: &[Permutation]) -> Result<SchreierGraph, GroupError> {
    if gens.is_empty() {
        return Err(GroupError::NoGenerators);
    }
    check_degree(group.degree, gens)?;
    for g in gens.iter().chain(h.elements.iter()) {
        group.require(g)?;
    }
    let generators = symmetrize(gens);

    let mut sorted: Vec<&Permutation> = group.elements.iter().collect();
    sorted.sort();
    let mut coset_of: HashMap<&Permutation, usize> = HashMap::with_capacity(group.order());
    let mut cosets = Vec::new();
    for x in sorted {
        if coset_of.contains_key(x) {
            continue;
        }
        let id = cosets.len();
        for hx in h.elements.iter().map(|h| h.then(x)) {
            let key = &group.elements[group.index[&hx]];
            coset_of.insert(key, id);
        }
        cosets.push(x.clone());
    }

    let n = cosets.len();
    let mut adjacency = vec![vec![0u64; n]; n];
    for (i, rep) in cosets.iter().enumerate() {
        for s in &generators {
            let j = coset_of[&rep.then(s)];
            adjacency[i][j] += 1;
        }
    }
    let adjacency = AdjacencyMatrix::new(adjacency).expect("symmetric generator multiset yields a symmetric matrix");
    Ok(SchreierGraph { cosets, generators, adjacency })
}

/// JSON form of a group: `{"degree": n, "generators": [[...], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub degree: usize,
    pub generators: Vec<Permutation>,
}

impl GroupSpec {
    pub fn close(&self) -> Result<PermGroup, GroupError> {
        close_group(self.degree, self.generators.clone())
    }
}

/// JSON form of a subgroup: explicit generators, indices into the parent's
/// generator list, or a point set whose stabilizer is taken.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SubgroupSpec {
    Generators { generators: Vec<Permutation> },
    GeneratorIndices { generator_indices: Vec<usize> },
    Stabilizer { stabilizer_of: Vec<usize> },
}

impl SubgroupSpec {
    pub fn resolve(&self, group: &PermGroup) -> Result<Subgroup, GroupError> {
        match self {
            SubgroupSpec::Generators { generators } if generators.is_empty() => Ok(group.trivial_subgroup()),
            SubgroupSpec::Generators { generators } => Subgroup::generated(group, generators),
            SubgroupSpec::GeneratorIndices { generator_indices } => {
                let gens = generator_indices
                    .iter()
                    .map(|&i| group.generators.get(i).cloned().ok_or(GroupError::NotInGroup(format!("generator #{i}"))))
                    .collect::<Result<Vec<_>, _>>()?;
                if gens.is_empty() {
                    return Ok(group.trivial_subgroup());
                }
                Subgroup::generated(group, &gens)
            }
            SubgroupSpec::Stabilizer { stabilizer_of } => group.set_stabilizer(stabilizer_of),
        }
    }
}
