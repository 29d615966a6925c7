//! Bundled inputs: GL(3,2) ≅ PSL(2,7) on the Fano plane, its point and line
//! stabilizers (a non-conjugate Gassmann pair of index 7), and a generator
//! multiset for the two coset graphs.

use serde::Deserialize;

use crate::gassmann::{GroupSpec, SubgroupSpec};
use crate::perm::Permutation;

pub const PSL27_GROUP: &str = include_str!("../fixtures/psl27_group.json");
pub const PSL27_POINT_STABILIZER: &str = include_str!("../fixtures/psl27_point_stabilizer.json");
pub const PSL27_LINE_STABILIZER: &str = include_str!("../fixtures/psl27_line_stabilizer.json");
pub const PSL27_SCHREIER_GENS: &str = include_str!("../fixtures/psl27_schreier_gens.json");

/// A generator multiset file: a bare list or `{"generators": [...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum GeneratorList {
    Bare(Vec<Permutation>),
    Wrapped { generators: Vec<Permutation> },
}

impl GeneratorList {
    pub fn into_vec(self) -> Vec<Permutation> {
        match self {
            GeneratorList::Bare(v) | GeneratorList::Wrapped { generators: v } => v,
        }
    }
}

pub fn psl27_group() -> GroupSpec {
    serde_json::from_str(PSL27_GROUP).expect("bundled group fixture parses")
}

pub fn psl27_point_stabilizer() -> SubgroupSpec {
    serde_json::from_str(PSL27_POINT_STABILIZER).expect("bundled subgroup fixture parses")
}

pub fn psl27_line_stabilizer() -> SubgroupSpec {
    serde_json::from_str(PSL27_LINE_STABILIZER).expect("bundled subgroup fixture parses")
}

pub fn psl27_schreier_gens() -> Vec<Permutation> {
    serde_json::from_str::<GeneratorList>(PSL27_SCHREIER_GENS).expect("bundled generator fixture parses").into_vec()
}
