//! Brauer class invariants over global fields, ring-isomorphism classification
//! of division algebras, certified families of pairwise non-commensurable
//! classes, and an exact Gassmann/Sunada isospectrality pipeline on
//! Schreier coset graphs.

pub mod arith;
pub mod brauer;
pub mod cli;
pub mod commensurability;
pub mod cyclic_symbols;
pub mod fixtures;
pub mod gassmann;
pub mod perm;
pub mod spectra;

use thiserror::Error;

pub use brauer::{BrauerClass, BrauerError, LocalInvariant, Place, PlaceKind};
pub use commensurability::{
    choose_t, decide_ring_relation, enumerate_family, verify_certificate, CommError, CommensurabilityVerdict,
    FamilyCertificate, PlaceUniverse, Relation,
};
pub use cyclic_symbols::{hilbert_symbol, quaternion_class, unramified_invariant, SymbolError, UnramifiedCyclicDatum};
pub use gassmann::{are_conjugate, close_group, is_gassmann, schreier_graph, GroupError, PermGroup, Subgroup};
pub use perm::Permutation;
pub use spectra::{char_poly, graph_isomorphic, isospectral, AdjacencyMatrix, IntPolynomial, IsoStatus, SpectraError};

/// Any domain error raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Brauer(#[from] BrauerError),
    #[error(transparent)]
    Symbol(#[from] SymbolError),
    #[error(transparent)]
    Comm(#[from] CommError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Spectra(#[from] SpectraError),
    #[error(transparent)]
    Permutation(#[from] perm::InvalidPermutation),
}

impl Error {
    /// The error's variant name, e.g. `SumNonZero`.
    pub fn name(&self) -> &'static str {
        match self {
            Error::Brauer(e) => e.name(),
            Error::Symbol(e) => e.name(),
            Error::Comm(e) => e.name(),
            Error::Group(e) => e.name(),
            Error::Spectra(e) => e.name(),
            Error::Permutation(_) => "InvalidPermutation",
        }
    }
}
