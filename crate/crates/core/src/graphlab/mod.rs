//! Small-graph toolkit: structure, cycles, automorphisms and invariants.

mod automorphism;
mod cycles;
mod graph;
mod hamilton;
mod invariants;
mod perm;
mod structure;

use thiserror::Error;

pub use automorphism::{
    are_isomorphic, automorphism_group, automorphism_group_coloured, find_isomorphism_coloured,
    MAX_VERTICES,
};
pub use cycles::{canonical_cycle, classify_cycles, enumerate_cycles, CycleClass, Orientation};
pub use graph::Graph;
pub use hamilton::{hamiltonian_cycle, is_hamiltonian_cycle};
pub use invariants::{analyze, InvariantReport};
pub use perm::{closure, is_dihedral, orbit, Permutation, PermutationGroup};
pub use structure::{bipartition, components, girth, is_connected};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range for a graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("images do not form a permutation")]
    NotAPermutation,
    #[error("group has more than {limit} elements")]
    GroupTooLarge { limit: usize },
    #[error("graph of order {order} exceeds the supported maximum of {max}")]
    UnsupportedSize { order: usize, max: usize },
}
