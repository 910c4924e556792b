use serde::{Deserialize, Serialize};

use super::{
    automorphism_group, bipartition, components, girth, hamiltonian_cycle, Graph, GraphError,
    Permutation,
};

/// The standard invariants of one graph, computed together.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub order: usize,
    pub size: usize,
    pub degree_sequence: Vec<usize>,
    pub regular_degree: Option<usize>,
    pub bipartition: Option<(Vec<usize>, Vec<usize>)>,
    pub component_count: usize,
    /// `None` means the graph is a forest.
    pub girth: Option<usize>,
    pub hamiltonian_witness: Option<Vec<usize>>,
    pub aut_order: u128,
    pub aut_generators: Vec<Permutation>,
}

impl InvariantReport {
    pub fn is_bipartite(&self) -> bool {
        self.bipartition.is_some()
    }

    pub fn is_hamiltonian(&self) -> bool {
        self.hamiltonian_witness.is_some()
    }
}

pub fn analyze(g: &Graph) -> Result<InvariantReport, GraphError> {
    let group = automorphism_group(g)?;
    for p in &group.generators {
        assert!(g.is_automorphism(p.images()), "generator {p} does not preserve edges");
    }
    Ok(InvariantReport {
        order: g.order(),
        size: g.size(),
        degree_sequence: g.degree_sequence(),
        regular_degree: g.regular_degree(),
        bipartition: bipartition(g),
        component_count: components(g).len(),
        girth: girth(g),
        hamiltonian_witness: hamiltonian_cycle(g),
        aut_order: group.order,
        aut_generators: group.generators,
    })
}
