//! One-stop analysis of a chord system, serializable as JSON.

use serde::{Deserialize, Serialize};

use crate::circulant::{
    check_n3_configuration_with, interleave_map, jump_set_from_offsets, verify_circulant_embedding,
    ConfigurationFailure,
};
use crate::graphlab::{
    automorphism_group, bipartition, classify_cycles, components, enumerate_cycles, girth,
    hamiltonian_cycle, is_dihedral, Orientation,
};
use crate::harmony::{detect_modal_degeneracy, fifth_status, FifthStatus, HarmonicSystem};
use crate::tonnetz::{
    build_functional_tonnetz, build_set_level_tonnetz, derive_plr_offsets, rotation, LabeledGraph,
    TonnetzError,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub system: HarmonicSystem,
    pub fifth: FifthStatus,
    pub degeneracy: Degeneracy,
    pub offsets: Vec<u32>,
    pub set_level: SetLevel,
    pub functional: Functional,
    pub circulant: CirculantSummary,
    pub configuration: ConfigurationSummary,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Degeneracy {
    pub degenerate: bool,
    pub sigma: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetLevel {
    pub edges: usize,
    pub components: usize,
    pub component_sizes: Vec<usize>,
    /// Degree of each vertex in layout order.
    pub degrees: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FourCycles {
    pub count: usize,
    /// Orbits of directed 4-cycles under the root rotation.
    pub oriented_classes: usize,
    /// Orbits of undirected 4-cycles under the root rotation.
    pub unoriented_classes: usize,
    /// Least member of each oriented orbit, as vertex names.
    pub representatives: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Functional {
    pub order: usize,
    pub edges: usize,
    pub regular_degree: Option<usize>,
    pub bipartite: bool,
    pub girth: Option<usize>,
    pub hamiltonian: bool,
    pub hamiltonian_witness: Option<Vec<String>>,
    pub four_cycle_classes: FourCycles,
    pub aut_order: u128,
    /// Whether the group is dihedral of order `2n`; absent when the order is not `2n`.
    pub dihedral: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CirculantSummary {
    pub n_vertices: usize,
    pub jumps: Vec<usize>,
    pub verified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigurationSummary {
    pub is_n3: bool,
    pub self_dual: bool,
    pub cyclic: bool,
    pub reasons: Vec<ConfigurationFailure>,
}

fn names(g: &LabeledGraph, path: &[usize]) -> Vec<String> {
    path.iter().map(|&v| g.name(v)).collect()
}

pub fn analyze_system(sys: &HarmonicSystem) -> Result<AnalysisReport, TonnetzError> {
    let offsets = derive_plr_offsets(sys)?;
    let functional = build_functional_tonnetz(sys)?;
    let set_level = build_set_level_tonnetz(sys)?;
    let g = functional.graph();
    let rot = rotation(sys.n);

    let sigma = detect_modal_degeneracy(sys);
    let set_components = components(set_level.graph());

    let four = enumerate_cycles(g, 4);
    let oriented = classify_cycles(&four, std::slice::from_ref(&rot), Orientation::Oriented);
    let unoriented = classify_cycles(&four, std::slice::from_ref(&rot), Orientation::Unoriented);

    let group = automorphism_group(g)?;
    for p in &group.generators {
        assert!(g.is_automorphism(p.images()));
    }
    let dihedral = (group.order == 2 * sys.n as u128).then(|| is_dihedral(&group, sys.n as u64));
    let witness = hamiltonian_cycle(g);

    let desc = jump_set_from_offsets(&offsets);
    let verified = verify_circulant_embedding(g, &interleave_map(sys.n), &desc);
    let verdict = check_n3_configuration_with(g, Some(&rot))?;

    Ok(AnalysisReport {
        system: *sys,
        fifth: fifth_status(sys.n, sys.q),
        degeneracy: Degeneracy {
            degenerate: sigma.is_some(),
            sigma,
        },
        offsets: offsets.sorted(),
        set_level: SetLevel {
            edges: set_level.size(),
            components: set_components.len(),
            component_sizes: set_components.iter().map(Vec::len).collect(),
            degrees: (0..set_level.order()).map(|v| set_level.graph().degree(v)).collect(),
        },
        functional: Functional {
            order: g.order(),
            edges: g.size(),
            regular_degree: g.regular_degree(),
            bipartite: bipartition(g).is_some(),
            girth: girth(g),
            hamiltonian: witness.is_some(),
            hamiltonian_witness: witness.map(|w| names(&functional, &w)),
            four_cycle_classes: FourCycles {
                count: four.len(),
                oriented_classes: oriented.len(),
                unoriented_classes: unoriented.len(),
                representatives: oriented.iter().map(|c| names(&functional, &c.representative)).collect(),
            },
            aut_order: group.order,
            dihedral,
        },
        circulant: CirculantSummary {
            n_vertices: desc.n_vertices,
            jumps: desc.jumps.iter().copied().collect(),
            verified,
        },
        configuration: ConfigurationSummary {
            is_n3: verdict.is_n3,
            self_dual: verdict.self_dual,
            cyclic: verdict.cyclic,
            reasons: verdict.reasons,
        },
    })
}
