//! Circulant embeddings of chord graphs and n_3 configuration checks.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::graphlab::{
    are_isomorphic, automorphism_group, bipartition, find_isomorphism_coloured, girth, Graph,
    GraphError, Permutation,
};
use crate::harmony::Mode;
use crate::tonnetz::{chord_index, LabeledEdge, LabeledGraph, PlrOffsets, VertexTag};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CirculantError {
    #[error("jump {jump} is not in 1..{n_vertices}")]
    JumpOutOfRange { jump: usize, n_vertices: usize },
    #[error("bipartite circulants need an even vertex count and odd jumps (n={n_vertices}, jump={jump})")]
    NotBipartite { jump: usize, n_vertices: usize },
}

/// How a jump `j` turns into edges on `Z_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CirculantKind {
    /// `u ~ u + j` and `u ~ u - j` for every `u`.
    Standard,
    /// `2i ~ 2i + j` for every even vertex; jumps are odd.
    Bipartite,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CirculantDescriptor {
    pub n_vertices: usize,
    pub jumps: BTreeSet<usize>,
    pub kind: CirculantKind,
}

impl CirculantDescriptor {
    pub fn new(
        n_vertices: usize,
        jumps: impl IntoIterator<Item = usize>,
        kind: CirculantKind,
    ) -> Result<Self, CirculantError> {
        let jumps: BTreeSet<usize> = jumps.into_iter().collect();
        for &jump in &jumps {
            if jump == 0 || jump >= n_vertices {
                return Err(CirculantError::JumpOutOfRange { jump, n_vertices });
            }
            if kind == CirculantKind::Bipartite && (n_vertices % 2 == 1 || jump % 2 == 0) {
                return Err(CirculantError::NotBipartite { jump, n_vertices });
            }
        }
        Ok(CirculantDescriptor {
            n_vertices,
            jumps,
            kind,
        })
    }

    /// Jumps folded into `1..=n/2` as `±` classes.
    pub fn symmetric_classes(&self) -> BTreeSet<usize> {
        self.jumps
            .iter()
            .map(|&j| j.min(self.n_vertices - j))
            .collect()
    }

    pub fn edges(&self) -> BTreeSet<(usize, usize)> {
        let n = self.n_vertices;
        let ordered = |u: usize, v: usize| (u.min(v), u.max(v));
        let mut out = BTreeSet::new();
        for &j in &self.jumps {
            match self.kind {
                CirculantKind::Standard => {
                    for u in 0..n {
                        out.insert(ordered(u, (u + j) % n));
                    }
                }
                CirculantKind::Bipartite => {
                    for u in (0..n).step_by(2) {
                        out.insert(ordered(u, (u + j) % n));
                    }
                }
            }
        }
        out
    }

    pub fn graph(&self) -> Graph {
        let edges: Vec<_> = self.edges().into_iter().collect();
        Graph::from_edges(self.n_vertices, &edges).expect("jumps are nonzero and in range")
    }
}

/// Vertex images under the interleaving `D_i -> 2i`, `M_i -> 2i + 1`, in chord layout order.
pub fn interleave_map(n: u32) -> Vec<usize> {
    let mut phi = vec![0; 2 * n as usize];
    for i in 0..n {
        phi[chord_index(n, Mode::Major, i)] = 2 * i as usize;
        phi[chord_index(n, Mode::Minor, i)] = 2 * i as usize + 1;
    }
    phi
}

/// Jumps `2k + 1 mod 2n` for the offsets `k` of a chord system.
pub fn jump_set_from_offsets(offsets: &PlrOffsets) -> CirculantDescriptor {
    let n2 = 2 * offsets.n as usize;
    let jumps = offsets.sorted().into_iter().map(|k| (2 * k as usize + 1) % n2);
    CirculantDescriptor::new(n2, jumps, CirculantKind::Bipartite).expect("odd jumps below 2n")
}

pub fn build_circulant(desc: &CirculantDescriptor) -> LabeledGraph {
    let vertices = (0..desc.n_vertices).map(VertexTag::Plain).collect();
    let edges = desc
        .edges()
        .into_iter()
        .map(|(a, b)| LabeledEdge {
            a,
            b,
            label: None,
            common_tones: None,
        })
        .collect();
    LabeledGraph::new(vertices, edges).expect("circulant edges are simple")
}

/// Whether `phi` carries the edges of `g` exactly onto the circulant's edges.
pub fn verify_circulant_embedding(g: &Graph, phi: &[usize], desc: &CirculantDescriptor) -> bool {
    if g.order() != desc.n_vertices || Permutation::new(phi.to_vec()).is_err() {
        return false;
    }
    let image: BTreeSet<(usize, usize)> = g
        .edges()
        .map(|(a, b)| (phi[a].min(phi[b]), phi[a].max(phi[b])))
        .collect();
    image == desc.edges()
}

/// Why a graph fails to be the Levi graph of an n_3 configuration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum ConfigurationFailure {
    NotBipartite,
    UnequalSides { points: usize, lines: usize },
    NotCubic,
    /// Shortest cycle below 6: two points share more than one line.
    Girth { girth: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigurationVerdict {
    pub is_n3: bool,
    /// Points (equivalently lines) per side when the graph is bipartite with equal sides.
    pub n: Option<usize>,
    pub reasons: Vec<ConfigurationFailure>,
    pub self_dual: bool,
    /// Automorphism exchanging the two sides.
    pub duality: Option<Permutation>,
    pub cyclic: bool,
    /// Automorphism acting as a single n-cycle on each side.
    pub cyclic_symmetry: Option<Permutation>,
}

/// Elements searched when no rotation candidate is supplied or it fails.
const CYCLIC_SEARCH_LIMIT: usize = 1 << 16;

pub fn check_n3_configuration(g: &Graph) -> Result<ConfigurationVerdict, GraphError> {
    check_n3_configuration_with(g, None)
}

/// As [`check_n3_configuration`], trying `candidate` first for the cyclic test.
pub fn check_n3_configuration_with(
    g: &Graph,
    candidate: Option<&Permutation>,
) -> Result<ConfigurationVerdict, GraphError> {
    let mut reasons = Vec::new();
    let sides = bipartition(g);
    let mut n = None;
    match &sides {
        None => reasons.push(ConfigurationFailure::NotBipartite),
        Some((a, b)) if a.len() != b.len() => reasons.push(ConfigurationFailure::UnequalSides {
            points: b.len(),
            lines: a.len(),
        }),
        Some((a, _)) => n = Some(a.len()),
    }
    if g.order() == 0 || g.regular_degree() != Some(3) {
        reasons.push(ConfigurationFailure::NotCubic);
    }
    if let Some(k) = girth(g).filter(|&k| k < 6) {
        reasons.push(ConfigurationFailure::Girth { girth: k });
    }

    let mut duality = None;
    let mut cyclic_symmetry = None;
    if let (Some((a, b)), Some(side_len)) = (&sides, n) {
        let mut colours = vec![0; g.order()];
        for &v in b {
            colours[v] = 1;
        }
        let swapped: Vec<usize> = colours.iter().map(|c| 1 - c).collect();
        duality = find_isomorphism_coloured(g, &colours, g, &swapped)?
            .map(|m| Permutation::new(m).expect("isomorphisms are bijections"));
        cyclic_symmetry = find_cyclic_symmetry(g, a, b, side_len, candidate)?;
    }
    let verdict = ConfigurationVerdict {
        is_n3: reasons.is_empty(),
        n,
        reasons,
        self_dual: duality.is_some(),
        duality,
        cyclic: cyclic_symmetry.is_some(),
        cyclic_symmetry,
    };
    if verdict.is_n3 {
        assert!(girth(g).map_or(true, |k| k >= 6) && g.regular_degree() == Some(3));
    }
    Ok(verdict)
}

/// Whether `p` is an automorphism acting as one full cycle on each side.
fn cycles_each_side(g: &Graph, p: &Permutation, a: &[usize], b: &[usize]) -> bool {
    if !g.is_automorphism(p.images()) {
        return false;
    }
    let cycles = p.cycles();
    let a_set: BTreeSet<usize> = a.iter().copied().collect();
    let b_set: BTreeSet<usize> = b.iter().copied().collect();
    cycles.len() == 2
        && cycles.iter().all(|c| {
            let s: BTreeSet<usize> = c.iter().copied().collect();
            s == a_set || s == b_set
        })
}

fn find_cyclic_symmetry(
    g: &Graph,
    a: &[usize],
    b: &[usize],
    side_len: usize,
    candidate: Option<&Permutation>,
) -> Result<Option<Permutation>, GraphError> {
    if let Some(p) = candidate {
        if p.degree() == g.order() && cycles_each_side(g, p, a, b) {
            return Ok(Some(p.clone()));
        }
    }
    let group = automorphism_group(g)?;
    if group.order % side_len as u128 != 0 {
        return Ok(None);
    }
    let elements = group.elements(CYCLIC_SEARCH_LIMIT)?;
    Ok(elements.into_iter().find(|p| cycles_each_side(g, p, a, b)))
}

/// Levi graph of the cyclic structure with lines `L_i = {i + x : x in base}` on `Z_n`.
///
/// Vertices `0..n` are lines, `n..2n` are points.
pub fn cyclic_levi_graph(n: usize, base: &[usize]) -> Graph {
    let mut g = Graph::empty(2 * n);
    for i in 0..n {
        for &x in base {
            g.add_edge(i, n + (i + x) % n).expect("line and point vertices differ");
        }
    }
    g
}

/// Least `(a, b)` with `{0, a, b}` equivalent to `{0, x, y}` under shift and negation on `Z_n`.
pub fn canonical_difference_triple(n: usize, x: usize, y: usize) -> (usize, usize) {
    let base = [0, x % n, y % n];
    let negated = base.map(|v| (n - v) % n);
    let mut best = (n, n);
    for set in [base, negated] {
        for &origin in &set {
            let mut shifted: Vec<usize> = set.iter().map(|&v| (v + n - origin) % n).collect();
            shifted.sort_unstable();
            best = best.min((shifted[1], shifted[2]));
        }
    }
    best
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusEntry {
    pub a: usize,
    pub b: usize,
    pub canonical: (usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CyclicCensus {
    pub n: usize,
    /// Number of `(a, b)` pairs examined.
    pub candidates: usize,
    /// Pairs whose Levi graph has girth at least 6.
    pub survivors: Vec<CensusEntry>,
    /// Survivors grouped by isomorphism of their Levi graphs.
    pub classes: Vec<Vec<(usize, usize)>>,
}

/// All `{0, a, b}`, `0 < a < b < n`, generating an n_3 configuration, with classes.
pub fn enumerate_cyclic_configurations(n: usize) -> Result<CyclicCensus, GraphError> {
    let mut candidates = 0;
    let mut survivors = Vec::new();
    for a in 1..n {
        for b in a + 1..n {
            candidates += 1;
            let levi = cyclic_levi_graph(n, &[0, a, b]);
            if girth(&levi).map_or(true, |k| k >= 6) {
                survivors.push(CensusEntry {
                    a,
                    b,
                    canonical: canonical_difference_triple(n, a, b),
                });
            }
        }
    }
    let mut classes: Vec<(Graph, Vec<(usize, usize)>)> = Vec::new();
    for entry in &survivors {
        let levi = cyclic_levi_graph(n, &[0, entry.a, entry.b]);
        let mut placed = false;
        for (rep, members) in classes.iter_mut() {
            if are_isomorphic(rep, &levi)?.is_some() {
                members.push((entry.a, entry.b));
                placed = true;
                break;
            }
        }
        if !placed {
            classes.push((levi, vec![(entry.a, entry.b)]));
        }
    }
    Ok(CyclicCensus {
        n,
        candidates,
        survivors,
        classes: classes.into_iter().map(|(_, m)| m).collect(),
    })
}

pub fn enumerate_cyclic_103() -> Result<CyclicCensus, GraphError> {
    enumerate_cyclic_configurations(10)
}

/// Canonical triples of a census keyed to the pairs that reduce to them.
pub fn canonical_groups(census: &CyclicCensus) -> BTreeMap<(usize, usize), Vec<(usize, usize)>> {
    let mut out: BTreeMap<(usize, usize), Vec<(usize, usize)>> = BTreeMap::new();
    for e in &census.survivors {
        out.entry(e.canonical).or_default().push((e.a, e.b));
    }
    out
}
