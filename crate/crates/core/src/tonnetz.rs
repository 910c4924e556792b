//! PLR transformations and the chord graphs they generate.
//!
//! Vertices are laid out as `D_0 .. D_{n-1}, M_0 .. M_{n-1}`: major chord
//! `D_r` has index `r`, minor chord `M_r` has index `n + r`.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::graphlab::{Graph, GraphError, Permutation};
use crate::harmony::{residue, Chord, HarmonicSystem, HarmonyError, Mode};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TonnetzError {
    #[error(transparent)]
    Harmony(#[from] HarmonyError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("system {0} has a zero interval and no functional transformations")]
    Trivial(HarmonicSystem),
    #[error("transform {op} of {chord} shares only {common} tones")]
    BrokenTransform { op: Plr, chord: String, common: usize },
    #[error("chord of modulus {chord} used with a system of modulus {system}")]
    ModulusMismatch { chord: u32, system: u32 },
    #[error("edge {a} -- {b} would be added twice")]
    ParallelEdge { a: String, b: String },
}

/// Parallel, leading-tone and relative moves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Plr {
    P,
    L,
    R,
}

impl Plr {
    pub const ALL: [Plr; 3] = [Plr::P, Plr::L, Plr::R];

    pub fn letter(self) -> char {
        match self {
            Plr::P => 'P',
            Plr::L => 'L',
            Plr::R => 'R',
        }
    }
}

impl fmt::Display for Plr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown transformation letter {0:?}")]
pub struct ParseWordError(pub char);

impl FromStr for Plr {
    type Err = ParseWordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "P" | "p" => Ok(Plr::P),
            "L" | "l" => Ok(Plr::L),
            "R" | "r" => Ok(Plr::R),
            _ => Err(ParseWordError(s.chars().next().unwrap_or(' '))),
        }
    }
}

/// Parses a word such as `"PRPR"`; whitespace, commas and dots are ignored.
pub fn parse_word(word: &str) -> Result<Vec<Plr>, ParseWordError> {
    word.chars()
        .filter(|c| !c.is_whitespace() && *c != ',' && *c != '.' && *c != '·')
        .map(|c| c.to_string().parse())
        .collect()
}

/// `word` repeated `times` times.
pub fn repeat_word(word: &[Plr], times: usize) -> Vec<Plr> {
    word.iter().copied().cycle().take(word.len() * times).collect()
}

pub fn common_tones(a: &Chord, b: &Chord) -> BTreeSet<u32> {
    a.pitch_set().intersection(&b.pitch_set()).copied().collect()
}

/// Root shifts `k` joining `D_r` to `M_{r+k}`, one per transformation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlrOffsets {
    pub n: u32,
    pub p_offset: u32,
    pub l_offset: u32,
    pub r_offset: u32,
    /// Tones shared by `D_r` and its P, L, R images (2, or 3 when the move is
    /// the identity on pitch sets).
    pub common: [usize; 3],
    /// Other offsets whose minor chord shares at least two tones with `D_r`,
    /// in roles no transformation preserves.
    pub incidental: Vec<u32>,
}

impl PlrOffsets {
    pub fn offset(&self, op: Plr) -> u32 {
        match op {
            Plr::P => self.p_offset,
            Plr::L => self.l_offset,
            Plr::R => self.r_offset,
        }
    }

    pub fn common_tones(&self, op: Plr) -> usize {
        self.common[op as usize]
    }

    /// Sorted offsets.
    pub fn sorted(&self) -> Vec<u32> {
        let set: BTreeSet<u32> = Plr::ALL.iter().map(|&op| self.offset(op)).collect();
        set.into_iter().collect()
    }

    /// Transformations that keep all three tones.
    pub fn set_level_identities(&self) -> Vec<Plr> {
        Plr::ALL.into_iter().filter(|&op| self.common_tones(op) == 3).collect()
    }

    pub fn is_degenerate(&self) -> bool {
        !self.set_level_identities().is_empty()
    }
}

fn check_functional(sys: &HarmonicSystem) -> Result<(), TonnetzError> {
    if sys.is_trivial() {
        return Err(TonnetzError::Trivial(*sys));
    }
    Ok(())
}

/// Offsets of the three transformations with their shared-tone counts.
///
/// P keeps root and fifth (offset 0), L keeps third and fifth (offset `t`),
/// R keeps root and third (offset `-s`). A full scan over all `k` records any
/// other minor chord sharing two tones with `D_0`.
pub fn derive_plr_offsets(sys: &HarmonicSystem) -> Result<PlrOffsets, TonnetzError> {
    check_functional(sys)?;
    let n = sys.n;
    let d0 = sys.chord(Mode::Major, 0)?;
    let offsets = [0, sys.t, residue(-(sys.s as i64), n)];
    let mut common = [0usize; 3];
    for (i, &k) in offsets.iter().enumerate() {
        common[i] = common_tones(&d0, &sys.chord(Mode::Minor, k as i64)?).len();
        if common[i] < 2 {
            return Err(TonnetzError::BrokenTransform {
                op: Plr::ALL[i],
                chord: d0.name(),
                common: common[i],
            });
        }
    }
    let mut incidental = Vec::new();
    for k in (0..n).filter(|k| !offsets.contains(k)) {
        if common_tones(&d0, &sys.chord(Mode::Minor, k as i64)?).len() >= 2 {
            incidental.push(k);
        }
    }
    Ok(PlrOffsets {
        n,
        p_offset: offsets[0],
        l_offset: offsets[1],
        r_offset: offsets[2],
        common,
        incidental,
    })
}

/// Transformations taking major `d` to minor `m`, read off from which chord
/// positions (root 0, third 1, fifth 2) hold equal pitches.
///
/// P pairs root with root and fifth with fifth, L sends third and fifth to
/// root and third, R sends root and third to third and fifth.
pub fn transforms_between(d: &Chord, m: &Chord) -> Vec<Plr> {
    if d.mode != Mode::Major || m.mode != Mode::Minor || d.n != m.n {
        return Vec::new();
    }
    let matches = |i: usize, j: usize| d.pitches[i] == m.pitches[j];
    let mut out = Vec::new();
    if matches(0, 0) && matches(2, 2) {
        out.push(Plr::P);
    }
    if matches(1, 0) && matches(2, 1) {
        out.push(Plr::L);
    }
    if matches(0, 1) && matches(1, 2) {
        out.push(Plr::R);
    }
    out
}

/// Applies one transformation; majors move up by the offset, minors down.
pub fn apply_transform(sys: &HarmonicSystem, c: &Chord, op: Plr) -> Result<Chord, TonnetzError> {
    check_functional(sys)?;
    if c.n != sys.n {
        return Err(TonnetzError::ModulusMismatch { chord: c.n, system: sys.n });
    }
    let k = match op {
        Plr::P => 0,
        Plr::L => sys.t as i64,
        Plr::R => -(sys.s as i64),
    };
    let root = c.root as i64;
    let out = match c.mode {
        Mode::Major => sys.chord(Mode::Minor, root + k)?,
        Mode::Minor => sys.chord(Mode::Major, root - k)?,
    };
    Ok(out)
}

/// Tag of a graph vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VertexTag {
    Chord { mode: Mode, root: u32 },
    Plain(usize),
}

impl VertexTag {
    pub fn name(&self) -> String {
        match self {
            VertexTag::Chord { mode, root } => format!("{}{}", mode.letter(), root),
            VertexTag::Plain(i) => i.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledEdge {
    pub a: usize,
    pub b: usize,
    pub label: Option<Plr>,
    pub common_tones: Option<usize>,
}

/// An undirected graph with tagged vertices and optionally labelled edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    pub vertices: Vec<VertexTag>,
    /// Sorted by endpoints, `a < b`.
    pub edges: Vec<LabeledEdge>,
    graph: Graph,
}

impl LabeledGraph {
    /// Builds from tagged vertices and edges; rejects loops and repeated pairs.
    pub fn new(vertices: Vec<VertexTag>, edges: Vec<LabeledEdge>) -> Result<Self, TonnetzError> {
        let mut graph = Graph::empty(vertices.len());
        let mut normalized = Vec::with_capacity(edges.len());
        for e in edges {
            if !graph.add_edge(e.a, e.b)? {
                return Err(TonnetzError::ParallelEdge {
                    a: vertices[e.a].name(),
                    b: vertices[e.b].name(),
                });
            }
            let (a, b) = (e.a.min(e.b), e.a.max(e.b));
            normalized.push(LabeledEdge { a, b, ..e });
        }
        normalized.sort_by_key(|e| (e.a, e.b));
        Ok(LabeledGraph {
            vertices,
            edges: normalized,
            graph,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn name(&self, v: usize) -> String {
        self.vertices[v].name()
    }

    pub fn index_of(&self, tag: VertexTag) -> Option<usize> {
        self.vertices.iter().position(|&t| t == tag)
    }

    pub fn neighbor_names(&self, v: usize) -> Vec<String> {
        self.graph.neighbors(v).iter().map(|&w| self.name(w)).collect()
    }

    /// Undirected DOT with vertices in index order and `label` attributes on labelled edges.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        writeln!(out, "graph {name} {{").unwrap();
        for v in &self.vertices {
            writeln!(out, "  {};", v.name()).unwrap();
        }
        for e in &self.edges {
            let (a, b) = (self.name(e.a), self.name(e.b));
            match e.label {
                Some(l) => writeln!(out, "  {a} -- {b} [label=\"{l}\"];").unwrap(),
                None => writeln!(out, "  {a} -- {b};").unwrap(),
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Index of `(mode, root)` in the standard layout.
pub fn chord_index(n: u32, mode: Mode, root: u32) -> usize {
    match mode {
        Mode::Major => root as usize,
        Mode::Minor => (n + root) as usize,
    }
}

pub fn chord_vertices(n: u32) -> Vec<VertexTag> {
    let tags = |mode| (0..n).map(move |root| VertexTag::Chord { mode, root });
    tags(Mode::Major).chain(tags(Mode::Minor)).collect()
}

fn build(sys: &HarmonicSystem, keep: impl Fn(usize) -> bool) -> Result<LabeledGraph, TonnetzError> {
    let offsets = derive_plr_offsets(sys)?;
    let n = sys.n;
    let mut edges = Vec::new();
    for r in 0..n {
        let d = sys.chord(Mode::Major, r as i64)?;
        for op in Plr::ALL {
            let common = offsets.common_tones(op);
            if !keep(common) {
                continue;
            }
            let m = apply_transform(sys, &d, op)?;
            edges.push(LabeledEdge {
                a: chord_index(n, Mode::Major, r),
                b: chord_index(n, Mode::Minor, m.root),
                label: Some(op),
                common_tones: Some(common),
            });
        }
    }
    LabeledGraph::new(chord_vertices(n), edges)
}

/// All P, L and R edges, including those that fix the pitch set.
pub fn build_functional_tonnetz(sys: &HarmonicSystem) -> Result<LabeledGraph, TonnetzError> {
    build(sys, |_| true)
}

/// Only edges between chords with exactly two common tones.
pub fn build_set_level_tonnetz(sys: &HarmonicSystem) -> Result<LabeledGraph, TonnetzError> {
    build(sys, |common| common == 2)
}

/// Chords visited by a word, applied left to right.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WordPath {
    /// Starting chord followed by each intermediate result.
    pub chords: Vec<Chord>,
    pub closes: bool,
    /// Closes after exactly `2n` steps having visited every chord once.
    pub hamiltonian: bool,
}

impl WordPath {
    pub fn names(&self) -> Vec<String> {
        self.chords.iter().map(Chord::name).collect()
    }
}

pub fn word_cycle(sys: &HarmonicSystem, start: &Chord, word: &[Plr]) -> Result<WordPath, TonnetzError> {
    let mut chords = vec![*start];
    let mut current = *start;
    for &op in word {
        current = apply_transform(sys, &current, op)?;
        chords.push(current);
    }
    let closes = !word.is_empty() && current == *start;
    let visited: BTreeSet<(Mode, u32)> = chords[..chords.len() - 1]
        .iter()
        .map(|c| (c.mode, c.root))
        .collect();
    let hamiltonian = closes && word.len() == 2 * sys.n as usize && visited.len() == word.len();
    Ok(WordPath {
        chords,
        closes,
        hamiltonian,
    })
}

/// A non-backtracking walk `D_r -> M -> D_{r+shift}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct DoubleStep {
    pub first: Plr,
    pub second: Plr,
    pub shift: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DoubleSteps {
    pub steps: Vec<DoubleStep>,
    /// Two steps closing a 4-cycle `D -> M -> D' -> M' -> D`, if any exist.
    pub four_cycle: Option<(DoubleStep, DoubleStep)>,
}

impl DoubleSteps {
    /// Shifts as a sorted multiset.
    pub fn shifts(&self) -> Vec<u32> {
        let mut s: Vec<u32> = self.steps.iter().map(|d| d.shift).collect();
        s.sort_unstable();
        s
    }
}

/// The six double steps and the 4-cycle closure test.
///
/// Steps `(X, Y)` then `(Z, W)` close a 4-cycle when the shifts cancel and the
/// walk never doubles back: `Z != Y` at the middle major chord and `W != X` at
/// the start. The same step may be used twice.
pub fn double_step_shifts(sys: &HarmonicSystem) -> Result<DoubleSteps, TonnetzError> {
    let offsets = derive_plr_offsets(sys)?;
    let n = sys.n as i64;
    let mut steps = Vec::new();
    for first in Plr::ALL {
        for second in Plr::ALL {
            if first != second {
                let shift = offsets.offset(first) as i64 - offsets.offset(second) as i64;
                steps.push(DoubleStep {
                    first,
                    second,
                    shift: residue(shift, n as u32),
                });
            }
        }
    }
    let mut four_cycle = None;
    'search: for a in &steps {
        for b in &steps {
            if b.first != a.second && b.second != a.first && (a.shift as i64 + b.shift as i64) % n == 0 {
                four_cycle = Some((*a, *b));
                break 'search;
            }
        }
    }
    Ok(DoubleSteps { steps, four_cycle })
}

/// `(mode, r) -> (mode, r + 1)`.
pub fn rotation(n: u32) -> Permutation {
    let images = (0..2 * n)
        .map(|v| {
            let (base, r) = if v < n { (0, v) } else { (n, v - n) };
            (base + (r + 1) % n) as usize
        })
        .collect();
    Permutation::new(images).expect("rotation is a bijection")
}

/// Pitch negation `x -> -x`: `D_r -> M_{-r-q}` and `M_r -> D_{-r-q}`.
pub fn negation(sys: &HarmonicSystem) -> Permutation {
    let n = sys.n;
    let images = (0..2 * n)
        .map(|v| {
            let (mode, r) = if v < n { (Mode::Minor, v) } else { (Mode::Major, v - n) };
            chord_index(n, mode, residue(-(r as i64) - sys.q as i64, n))
        })
        .collect();
    Permutation::new(images).expect("negation is a bijection")
}
