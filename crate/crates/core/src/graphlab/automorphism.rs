//! Automorphism groups and isomorphisms by individualization and refinement.
//!
//! Colourings are refined jointly on a pair of graphs: each vertex gets the
//! signature (colour, sorted neighbour colours) and signatures are ranked over
//! the union of both graphs. The pair stays compatible only while both sides
//! have the same histogram of signatures. Individualizing `v` on the left and
//! `w` on the right and refining again restricts the search to bijections
//! sending `v` to `w`.

use super::perm::{orbit, Permutation, PermutationGroup};
use super::{Graph, GraphError};

/// Largest graph accepted by the exact searches.
pub const MAX_VERTICES: usize = 32;

type Colouring = Vec<usize>;

fn check_size(g: &Graph) -> Result<(), GraphError> {
    if g.order() > MAX_VERTICES {
        Err(GraphError::UnsupportedSize {
            order: g.order(),
            max: MAX_VERTICES,
        })
    } else {
        Ok(())
    }
}

fn class_count(c: &Colouring) -> usize {
    c.iter().max().map_or(0, |m| m + 1)
}

/// One joint refinement round; `None` when the two sides stop matching.
fn refine_round(
    g1: &Graph,
    c1: &Colouring,
    g2: &Graph,
    c2: &Colouring,
) -> Option<(Colouring, Colouring)> {
    let signature = |g: &Graph, c: &Colouring, v: usize| {
        let mut nbrs: Vec<usize> = g.neighbors(v).iter().map(|&w| c[w]).collect();
        nbrs.sort_unstable();
        (c[v], nbrs)
    };
    let s1: Vec<_> = (0..g1.order()).map(|v| signature(g1, c1, v)).collect();
    let s2: Vec<_> = (0..g2.order()).map(|v| signature(g2, c2, v)).collect();
    let mut sorted1 = s1.clone();
    let mut sorted2 = s2.clone();
    sorted1.sort();
    sorted2.sort();
    if sorted1 != sorted2 {
        return None;
    }
    sorted1.dedup();
    let rank = |s: &(usize, Vec<usize>)| sorted1.binary_search(s).expect("present");
    Some((s1.iter().map(rank).collect(), s2.iter().map(rank).collect()))
}

/// Refines to the coarsest equitable colouring pair.
fn refine(
    g1: &Graph,
    mut c1: Colouring,
    g2: &Graph,
    mut c2: Colouring,
) -> Option<(Colouring, Colouring)> {
    loop {
        let before = class_count(&c1);
        let (n1, n2) = refine_round(g1, &c1, g2, &c2)?;
        c1 = n1;
        c2 = n2;
        if class_count(&c1) == before {
            return Some((c1, c2));
        }
    }
}

fn individualize(c: &Colouring, v: usize) -> Colouring {
    let mut out = c.clone();
    out[v] = class_count(c);
    out
}

/// First colour class with more than one vertex, and its members.
fn target_cell(c: &Colouring) -> Option<(usize, Vec<usize>)> {
    let k = class_count(c);
    let mut sizes = vec![0usize; k];
    for &x in c {
        sizes[x] += 1;
    }
    let colour = (0..k).find(|&x| sizes[x] > 1)?;
    Some((colour, (0..c.len()).filter(|&v| c[v] == colour).collect()))
}

/// Depth-first search for an isomorphism compatible with the refined pair.
fn search(g1: &Graph, c1: &Colouring, g2: &Graph, c2: &Colouring) -> Option<Vec<usize>> {
    match target_cell(c1) {
        None => {
            let mut by_colour = vec![usize::MAX; g2.order()];
            for (w, &x) in c2.iter().enumerate() {
                by_colour[x] = w;
            }
            let map: Vec<usize> = c1.iter().map(|&x| by_colour[x]).collect();
            g1.is_isomorphism_to(g2, &map).then_some(map)
        }
        Some((colour, cell)) => {
            let v = cell[0];
            for w in (0..g2.order()).filter(|&w| c2[w] == colour) {
                let Some((l, r)) = refine(g1, individualize(c1, v), g2, individualize(c2, w)) else {
                    continue;
                };
                if let Some(map) = search(g1, &l, g2, &r) {
                    return Some(map);
                }
            }
            None
        }
    }
}

/// An isomorphism `g1 -> g2` respecting vertex colours, verified before return.
pub fn find_isomorphism_coloured(
    g1: &Graph,
    colours1: &[usize],
    g2: &Graph,
    colours2: &[usize],
) -> Result<Option<Vec<usize>>, GraphError> {
    check_size(g1)?;
    check_size(g2)?;
    if g1.order() != g2.order() || g1.size() != g2.size() {
        return Ok(None);
    }
    assert_eq!(colours1.len(), g1.order());
    assert_eq!(colours2.len(), g2.order());
    // normalise both colourings to ranks over the shared palette
    let mut palette: Vec<usize> = colours1.iter().chain(colours2).copied().collect();
    palette.sort_unstable();
    palette.dedup();
    let rank = |c: &[usize]| -> Colouring {
        c.iter().map(|x| palette.binary_search(x).expect("present")).collect()
    };
    let Some((c1, c2)) = refine(g1, rank(colours1), g2, rank(colours2)) else {
        return Ok(None);
    };
    let found = search(g1, &c1, g2, &c2);
    if let Some(map) = &found {
        debug_assert!(g1.is_isomorphism_to(g2, map));
        assert!(map.iter().enumerate().all(|(v, &w)| colours1[v] == colours2[w]));
    }
    Ok(found)
}

/// A vertex bijection `g1 -> g2` preserving adjacency, if one exists.
pub fn are_isomorphic(g1: &Graph, g2: &Graph) -> Result<Option<Vec<usize>>, GraphError> {
    find_isomorphism_coloured(g1, &vec![0; g1.order()], g2, &vec![0; g2.order()])
}

/// The full automorphism group of `g` (optionally of a vertex colouring).
///
/// Builds a stabilizer chain top-down: at each level the first non-trivial
/// cell is split at its smallest vertex `b`, one automorphism is searched for
/// every cell member not yet reached from `b`, and the level contributes the
/// orbit length of `b` to the group order.
pub fn automorphism_group_coloured(g: &Graph, colours: &[usize]) -> Result<PermutationGroup, GraphError> {
    check_size(g)?;
    let n = g.order();
    assert_eq!(colours.len(), n);
    let mut palette: Vec<usize> = colours.to_vec();
    palette.sort_unstable();
    palette.dedup();
    let initial: Colouring = colours.iter().map(|x| palette.binary_search(x).unwrap()).collect();
    let (mut current, _) = refine(g, initial.clone(), g, initial).expect("a colouring matches itself");

    let mut generators: Vec<Permutation> = Vec::new();
    let mut order: u128 = 1;
    while let Some((colour, cell)) = target_cell(&current) {
        let base = cell[0];
        let (left, _) = refine(g, individualize(&current, base), g, individualize(&current, base))
            .expect("a colouring matches itself");
        let mut level: Vec<Permutation> = Vec::new();
        let mut reached = vec![base];
        for &w in cell.iter().skip(1) {
            if reached.contains(&w) {
                continue;
            }
            debug_assert_eq!(current[w], colour);
            let right = refine(g, individualize(&current, base), g, individualize(&current, w));
            let Some((l, r)) = right else { continue };
            if let Some(map) = search(g, &l, g, &r) {
                let perm = Permutation::new(map).expect("search returns bijections");
                assert!(g.is_automorphism(perm.images()));
                level.push(perm);
                reached = orbit(&level, base, n);
            }
        }
        order *= reached.len() as u128;
        generators.extend(level);
        current = left;
    }
    Ok(PermutationGroup {
        degree: n,
        generators,
        order,
    })
}

pub fn automorphism_group(g: &Graph) -> Result<PermutationGroup, GraphError> {
    automorphism_group_coloured(g, &vec![0; g.order()])
}
