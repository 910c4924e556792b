//! Simple cycles of a fixed length and their orbits under a permutation action.

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use super::{Graph, Permutation};

/// Whether a cycle's traversal direction matters when comparing cycles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    /// Equal up to cyclic shift and reversal.
    Unoriented,
    /// Equal up to cyclic shift only.
    Oriented,
}

/// One orbit of cycles; `members` are canonical and sorted, the first is the representative.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleClass {
    pub representative: Vec<usize>,
    pub members: Vec<Vec<usize>>,
}

/// Lexicographically least cyclic shift (and reversal, when unoriented).
pub fn canonical_cycle(cycle: &[usize], orientation: Orientation) -> Vec<usize> {
    let k = cycle.len();
    let mut best: Option<Vec<usize>> = None;
    let mut consider = |seq: Vec<usize>| {
        if best.as_ref().map_or(true, |b| seq < *b) {
            best = Some(seq);
        }
    };
    for shift in 0..k {
        consider((0..k).map(|i| cycle[(shift + i) % k]).collect());
        if orientation == Orientation::Unoriented {
            consider((0..k).map(|i| cycle[(shift + k - i) % k]).collect());
        }
    }
    best.unwrap_or_default()
}

/// All simple cycles with `length` vertices, each listed once in unoriented
/// canonical form (smallest vertex first, then its smaller neighbour), sorted.
pub fn enumerate_cycles(g: &Graph, length: usize) -> Vec<Vec<usize>> {
    assert!(length >= 3, "cycles have at least three vertices");
    let mut out = Vec::new();
    let mut path = Vec::with_capacity(length);
    let mut on_path = vec![false; g.order()];
    for start in 0..g.order() {
        path.push(start);
        on_path[start] = true;
        extend(g, length, start, &mut path, &mut on_path, &mut out);
        on_path[start] = false;
        path.pop();
    }
    out.sort();
    out
}

fn extend(
    g: &Graph,
    length: usize,
    start: usize,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    out: &mut Vec<Vec<usize>>,
) {
    let last = *path.last().expect("path starts non-empty");
    if path.len() == length {
        if g.has_edge(last, start) && path[1] < last {
            out.push(path.clone());
        }
        return;
    }
    for &w in g.neighbors(last) {
        if w > start && !on_path[w] {
            path.push(w);
            on_path[w] = true;
            extend(g, length, start, path, on_path, out);
            on_path[w] = false;
            path.pop();
        }
    }
}

/// Partitions `cycles` into orbits of the group generated by `generators`.
///
/// With [`Orientation::Oriented`] every input cycle contributes both of its
/// directions, so the result covers twice as many directed cycles.
pub fn classify_cycles(
    cycles: &[Vec<usize>],
    generators: &[Permutation],
    orientation: Orientation,
) -> Vec<CycleClass> {
    let mut pending: BTreeSet<Vec<usize>> = BTreeSet::new();
    for c in cycles {
        pending.insert(canonical_cycle(c, orientation));
        if orientation == Orientation::Oriented {
            let reversed: Vec<usize> = c.iter().rev().copied().collect();
            pending.insert(canonical_cycle(&reversed, orientation));
        }
    }
    let mut classes = Vec::new();
    while let Some(seed) = pending.pop_first() {
        let mut members = BTreeSet::from([seed.clone()]);
        let mut queue = VecDeque::from([seed]);
        while let Some(c) = queue.pop_front() {
            for p in generators {
                let image: Vec<usize> = c.iter().map(|&v| p.apply(v)).collect();
                let image = canonical_cycle(&image, orientation);
                if members.insert(image.clone()) {
                    pending.remove(&image);
                    queue.push_back(image);
                }
            }
        }
        let members: Vec<Vec<usize>> = members.into_iter().collect();
        classes.push(CycleClass {
            representative: members[0].clone(),
            members,
        });
    }
    classes
}
