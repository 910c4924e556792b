//! Hamiltonian cycles by backtracking.

use super::{is_connected, Graph};

/// Whether `cycle` visits every vertex exactly once along edges and closes.
pub fn is_hamiltonian_cycle(g: &Graph, cycle: &[usize]) -> bool {
    let n = g.order();
    if n < 3 || cycle.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &v in cycle {
        if v >= n || std::mem::replace(&mut seen[v], true) {
            return false;
        }
    }
    (0..n).all(|i| g.has_edge(cycle[i], cycle[(i + 1) % n]))
}

/// A Hamiltonian cycle starting at vertex 0, or `None`.
///
/// Extends the path through the lowest-numbered free neighbour first, so the
/// witness is the lexicographically first one. A branch is cut as soon as some
/// free vertex has fewer than two usable neighbours.
pub fn hamiltonian_cycle(g: &Graph) -> Option<Vec<usize>> {
    let n = g.order();
    if n < 3 || !is_connected(g) || (0..n).any(|v| g.degree(v) < 2) {
        return None;
    }
    let mut path = vec![0];
    let mut used = vec![false; n];
    used[0] = true;
    if extend(g, &mut path, &mut used) {
        debug_assert!(is_hamiltonian_cycle(g, &path));
        Some(path)
    } else {
        None
    }
}

fn extend(g: &Graph, path: &mut Vec<usize>, used: &mut [bool]) -> bool {
    let n = g.order();
    let last = *path.last().expect("non-empty path");
    if path.len() == n {
        return g.has_edge(last, path[0]);
    }
    if !viable(g, path, used) {
        return false;
    }
    for &w in g.neighbors(last) {
        if used[w] {
            continue;
        }
        used[w] = true;
        path.push(w);
        if extend(g, path, used) {
            return true;
        }
        path.pop();
        used[w] = false;
    }
    false
}

/// Every free vertex still needs two neighbours that are free or a path end.
fn viable(g: &Graph, path: &[usize], used: &[bool]) -> bool {
    let first = path[0];
    let last = *path.last().expect("non-empty path");
    (0..g.order()).filter(|&v| !used[v]).all(|v| {
        g.neighbors(v)
            .iter()
            .filter(|&&w| !used[w] || w == first || w == last)
            .count()
            >= 2
    })
}
