//! Permutations of `0..degree` and groups generated by them.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::graph::is_bijection;
use super::GraphError;

/// A permutation in image form: `self[v]` is where `v` goes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, GraphError> {
        if is_bijection(&images) {
            Ok(Permutation(images))
        } else {
            Err(GraphError::NotAPermutation)
        }
    }

    pub fn identity(degree: usize) -> Self {
        Permutation((0..degree).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, v: usize) -> usize {
        self.0[v]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self` after `other`: `v -> self(other(v))`.
    pub fn after(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&v| self.0[v]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Permutation(inv)
    }

    pub fn pow(&self, mut exp: u64) -> Permutation {
        let mut result = Permutation::identity(self.degree());
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                result = base.after(&result);
            }
            base = base.after(&base);
            exp >>= 1;
        }
        result
    }

    /// Cycle decomposition, fixed points included, each cycle starting at its minimum.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut v = start;
            while !seen[v] {
                seen[v] = true;
                cycle.push(v);
                v = self.0[v];
            }
            out.push(cycle);
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycles().iter().fold(1u64, |acc, c| acc.lcm(&(c.len() as u64)))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let moved: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if moved.is_empty() {
            return f.write_str("()");
        }
        for c in moved {
            let parts: Vec<String> = c.iter().map(usize::to_string).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

/// A permutation group given by generators, with its order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PermutationGroup {
    pub degree: usize,
    pub generators: Vec<Permutation>,
    pub order: u128,
}

impl PermutationGroup {
    /// Group generated by `generators`, order by closure (bounded by `limit` elements).
    pub fn from_generators(
        degree: usize,
        generators: Vec<Permutation>,
        limit: usize,
    ) -> Result<Self, GraphError> {
        let elements = closure(degree, &generators, limit)?;
        Ok(PermutationGroup {
            degree,
            generators,
            order: elements.len() as u128,
        })
    }

    /// Every element, by breadth-first closure over generator products.
    pub fn elements(&self, limit: usize) -> Result<Vec<Permutation>, GraphError> {
        closure(self.degree, &self.generators, limit)
    }

    /// Orbit of `v` under the group.
    pub fn orbit(&self, v: usize) -> Vec<usize> {
        orbit(&self.generators, v, self.degree)
    }
}

/// Orbit of `v` under the group generated by `generators`, sorted.
pub fn orbit(generators: &[Permutation], v: usize, degree: usize) -> Vec<usize> {
    let mut seen = vec![false; degree];
    seen[v] = true;
    let mut out = vec![v];
    let mut queue = VecDeque::from([v]);
    while let Some(x) = queue.pop_front() {
        for g in generators {
            let y = g.apply(x);
            if !seen[y] {
                seen[y] = true;
                out.push(y);
                queue.push_back(y);
            }
        }
    }
    out.sort_unstable();
    out
}

/// All products of `generators`, identity first, in breadth-first order.
pub fn closure(
    degree: usize,
    generators: &[Permutation],
    limit: usize,
) -> Result<Vec<Permutation>, GraphError> {
    let identity = Permutation::identity(degree);
    let mut seen: HashSet<Permutation> = HashSet::from([identity.clone()]);
    let mut out = vec![identity.clone()];
    let mut queue = VecDeque::from([identity]);
    while let Some(x) = queue.pop_front() {
        for g in generators {
            let y = g.after(&x);
            if seen.insert(y.clone()) {
                if out.len() >= limit {
                    return Err(GraphError::GroupTooLarge { limit });
                }
                out.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(out)
}

/// Whether `group` is dihedral of order `2m`: some `rho` of order `m` and an
/// involution `tau` with `tau rho tau = rho^-1` generate the whole group.
pub fn is_dihedral(group: &PermutationGroup, m: u64) -> bool {
    if m == 0 || group.order != 2 * m as u128 {
        return false;
    }
    let Ok(elements) = group.elements(2 * m as usize + 1) else {
        return false;
    };
    let rotations: Vec<&Permutation> = elements.iter().filter(|e| e.order() == m).collect();
    let involutions: Vec<&Permutation> = elements.iter().filter(|e| e.order() == 2).collect();
    for rho in &rotations {
        let rho_inv = rho.inverse();
        for tau in &involutions {
            if tau.after(rho).after(tau) != rho_inv {
                continue;
            }
            let generated = closure(group.degree, &[(*rho).clone(), (*tau).clone()], elements.len() + 1);
            if matches!(generated, Ok(ref g) if g.len() as u128 == group.order) {
                return true;
            }
        }
    }
    // m = 1: D_1 is generated by a single involution and the identity
    m == 1 && !involutions.is_empty()
}
