//! Major/minor chord systems over Z_n parameterized by the fifth `q` and the
//! difference `delta = t - s` between the two thirds.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::tuning;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HarmonyError {
    #[error("modulus must be at least 2, got {0}")]
    Modulus(u32),
    #[error("thirds ({t}, {s}) do not add up to the fifth {q} mod {n}")]
    Inconsistent { n: u32, q: u32, t: u32, s: u32 },
    #[error("degenerate {mode} chord at root {root}: pitch set {pitches:?} has fewer than 3 tones")]
    DegenerateChord {
        mode: Mode,
        root: u32,
        pitches: BTreeSet<u32>,
    },
}

/// Reduces any integer into `0..n`.
pub fn residue(value: i64, n: u32) -> u32 {
    value.rem_euclid(n as i64) as u32
}

/// A `(t, s)` candidate for the major and minor thirds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ThirdPair {
    pub t: u32,
    pub s: u32,
}

impl ThirdPair {
    /// A zero third collapses one of the chords.
    pub fn is_trivial(&self) -> bool {
        self.t == 0 || self.s == 0
    }

    pub fn swapped(&self) -> ThirdPair {
        ThirdPair { t: self.s, s: self.t }
    }
}

/// All `(t, s)` in Z_n^2 with `t + s = q` and `t - s = delta`.
///
/// Both conditions reduce to the linear congruence `2t = q + delta (mod n)`.
pub fn solve_thirds(n: u32, q: u32, delta: u32) -> BTreeSet<ThirdPair> {
    let mut out = BTreeSet::new();
    if n < 2 {
        return out;
    }
    let n64 = n as i64;
    let rhs = (q as i64 + delta as i64).rem_euclid(n64);
    let g = 2i64.gcd(&n64);
    if rhs % g != 0 {
        return out;
    }
    let reduced_mod = n64 / g;
    let t0 = if reduced_mod == 1 {
        0
    } else {
        // 2/g is invertible mod n/g
        let inverse = mod_inverse(2 / g, reduced_mod).expect("coprime by construction");
        ((rhs / g) * inverse).rem_euclid(reduced_mod)
    };
    for k in 0..g {
        let t = residue(t0 + k * reduced_mod, n);
        let s = residue(t as i64 - delta as i64, n);
        out.insert(ThirdPair { t, s });
    }
    out
}

fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    let egcd = a.extended_gcd(&m);
    (egcd.gcd == 1).then(|| egcd.x.rem_euclid(m))
}

/// Solutions for every `delta` in Z_n.
pub fn enumerate_systems(n: u32, q: u32) -> BTreeMap<u32, BTreeSet<ThirdPair>> {
    (0..n).map(|delta| (delta, solve_thirds(n, q, delta))).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Mode {
    Major,
    Minor,
}

impl Mode {
    pub fn opposite(self) -> Mode {
        match self {
            Mode::Major => Mode::Minor,
            Mode::Minor => Mode::Major,
        }
    }

    /// `D` for major, `M` for minor.
    pub fn letter(self) -> char {
        match self {
            Mode::Major => 'D',
            Mode::Minor => 'M',
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Major => f.write_str("major"),
            Mode::Minor => f.write_str("minor"),
        }
    }
}

/// The tuple `(n, q, t, s)` with `delta = t - s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HarmonicSystem {
    pub n: u32,
    pub q: u32,
    pub t: u32,
    pub s: u32,
    pub delta: u32,
}

impl HarmonicSystem {
    pub fn new(n: u32, q: u32, t: u32, s: u32) -> Result<Self, HarmonyError> {
        if n < 2 {
            return Err(HarmonyError::Modulus(n));
        }
        let (q, t, s) = (q % n, t % n, s % n);
        if (t + s) % n != q {
            return Err(HarmonyError::Inconsistent { n, q, t, s });
        }
        Ok(HarmonicSystem {
            n,
            q,
            t,
            s,
            delta: residue(t as i64 - s as i64, n),
        })
    }

    pub fn from_pair(n: u32, q: u32, pair: ThirdPair) -> Result<Self, HarmonyError> {
        Self::new(n, q, pair.t, pair.s)
    }

    /// `(10, 7, 4, 3)`, delta = 1.
    pub fn acoustic() -> Self {
        Self::new(10, 7, 4, 3).unwrap()
    }

    /// `(10, 7, 5, 2)`, delta = 3.
    pub fn tritone() -> Self {
        Self::new(10, 7, 5, 2).unwrap()
    }

    /// `(10, 7, 6, 1)`, delta = 5.
    pub fn wide() -> Self {
        Self::new(10, 7, 6, 1).unwrap()
    }

    /// The 12-TET reference `(12, 7, 4, 3)`.
    pub fn classical() -> Self {
        Self::new(12, 7, 4, 3).unwrap()
    }

    pub fn is_trivial(&self) -> bool {
        self.t == 0 || self.s == 0 || self.q == 0
    }

    pub fn third(&self, mode: Mode) -> u32 {
        match mode {
            Mode::Major => self.t,
            Mode::Minor => self.s,
        }
    }

    pub fn chord(&self, mode: Mode, root: i64) -> Result<Chord, HarmonyError> {
        let root = residue(root, self.n);
        let pitches = [root, (root + self.third(mode)) % self.n, (root + self.q) % self.n];
        let set: BTreeSet<u32> = pitches.iter().copied().collect();
        if set.len() < 3 {
            return Err(HarmonyError::DegenerateChord {
                mode,
                root,
                pitches: set,
            });
        }
        Ok(Chord {
            n: self.n,
            mode,
            root,
            pitches,
        })
    }
}

impl fmt::Display for HarmonicSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n={}, q={}, t={}, s={}, delta={})", self.n, self.q, self.t, self.s, self.delta)
    }
}

/// A root-position triad; `pitches` is the ordered triple (root, third, fifth).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Chord {
    pub n: u32,
    pub mode: Mode,
    pub root: u32,
    pub pitches: [u32; 3],
}

impl Chord {
    pub fn pitch_set(&self) -> BTreeSet<u32> {
        self.pitches.iter().copied().collect()
    }

    /// `D3`, `M7`, ...
    pub fn name(&self) -> String {
        format!("{}{}", self.mode.letter(), self.root)
    }
}

impl fmt::Display for Chord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

pub fn major_chord(sys: &HarmonicSystem, root: i64) -> Result<Chord, HarmonyError> {
    sys.chord(Mode::Major, root)
}

pub fn minor_chord(sys: &HarmonicSystem, root: i64) -> Result<Chord, HarmonyError> {
    sys.chord(Mode::Minor, root)
}

/// Gaps root -> third -> fifth -> root + n.
pub fn interval_vector(c: &Chord) -> [u32; 3] {
    let [root, third, fifth] = c.pitches;
    let gap = |a: u32, b: u32| residue(b as i64 - a as i64, c.n);
    [gap(root, third), gap(third, fifth), gap(fifth, root)]
}

/// The shift σ with `pitches(D_r) = pitches(M_{r+σ})` for every root, if any.
pub fn detect_modal_degeneracy(sys: &HarmonicSystem) -> Option<u32> {
    let majors: Vec<BTreeSet<u32>> = (0..sys.n)
        .map(|r| major_chord(sys, r as i64).ok().map(|c| c.pitch_set()))
        .collect::<Option<_>>()?;
    let minors: Vec<BTreeSet<u32>> = (0..sys.n)
        .map(|r| minor_chord(sys, r as i64).ok().map(|c| c.pitch_set()))
        .collect::<Option<_>>()?;
    (0..sys.n).find(|&sigma| {
        (0..sys.n).all(|r| majors[r as usize] == minors[((r + sigma) % sys.n) as usize])
    })
}

/// Whether a fifth `q` matches the generator label of a Pythagorean system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum FifthStatus {
    /// `q` is the label of the generator of the smallest-comma system for this n.
    Validated { p: u64, u: u32 },
    /// No admissible system for this n, or its generator sits at another label.
    Unvalidated,
}

/// Checks `q` against the best Pythagorean system for `n` with `p < 20`, `u <= 10`.
pub fn fifth_status(n: u32, q: u32) -> FifthStatus {
    let best = tuning::scan_systems(20, n, 10).into_iter().find(|e| e.n == n);
    let Some(entry) = best else {
        return FifthStatus::Unvalidated;
    };
    match tuning::build_scale(entry.p, n) {
        Ok(scale) if scale.generator_label == Some(q as usize) => FifthStatus::Validated {
            p: entry.p,
            u: entry.u,
        },
        _ => FifthStatus::Unvalidated,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pairs(list: &[(u32, u32)]) -> BTreeSet<ThirdPair> {
        list.iter().map(|&(t, s)| ThirdPair { t, s }).collect()
    }

    fn brute_force(n: u32, q: u32, delta: u32) -> BTreeSet<ThirdPair> {
        let mut out = BTreeSet::new();
        for t in 0..n {
            for s in 0..n {
                if (t + s) % n == q % n && (t + n - s) % n == delta % n {
                    out.insert(ThirdPair { t, s });
                }
            }
        }
        out
    }

    #[test]
    fn solver_examples() {
        assert_eq!(solve_thirds(10, 7, 1), pairs(&[(4, 3), (9, 8)]));
        assert!(solve_thirds(10, 7, 2).is_empty());
        assert_eq!(solve_thirds(12, 7, 1), pairs(&[(4, 3), (10, 9)]));
        assert_eq!(solve_thirds(10, 7, 5), pairs(&[(6, 1), (1, 6)]));
    }

    #[test]
    fn solver_matches_brute_force() {
        for n in 2..=30 {
            for q in 0..n {
                for delta in 0..n {
                    assert_eq!(solve_thirds(n, q, delta), brute_force(n, q, delta), "n={n} q={q} d={delta}");
                }
            }
        }
    }

    #[test]
    fn enumeration_for_ten() {
        let table = enumerate_systems(10, 7);
        assert_eq!(table.len(), 10);
        for delta in (0..10).step_by(2) {
            assert!(table[&delta].is_empty());
        }
        assert_eq!(table[&3], pairs(&[(5, 2), (0, 7)]));
        assert!(table[&3].iter().any(ThirdPair::is_trivial));
        assert_eq!(enumerate_systems(12, 7)[&1], pairs(&[(4, 3), (10, 9)]));
    }

    #[test]
    fn chords() {
        let ac = HarmonicSystem::acoustic();
        assert_eq!(major_chord(&ac, 0).unwrap().pitch_set(), [0, 4, 7].into());
        assert_eq!(major_chord(&HarmonicSystem::wide(), 0).unwrap().pitch_set(), [0, 6, 7].into());
        assert_eq!(minor_chord(&HarmonicSystem::tritone(), 0).unwrap().pitch_set(), [0, 2, 7].into());
        // roots are canonicalized
        assert_eq!(major_chord(&ac, -3).unwrap().root, 7);
        assert_eq!(major_chord(&ac, 13).unwrap().root, 3);
    }

    #[test]
    fn collapsed_chord_is_an_error() {
        let trivial = HarmonicSystem::new(10, 7, 0, 7).unwrap();
        assert!(trivial.is_trivial());
        assert!(matches!(
            major_chord(&trivial, 2),
            Err(HarmonyError::DegenerateChord { mode: Mode::Major, root: 2, .. })
        ));
        assert!(minor_chord(&trivial, 2).is_err());
    }

    #[test]
    fn system_validation() {
        assert!(matches!(HarmonicSystem::new(10, 7, 4, 4), Err(HarmonyError::Inconsistent { .. })));
        assert!(matches!(HarmonicSystem::new(1, 0, 0, 0), Err(HarmonyError::Modulus(1))));
        assert_eq!(HarmonicSystem::wide().delta, 5);
        assert_eq!(HarmonicSystem::tritone().delta, 3);
    }

    #[test]
    fn interval_vectors() {
        let wide = HarmonicSystem::wide();
        assert_eq!(interval_vector(&major_chord(&wide, 0).unwrap()), [6, 1, 3]);
        assert_eq!(interval_vector(&minor_chord(&wide, 0).unwrap()), [1, 6, 3]);
        assert_eq!(interval_vector(&major_chord(&HarmonicSystem::acoustic(), 5).unwrap()), [4, 3, 3]);
        assert_eq!(interval_vector(&minor_chord(&HarmonicSystem::tritone(), 0).unwrap()), [2, 5, 3]);
    }

    #[test]
    fn degeneracy_examples() {
        assert_eq!(detect_modal_degeneracy(&HarmonicSystem::acoustic()), Some(7));
        assert_eq!(detect_modal_degeneracy(&HarmonicSystem::wide()), None);
        assert_eq!(detect_modal_degeneracy(&HarmonicSystem::tritone()), None);
        assert_eq!(detect_modal_degeneracy(&HarmonicSystem::classical()), None);
    }

    #[test]
    fn classical_degeneracy_by_exhaustive_pairs() {
        // no (D_r, M_k) pair shares a full pitch set in 12-TET
        let sys = HarmonicSystem::classical();
        for r in 0..12 {
            for k in 0..12 {
                let d = major_chord(&sys, r).unwrap().pitch_set();
                let m = minor_chord(&sys, k).unwrap().pitch_set();
                assert_ne!(d, m);
            }
        }
    }

    #[test]
    fn fifth_validation() {
        assert_eq!(fifth_status(10, 7), FifthStatus::Validated { p: 7, u: 7 });
        assert_eq!(fifth_status(12, 7), FifthStatus::Validated { p: 2, u: 7 });
        assert_eq!(fifth_status(10, 6), FifthStatus::Unvalidated);
    }
}
