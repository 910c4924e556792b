//! Pythagorean n-step scales built from harmonic generators `(2p-1)/2^l`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::precise::Real;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TuningError {
    #[error("octave reduction needs a positive ratio, got {0}")]
    NonPositive(Rational),
    #[error("harmonic generator needs p >= 2, got {0}")]
    GeneratorParameter(u64),
    #[error("a scale needs at least one step")]
    EmptyScale,
    #[error("degenerate scale: powers {first} and {second} of the generator reduce to the same interval {interval}")]
    DegenerateScale {
        first: i64,
        second: i64,
        interval: Rational,
    },
    #[error("comma needs n >= 1 and u >= 1 (got u={u}, n={n})")]
    CommaParameters { u: u32, n: u32 },
}

/// Reduces `x` into `[1, 2)`, returning the reduced value and the exponent
/// `m` with `reduced = x * 2^m`.
pub fn reduce_to_octave(x: &Rational) -> Result<(Rational, i64), TuningError> {
    if !x.is_positive() {
        return Err(TuningError::NonPositive(x.clone()));
    }
    // bit lengths put us within one step of the answer
    let mut m = x.denom().bits() as i64 - x.numer().bits() as i64;
    let two = Rational::integer(2);
    let one = Rational::one();
    let mut reduced = x.mul_pow2(m);
    while reduced >= two {
        m -= 1;
        reduced = reduced.mul_pow2(-1);
    }
    while reduced < one {
        m += 1;
        reduced = reduced.mul_pow2(1);
    }
    Ok((reduced, m))
}

/// The generator `(2p - 1) / 2^l` lying strictly inside `(1, 2)`.
pub fn harmonic_generator(p: u64) -> Result<Rational, TuningError> {
    if p < 2 {
        return Err(TuningError::GeneratorParameter(p));
    }
    let odd = BigInt::from(2 * p - 1);
    let exponent = odd.bits() - 1;
    Ok(Rational::new(odd, BigInt::one() << exponent))
}

/// An n-step Pythagorean scale, optionally tied to an octave count `u`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TuningSystem {
    /// Generator parameter; `None` when built from an arbitrary generator.
    pub p: Option<u64>,
    pub n: u32,
    pub u: Option<u32>,
    pub generator: Rational,
    /// Sorted intervals; index = label.
    pub intervals: Vec<Rational>,
    /// `powers[label]` is the exponent k with `intervals[label] = reduce(g^k)`.
    pub powers: Vec<i64>,
    pub comma: Option<Real>,
    /// Label of the reduced generator itself. Absent for one-step scales.
    pub generator_label: Option<usize>,
}

impl TuningSystem {
    pub fn label_of(&self, interval: &Rational) -> Option<usize> {
        self.intervals.binary_search(interval).ok()
    }

    /// Attaches the comma for `u` octaves.
    pub fn with_octaves(mut self, u: u32) -> Result<Self, TuningError> {
        self.comma = Some(comma(&self.generator, u, self.n)?);
        self.u = Some(u);
        Ok(self)
    }
}

/// Builds the scale of `n` reduced powers of the harmonic generator for `p`.
pub fn build_scale(p: u64, n: u32) -> Result<TuningSystem, TuningError> {
    let generator = harmonic_generator(p)?;
    let mut sys = build_scale_from_generator(&generator, n)?;
    sys.p = Some(p);
    Ok(sys)
}

/// Exponents used for an `n`-step scale: the `n` consecutive integers from
/// `1 - ceil(n/2)` to `floor(n/2)`, e.g. -4..=5 for ten steps, -5..=6 for twelve.
pub fn scale_exponents(n: u32) -> std::ops::RangeInclusive<i64> {
    let n = n as i64;
    (1 - (n + 1) / 2)..=(n / 2)
}

/// Builds the scale of octave-reduced powers `g^k`, `k` in [`scale_exponents`].
///
/// Repeated intervals are rejected rather than merged.
pub fn build_scale_from_generator(g: &Rational, n: u32) -> Result<TuningSystem, TuningError> {
    if n == 0 {
        return Err(TuningError::EmptyScale);
    }
    let mut by_interval: BTreeMap<Rational, i64> = BTreeMap::new();
    for k in scale_exponents(n) {
        let power = g.pow(k as i32);
        let (reduced, _) = reduce_to_octave(&power)?;
        if let Some(&first) = by_interval.get(&reduced) {
            return Err(TuningError::DegenerateScale {
                first,
                second: k,
                interval: reduced,
            });
        }
        by_interval.insert(reduced, k);
    }
    let (intervals, powers): (Vec<_>, Vec<_>) = by_interval.into_iter().unzip();
    let generator_label = powers.iter().position(|&k| k == 1);
    Ok(TuningSystem {
        p: None,
        n,
        u: None,
        generator: g.clone(),
        intervals,
        powers,
        comma: None,
        generator_label,
    })
}

/// `|g / 2^(u/n) - 1|`.
pub fn comma(g: &Rational, u: u32, n: u32) -> Result<Real, TuningError> {
    if n == 0 || u == 0 {
        return Err(TuningError::CommaParameters { u, n });
    }
    Ok(comma_with_step(g, &Real::pow2_ratio(u as i64, n)))
}

fn comma_with_step(g: &Rational, step: &Real) -> Real {
    let ratio = &Real::from_rational(g) / step;
    (&ratio - &Real::one()).abs()
}

/// Comma of the classical 12-step system `(3/2, 7, 12)`; the admissibility bound.
pub fn classical_comma_bound() -> Real {
    comma(&Rational::new(3, 2), 7, 12).expect("valid parameters")
}

/// Mean absolute relative deviation `(1/n) * sum |r_k / 2^(k/n) - 1|`.
///
/// Stand-in for the tempered index; only meaningful for ranking systems.
pub fn tempered_index(sys: &TuningSystem) -> Real {
    let n = sys.intervals.len();
    if n == 0 {
        return Real::zero();
    }
    let mut total = Real::zero();
    for (label, interval) in sys.intervals.iter().enumerate() {
        let ideal = Real::pow2_ratio(label as i64, sys.n);
        let deviation = (&(&Real::from_rational(interval) / &ideal) - &Real::one()).abs();
        total = &total + &deviation;
    }
    total.div_int(n as u64)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanEntry {
    pub p: u64,
    pub u: u32,
    pub n: u32,
    pub generator: Rational,
    pub comma: Real,
}

/// Exhaustive scan over `2 <= p < max_p`, `1 <= n <= max_n`, `1 <= u <= max_u`.
///
/// For each `(p, n)` only the best `u` is kept (ties to the smaller `u`), and
/// only systems whose comma does not exceed the classical bound survive.
/// Results are sorted by comma, then by `(p, n)`.
pub fn scan_systems(max_p: u64, max_n: u32, max_u: u32) -> Vec<ScanEntry> {
    let bound = classical_comma_bound();
    // 2^(u/n) depends only on (u, n); compute each root once
    let steps: BTreeMap<(u32, u32), Real> = (1..=max_n)
        .flat_map(|n| (1..=max_u).map(move |u| (u, n)))
        .map(|(u, n)| ((u, n), Real::pow2_ratio(u as i64, n)))
        .collect();

    let mut entries = Vec::new();
    for p in 2..max_p {
        let generator = harmonic_generator(p).expect("p >= 2");
        for n in 1..=max_n {
            let mut best: Option<(u32, Real)> = None;
            for u in 1..=max_u {
                let delta = comma_with_step(&generator, &steps[&(u, n)]);
                let better = match &best {
                    None => true,
                    Some((_, current)) => delta.tolerant_cmp(current).is_lt(),
                };
                if better {
                    best = Some((u, delta));
                }
            }
            if let Some((u, delta)) = best {
                if delta.tolerant_cmp(&bound).is_le() {
                    entries.push(ScanEntry {
                        p,
                        u,
                        n,
                        generator: generator.clone(),
                        comma: delta,
                    });
                }
            }
        }
    }
    entries.sort_by(|a, b| a.comma.cmp(&b.comma).then(a.p.cmp(&b.p)).then(a.n.cmp(&b.n)));
    entries
}
