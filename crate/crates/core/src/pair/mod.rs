//! Boundary cycles of Looijenga pairs with a reflection, and the blowups that
//! relate them.
//!
//! Entries are `d_i = -D_i^2` and may be zero or negative. A node `i` sits
//! between components `i` and `i + 1`.

use alloc::vec::Vec;
use core::fmt;

use crate::cycle::{CycleWord, Reflection, Relabel};
use crate::error::{Error, Result};

mod decide;
mod oracle;
mod scan;
mod toric;

pub use decide::{
    decide_equivariant_pair, dominates_with_parity, Decider, Decision, Exhaustion, ToricWitness,
    Verdict,
};
pub use oracle::brute_force_reachability;
pub use scan::{frame_words, scan_length, ScanFailure, ScanOptions, ScanReport};
pub use toric::{
    corner_schedule_for, enumerate_equivariant_toric, seed, MemoryCache, NoCache, ToricCache,
    MAX_TORIC_LENGTH,
};

/// `Q = 12 - D^2 - n`, i.e. `12 + sum(d) - 3n` for a cycle.
pub fn charge(d: &CycleWord) -> i64 {
    12 + d.sum() - 3 * d.len() as i64
}

/// Blows up node `i`: a new `1` after component `i`, both neighbors deepen.
pub fn corner_blowup(d: &CycleWord, node: usize) -> Result<CycleWord> {
    let n = d.len();
    if n < 2 {
        return Err(Error::TooShort { len: n, min: 2 });
    }
    if node >= n {
        return Err(Error::IndexOutOfRange {
            index: node,
            len: n,
        });
    }
    let mut e = d.entries().to_vec();
    e[node] += 1;
    e[(node + 1) % n] += 1;
    e.insert(node + 1, 1);
    Ok(CycleWord::new(e))
}

pub fn interior_blowup(d: &CycleWord, i: usize) -> Result<CycleWord> {
    let n = d.len();
    if i >= n {
        return Err(Error::IndexOutOfRange { index: i, len: n });
    }
    let mut e = d.entries().to_vec();
    e[i] += 1;
    Ok(CycleWord::new(e))
}

/// A single, non-equivariant blowup.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BlowupStep {
    Corner(usize),
    Interior(usize),
}

impl BlowupStep {
    pub fn apply(self, d: &CycleWord) -> Result<CycleWord> {
        match self {
            BlowupStep::Corner(i) => corner_blowup(d, i),
            BlowupStep::Interior(i) => interior_blowup(d, i),
        }
    }
}

/// An orbit of blowups under the reflection.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EquivariantStep {
    /// node `i` together with its mirror node
    CornerPair(usize),
    /// component `i` (not fixed) together with `sigma(i)`
    InteriorPair(usize),
    /// two blowups on the fixed component `i`
    InteriorDouble(usize),
}

impl EquivariantStep {
    pub fn is_corner(self) -> bool {
        matches!(self, EquivariantStep::CornerPair(_))
    }

    pub fn index(self) -> usize {
        match self {
            EquivariantStep::CornerPair(i)
            | EquivariantStep::InteriorPair(i)
            | EquivariantStep::InteriorDouble(i) => i,
        }
    }

    pub fn with_index(self, i: usize) -> Self {
        match self {
            EquivariantStep::CornerPair(_) => EquivariantStep::CornerPair(i),
            EquivariantStep::InteriorPair(_) => EquivariantStep::InteriorPair(i),
            EquivariantStep::InteriorDouble(_) => EquivariantStep::InteriorDouble(i),
        }
    }
}

impl fmt::Display for EquivariantStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EquivariantStep::CornerPair(i) => write!(f, "corner-pair({i})"),
            EquivariantStep::InteriorPair(i) => write!(f, "interior-pair({i})"),
            EquivariantStep::InteriorDouble(i) => write!(f, "interior-double({i})"),
        }
    }
}

/// A boundary cycle with a reflection: `d_i = d_{sigma(i)}`, even entries at
/// the fixed components, even length at least 4.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairCycle {
    d: CycleWord,
    axis: Reflection,
}

impl PairCycle {
    pub fn new(d: CycleWord, axis: Reflection) -> Result<Self> {
        let n = d.len();
        if n % 2 == 1 {
            return Err(Error::OddLength(n));
        }
        if n < 4 {
            return Err(Error::TooShort { len: n, min: 4 });
        }
        if axis.len() != n {
            return Err(Error::BadAxis {
                axis: axis.axis(),
                len: n,
            });
        }
        if !axis.preserves(&d) {
            return Err(Error::NotSymmetric { axis: axis.axis() });
        }
        Ok(PairCycle { d, axis })
    }

    pub fn from_parts(entries: Vec<i64>, axis: usize) -> Result<Self> {
        let n = entries.len();
        PairCycle::new(CycleWord::new(entries), Reflection::new(axis, n)?)
    }

    pub fn cycle(&self) -> &CycleWord {
        &self.d
    }

    pub fn axis(&self) -> Reflection {
        self.axis
    }

    pub fn len(&self) -> usize {
        self.d.len()
    }

    pub fn is_empty(&self) -> bool {
        self.d.is_empty()
    }

    pub fn charge(&self) -> i64 {
        charge(&self.d)
    }

    pub fn relabeled(&self, g: Relabel) -> PairCycle {
        let n = self.len();
        PairCycle {
            d: self.d.relabeled(g),
            axis: Reflection::new(g.apply_axis(self.axis.axis(), n), n)
                .expect("conjugate of a vertex reflection"),
        }
    }

    /// Least `(cycle, axis)` over all relabelings; equal keys mean the pairs
    /// differ by a dihedral relabeling.
    pub fn canonical_key(&self) -> (Vec<i64>, usize) {
        let n = self.len();
        let s = self.axis.axis();
        let mut best: Option<(Vec<i64>, usize)> = None;
        for g in Relabel::all(n) {
            let cand = (self.d.relabeled(g).into_entries(), g.apply_axis(s, n));
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
        best.expect("nonempty cycle")
    }

    pub fn canonical(&self) -> PairCycle {
        let (d, s) = self.canonical_key();
        PairCycle::from_parts(d, s).expect("relabeling keeps the invariants")
    }

    pub fn is_equivalent(&self, other: &PairCycle) -> bool {
        self.len() == other.len() && self.canonical_key() == other.canonical_key()
    }

    /// Relabelings `g` with `g sigma g^-1 = tau`, where `tau` is the axis `to`.
    pub fn aligning_relabels(&self, to: Reflection) -> impl Iterator<Item = Relabel> + '_ {
        let n = self.len();
        let s = self.axis.axis();
        Relabel::all(n).filter(move |g| n == to.len() && g.apply_axis(s, n) == to.axis())
    }

    pub fn apply(&self, step: EquivariantStep) -> Result<PairCycle> {
        apply_equivariant_step(self, step)
    }
}

impl fmt::Display for PairCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} axis {}", self.d, self.axis.axis())
    }
}

/// Performs both blowups of an orbit and carries the reflection along.
pub fn apply_equivariant_step(p: &PairCycle, step: EquivariantStep) -> Result<PairCycle> {
    let n = p.len();
    let idx = step.index();
    if idx >= n {
        return Err(Error::IndexOutOfRange { index: idx, len: n });
    }
    let sigma = p.axis();
    match step {
        EquivariantStep::CornerPair(i) => {
            let j = sigma.node_image(i);
            debug_assert_ne!(i, j, "vertex reflections fix no node");
            let mut inc = alloc::vec![0i64; n];
            for node in [i, j] {
                inc[node] += 1;
                inc[(node + 1) % n] += 1;
            }
            let mut out = Vec::with_capacity(n + 2);
            let mut newidx = alloc::vec![0usize; n];
            for k in 0..n {
                newidx[k] = out.len();
                out.push(p.d.entries()[k] + inc[k]);
                if k == i || k == j {
                    out.push(1);
                }
            }
            let (f, _) = sigma.fixed();
            let axis = Reflection::fixing(newidx[f], n + 2)?;
            PairCycle::new(CycleWord::new(out), axis)
        }
        EquivariantStep::InteriorPair(i) => {
            if sigma.is_fixed(i) {
                return Err(Error::OrbitMismatch("interior pair on a fixed component"));
            }
            let mut e = p.d.entries().to_vec();
            e[i] += 1;
            e[sigma.image(i)] += 1;
            PairCycle::new(CycleWord::new(e), sigma)
        }
        EquivariantStep::InteriorDouble(i) => {
            if !sigma.is_fixed(i) {
                return Err(Error::OrbitMismatch(
                    "interior double off the fixed components",
                ));
            }
            let mut e = p.d.entries().to_vec();
            e[i] += 2;
            PairCycle::new(CycleWord::new(e), sigma)
        }
    }
}

/// Every equivariant step applicable to `p`, one per orbit.
pub fn equivariant_steps(p: &PairCycle) -> Vec<EquivariantStep> {
    let n = p.len();
    let sigma = p.axis();
    let mut steps = Vec::new();
    for i in 0..n {
        if i < sigma.node_image(i) {
            steps.push(EquivariantStep::CornerPair(i));
        }
    }
    for i in 0..n {
        if sigma.is_fixed(i) {
            steps.push(EquivariantStep::InteriorDouble(i));
        } else if i < sigma.image(i) {
            steps.push(EquivariantStep::InteriorPair(i));
        }
    }
    steps
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn charges() {
        assert_eq!(charge(&[0, 0, 0, 0].into()), 0);
        assert_eq!(charge(&[3, 3, 2, 2, 2, 2, 2, 2, 2, 3, 3, 2].into()), 4);
        assert_eq!(charge(&[4, 2, 2, 2].into()), 10);
    }

    #[test]
    fn single_blowups() {
        let d = CycleWord::from([0, 0, 0, 0]);
        let c = corner_blowup(&d, 0).unwrap();
        assert_eq!(c, CycleWord::from([1, 1, 1, 0, 0]));
        assert_eq!(charge(&c), charge(&d));
        assert_eq!(
            corner_blowup(&[1, 1].into(), 0).unwrap(),
            CycleWord::from([2, 1, 2])
        );
        assert_eq!(
            corner_blowup(&d, 3).unwrap(),
            CycleWord::from([1, 0, 0, 1, 1])
        );
        assert!(corner_blowup(&d, 4).is_err());
        let i = interior_blowup(&d, 0).unwrap();
        assert_eq!(i, CycleWord::from([1, 0, 0, 0]));
        assert_eq!(charge(&i), 1);
        assert_eq!(
            interior_blowup(&[2, 1].into(), 1).unwrap(),
            CycleWord::from([2, 2])
        );
    }

    #[test]
    fn corner_pair_on_seed() {
        let p = seed().apply(EquivariantStep::CornerPair(0)).unwrap();
        assert_eq!(p.cycle(), &CycleWord::from([1, 1, 2, 1, 1, 0]));
        assert_eq!(p.axis().fixed(), (2, 5));
        assert!(p
            .cycle()
            .is_dihedrally_equivalent(&[2, 1, 1, 0, 1, 1].into()));
        assert_eq!(p.charge(), 0);
    }

    #[test]
    fn interior_steps() {
        let s = seed();
        let p = s.apply(EquivariantStep::InteriorDouble(1)).unwrap();
        assert_eq!(p.cycle(), &CycleWord::from([0, 2, 0, 0]));
        assert_eq!(p.charge(), 2);
        let p = s.apply(EquivariantStep::InteriorPair(0)).unwrap();
        assert_eq!(p.cycle(), &CycleWord::from([1, 0, 1, 0]));
        assert!(s.apply(EquivariantStep::InteriorPair(1)).is_err());
        assert!(s.apply(EquivariantStep::InteriorDouble(0)).is_err());
    }

    #[test]
    fn step_listing() {
        let steps = equivariant_steps(&seed());
        assert_eq!(
            steps,
            [
                EquivariantStep::CornerPair(0),
                EquivariantStep::CornerPair(2),
                EquivariantStep::InteriorPair(0),
                EquivariantStep::InteriorDouble(1),
                EquivariantStep::InteriorDouble(3),
            ]
        );
    }

    #[test]
    fn pair_keys() {
        let a = PairCycle::from_parts(alloc::vec![0, 0, 0, 0], 0).unwrap();
        let b = PairCycle::from_parts(alloc::vec![0, 0, 0, 0], 2).unwrap();
        assert!(a.is_equivalent(&b));
        assert!(PairCycle::from_parts(alloc::vec![1, 0, 0, 0], 0).is_err());
        assert!(PairCycle::from_parts(alloc::vec![0, 0], 0).is_err());
    }
}
