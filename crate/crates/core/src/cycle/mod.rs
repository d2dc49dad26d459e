//! Cycles of integers and the operations that only look at the cycle.
//!
//! Indices are 0-based. A cusp written `(e_1, ..., e_n)` in the usual 1-based
//! notation is stored as `entries[0..n]`.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};

mod dual;
mod symmetry;

pub use dual::{dual, run_decompose, RunDecomposition};
pub use symmetry::{
    find_reflections, induced_dual_reflection, quotient_resolution_graph, ForkVertex,
    QuotientGraph, Reflection, SymmetricStructure,
};

/// A cyclic word of integers. Entries are negated self-intersections.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CycleWord(Vec<i64>);

impl CycleWord {
    pub fn new(entries: Vec<i64>) -> Self {
        CycleWord(entries)
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<i64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Entry at a cyclic index.
    pub fn at(&self, i: usize) -> i64 {
        self.0[i % self.0.len()]
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }

    /// The word read starting from index `start`.
    pub fn rotated(&self, start: usize) -> CycleWord {
        let n = self.len();
        CycleWord((0..n).map(|i| self.0[(start + i) % n]).collect())
    }

    pub fn relabeled(&self, g: Relabel) -> CycleWord {
        let n = self.len();
        let mut out = alloc::vec![0; n];
        for (j, &x) in self.0.iter().enumerate() {
            out[g.apply(j, n)] = x;
        }
        CycleWord(out)
    }

    /// All `2n` rotations and reversals, in a fixed order.
    pub fn dihedral_images(&self) -> impl Iterator<Item = (Relabel, CycleWord)> + '_ {
        Relabel::all(self.len()).map(move |g| (g, self.relabeled(g)))
    }

    /// Lexicographically least word among all rotations and reversals.
    pub fn canonicalize(&self) -> CycleWord {
        canonicalize(self)
    }

    pub fn is_dihedrally_equivalent(&self, other: &CycleWord) -> bool {
        self.len() == other.len() && self.canonicalize() == other.canonicalize()
    }
}

impl From<Vec<i64>> for CycleWord {
    fn from(v: Vec<i64>) -> Self {
        CycleWord(v)
    }
}

impl<const N: usize> From<[i64; N]> for CycleWord {
    fn from(v: [i64; N]) -> Self {
        CycleWord(v.to_vec())
    }
}

/// Renders as `(e1,e2,...)`.
impl fmt::Display for CycleWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

/// Accepts `3,10,3,4`, `(3,10,3,4)` or whitespace separated entries.
impl FromStr for CycleWord {
    type Err = ParseCycleError;

    fn from_str(s: &str) -> core::result::Result<Self, Self::Err> {
        let s = s.trim();
        let s = s.strip_prefix('(').unwrap_or(s);
        let s = s.strip_suffix(')').unwrap_or(s);
        let entries = s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<i64>().map_err(|_| ParseCycleError))
            .collect::<core::result::Result<Vec<_>, _>>()?;
        if entries.is_empty() {
            return Err(ParseCycleError);
        }
        Ok(CycleWord(entries))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("malformed cycle: expected a comma separated list of integers")]
pub struct ParseCycleError;

/// A dihedral relabeling of `0..n`: `j -> shift + j` or `j -> shift - j`
/// (mod n). Moving entry `j` to position `g(j)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Relabel {
    pub shift: usize,
    pub reversed: bool,
}

impl Relabel {
    pub const IDENTITY: Relabel = Relabel {
        shift: 0,
        reversed: false,
    };

    pub fn apply(self, j: usize, n: usize) -> usize {
        let j = j % n;
        if self.reversed {
            (self.shift + n - j) % n
        } else {
            (self.shift + j) % n
        }
    }

    pub fn inverse(self, n: usize) -> Relabel {
        if self.reversed {
            self
        } else {
            Relabel {
                shift: (n - self.shift % n) % n,
                reversed: false,
            }
        }
    }

    /// Transforms a doubled reflection axis `s` (with `sigma(i) = s - i`) to
    /// the axis of the conjugated reflection `g sigma g^-1`, reduced mod n.
    pub fn apply_axis(self, s: usize, n: usize) -> usize {
        let s = s % n;
        let two_shift = (2 * self.shift) % n;
        if self.reversed {
            (two_shift + n - s) % n
        } else {
            (s + two_shift) % n
        }
    }

    pub fn all(n: usize) -> impl Iterator<Item = Relabel> {
        (0..n).flat_map(|shift| {
            [false, true]
                .into_iter()
                .map(move |reversed| Relabel { shift, reversed })
        })
    }

    /// The relabeling as an explicit index map `j -> g(j)`.
    pub fn to_vec(self, n: usize) -> Vec<usize> {
        (0..n).map(|j| self.apply(j, n)).collect()
    }
}

pub fn canonicalize(c: &CycleWord) -> CycleWord {
    let n = c.len();
    if n == 0 {
        return c.clone();
    }
    let mut best: Option<Vec<i64>> = None;
    let mut buf = alloc::vec![0i64; n];
    for g in Relabel::all(n) {
        for (j, &x) in c.0.iter().enumerate() {
            buf[g.apply(j, n)] = x;
        }
        if best.as_ref().is_none_or(|b| buf < *b) {
            best = Some(buf.clone());
        }
    }
    CycleWord(best.unwrap())
}

/// Which of the defining conditions of a cusp cycle fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CuspViolation {
    Empty,
    /// condition (i): `e_i >= 2` for cycles of length >= 2
    EntryBelowTwo {
        index: usize,
        value: i64,
    },
    /// condition (ii): some `e_j >= 3`
    NoEntryAboveTwo,
    /// condition (iii): a single curve needs `e_1 >= 1`
    SingleEntryNotPositive {
        value: i64,
    },
}

impl fmt::Display for CuspViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CuspViolation::Empty => f.write_str("empty cycle"),
            CuspViolation::EntryBelowTwo { index, value } => {
                write!(f, "condition i: entry {value} at index {index} is below 2")
            }
            CuspViolation::NoEntryAboveTwo => f.write_str("condition ii: no entry is >= 3"),
            CuspViolation::SingleEntryNotPositive { value } => {
                write!(f, "condition iii: single entry {value} is below 1")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CuspValidation {
    pub violations: Vec<CuspViolation>,
}

impl CuspValidation {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn into_result(self) -> Result<()> {
        if self.violations.is_empty() {
            Ok(())
        } else {
            Err(Error::NotACusp(self.violations))
        }
    }
}

pub fn validate_cusp(c: &CycleWord) -> CuspValidation {
    let mut violations = Vec::new();
    match c.len() {
        0 => violations.push(CuspViolation::Empty),
        1 => {
            if c.0[0] < 1 {
                violations.push(CuspViolation::SingleEntryNotPositive { value: c.0[0] });
            }
        }
        _ => {
            for (index, &value) in c.0.iter().enumerate() {
                if value < 2 {
                    violations.push(CuspViolation::EntryBelowTwo { index, value });
                }
            }
            if !c.0.iter().any(|&e| e >= 3) {
                violations.push(CuspViolation::NoEntryAboveTwo);
            }
        }
    }
    CuspValidation { violations }
}

/// `-E^2` of the exceptional cycle; equals the length of the dual cycle.
pub fn neg_self_intersection(c: &CycleWord) -> Result<i64> {
    validate_cusp(c).into_result()?;
    Ok(if c.len() == 1 {
        c.0[0]
    } else {
        c.sum() - 2 * c.len() as i64
    })
}

pub fn multiplicity(c: &CycleWord) -> Result<i64> {
    Ok(neg_self_intersection(c)?.max(2))
}
