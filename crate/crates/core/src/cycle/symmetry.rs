use alloc::vec::Vec;
use core::fmt;

use super::dual::general_dual;
use super::{validate_cusp, CycleWord};
use crate::error::{Error, Result};

/// A vertex-type reflection of a cycle of even length `n`.
///
/// `sigma(i) = (axis - i) mod n` on 0-based indices; the fixed components are
/// `axis / 2` and `axis / 2 + n / 2`. In 1-based cusp notation with fixed
/// curves `E_n` and `E_{n/2}` this is `axis = 0`. The axis is kept reduced
/// mod `n` (`s` and `s + n` describe the same reflection).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Reflection {
    axis: usize,
    len: usize,
}

impl Reflection {
    pub fn new(axis: usize, len: usize) -> Result<Self> {
        if len == 0 || len % 2 == 1 {
            return Err(Error::OddLength(len));
        }
        if axis % 2 == 1 {
            return Err(Error::BadAxis { axis, len });
        }
        Ok(Reflection {
            axis: axis % len,
            len,
        })
    }

    /// The reflection fixing component `i`.
    pub fn fixing(i: usize, len: usize) -> Result<Self> {
        Reflection::new((2 * i) % len.max(1), len)
    }

    pub fn axis(&self) -> usize {
        self.axis
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn image(&self, i: usize) -> usize {
        (self.axis + self.len - i % self.len) % self.len
    }

    /// The node between `i` and `i + 1` is sent to the node between
    /// `sigma(i + 1)` and `sigma(i)`.
    pub fn node_image(&self, node: usize) -> usize {
        self.image(node + 1)
    }

    pub fn fixed(&self) -> (usize, usize) {
        let f = self.axis / 2;
        (f, f + self.len / 2)
    }

    pub fn is_fixed(&self, i: usize) -> bool {
        let (a, b) = self.fixed();
        i == a || i == b
    }

    /// Whether the word is palindromic about the axis with even fixed entries.
    pub fn preserves(&self, c: &CycleWord) -> bool {
        if c.len() != self.len {
            return false;
        }
        let (a, b) = self.fixed();
        let e = c.entries();
        e[a].rem_euclid(2) == 0
            && e[b].rem_euclid(2) == 0
            && (0..self.len).all(|i| e[i] == e[self.image(i)])
    }
}

impl fmt::Display for Reflection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.fixed();
        write!(f, "axis {} (fixes {} and {})", self.axis, a, b)
    }
}

/// A cycle together with a reflection it is symmetric under.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricStructure {
    cycle: CycleWord,
    axis: Reflection,
}

impl SymmetricStructure {
    pub fn new(cycle: CycleWord, axis: Reflection) -> Result<Self> {
        if cycle.len() != axis.len() {
            return Err(Error::BadAxis {
                axis: axis.axis(),
                len: cycle.len(),
            });
        }
        if !axis.preserves(&cycle) {
            return Err(Error::NotSymmetric { axis: axis.axis() });
        }
        Ok(SymmetricStructure { cycle, axis })
    }

    pub fn cycle(&self) -> &CycleWord {
        &self.cycle
    }

    pub fn axis(&self) -> Reflection {
        self.axis
    }
}

/// All vertex reflections under which `c` is symmetric, ascending by axis.
pub fn find_reflections(c: &CycleWord) -> Vec<Reflection> {
    let n = c.len();
    if n == 0 || n % 2 == 1 {
        return Vec::new();
    }
    (0..n)
        .step_by(2)
        .map(|s| Reflection { axis: s, len: n })
        .filter(|r| r.preserves(c))
        .collect()
}

/// The reflection induced on the dual cycle.
///
/// A fixed entry `e > 2` becomes a block of `e - 3` twos whose middle curve is
/// fixed; a fixed `2` sits in the middle of a block of `2l + 1` twos, which
/// becomes the single dual entry `2l + 4`.
pub fn induced_dual_reflection(s: &SymmetricStructure) -> Result<SymmetricStructure> {
    let c = s.cycle();
    validate_cusp(c).into_result()?;
    let n = c.len();
    if n < 2 {
        return Err(Error::TooShort { len: n, min: 2 });
    }
    let (d, corr) = general_dual(c)?;
    let m = d.len();
    let image_of = |f: usize| -> Result<usize> {
        if c.entries()[f] > 2 {
            let &(_, start, len) = corr
                .anchor_blocks
                .iter()
                .find(|(e_idx, _, _)| *e_idx == f)
                .ok_or(Error::NotSymmetric {
                    axis: s.axis().axis(),
                })?;
            if len % 2 == 0 {
                return Err(Error::NotSymmetric {
                    axis: s.axis().axis(),
                });
            }
            Ok(start + (len - 1) / 2)
        } else {
            let &(_, _, d_idx) = corr
                .gap_entries
                .iter()
                .find(|&&(first, b, _)| {
                    b > 0
                        && (f + n - first) % n < b
                        && (f + n - first) % n == (b - 1) / 2
                        && b % 2 == 1
                })
                .ok_or(Error::NotSymmetric {
                    axis: s.axis().axis(),
                })?;
            Ok(d_idx)
        }
    };
    let (f1, f2) = s.axis().fixed();
    let g1 = image_of(f1)?;
    let g2 = image_of(f2)?;
    if m % 2 == 1 || (g1 + m / 2) % m != g2 {
        return Err(Error::NotSymmetric {
            axis: s.axis().axis(),
        });
    }
    let axis = Reflection::fixing(g1, m)?;
    SymmetricStructure::new(d, axis)
}

/// One of the four `(-2)`-curves resolving the `A_1` points of the quotient.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ForkVertex {
    pub weight: i64,
    /// chain index the curve meets
    pub attached_to: usize,
}

/// Dual graph of the minimal resolution of the quotient singularity: a chain
/// with two `(-2)`-forks at each end. Weights are negated self-intersections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientGraph {
    pub chain: Vec<i64>,
    pub forks: [ForkVertex; 4],
}

impl QuotientGraph {
    pub fn vertex_count(&self) -> usize {
        self.chain.len() + self.forks.len()
    }

    /// Symmetric intersection matrix, chain vertices first, then forks.
    pub fn intersection_form(&self) -> Vec<Vec<i64>> {
        let k = self.chain.len();
        let total = self.vertex_count();
        let mut q = alloc::vec![alloc::vec![0i64; total]; total];
        for (i, &w) in self.chain.iter().enumerate() {
            q[i][i] = -w;
            if i + 1 < k {
                q[i][i + 1] = 1;
                q[i + 1][i] = 1;
            }
        }
        for (j, fork) in self.forks.iter().enumerate() {
            let v = k + j;
            q[v][v] = -fork.weight;
            q[v][fork.attached_to] = 1;
            q[fork.attached_to][v] = 1;
        }
        q
    }
}

pub fn quotient_resolution_graph(s: &SymmetricStructure) -> Result<QuotientGraph> {
    let c = s.cycle();
    let n = c.len();
    if n < 4 {
        return Err(Error::TooShort { len: n, min: 4 });
    }
    validate_cusp(c).into_result()?;
    let (f1, f2) = s.axis().fixed();
    let e = c.entries();
    let mut chain = Vec::with_capacity(n / 2 + 1);
    chain.push(e[f1] / 2 + 1);
    for i in 1..n / 2 {
        chain.push(e[(f1 + i) % n]);
    }
    chain.push(e[f2] / 2 + 1);
    let last = chain.len() - 1;
    let fork = |attached_to| ForkVertex {
        weight: 2,
        attached_to,
    };
    Ok(QuotientGraph {
        chain,
        forks: [fork(0), fork(0), fork(last), fork(last)],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn axes(c: &[i64]) -> Vec<usize> {
        find_reflections(&CycleWord::new(c.to_vec()))
            .iter()
            .map(|r| r.axis())
            .collect()
    }

    #[test]
    fn reflections_found() {
        // the unique axis fixes 10 (index 1) and 4 (index 3)
        assert_eq!(axes(&[3, 10, 3, 4]), vec![2]);
        assert!(axes(&[1, 2, 1, 2, 2, 1, 2, 1]).is_empty());
        assert_eq!(axes(&[0, 0, 0, 0]), vec![0, 2]);
        assert!(axes(&[3, 5, 3, 4]).is_empty());
        assert!(axes(&[3, 4, 5]).is_empty());
    }

    #[test]
    fn reflection_basics() {
        let r = Reflection::new(6, 4).unwrap();
        assert_eq!(r.axis(), 2);
        assert_eq!(r.fixed(), (1, 3));
        assert_eq!(r.image(0), 2);
        for i in 0..4 {
            assert_eq!(r.image(r.image(i)), i);
        }
        assert_eq!(r.node_image(0), 1);
        assert!(Reflection::new(1, 4).is_err());
        assert!(Reflection::new(0, 5).is_err());
    }

    #[test]
    fn induced_reflection_examples() {
        let s =
            SymmetricStructure::new([2, 4, 2, 4].into(), Reflection::new(2, 4).unwrap()).unwrap();
        let t = induced_dual_reflection(&s).unwrap();
        assert_eq!(t.cycle(), &CycleWord::from([4, 2, 4, 2]));
        let (a, b) = t.axis().fixed();
        assert_eq!((t.cycle().at(a), t.cycle().at(b)), (2, 2));

        let s =
            SymmetricStructure::new([3, 10, 3, 4].into(), Reflection::new(2, 4).unwrap()).unwrap();
        let t = induced_dual_reflection(&s).unwrap();
        assert_eq!(
            t.cycle(),
            &CycleWord::from([3, 2, 2, 2, 2, 2, 2, 2, 3, 3, 2, 3])
        );
        // middle of the seven-2 run and the isolated 2
        assert_eq!(t.axis().fixed(), (4, 10));

        let s =
            SymmetricStructure::new([3, 8, 3, 6].into(), Reflection::new(2, 4).unwrap()).unwrap();
        let t = induced_dual_reflection(&s).unwrap();
        assert!(t
            .cycle()
            .is_dihedrally_equivalent(&[2, 3, 3, 2, 2, 2, 2, 2, 3, 3, 2, 2].into()));
        assert!(t.axis().preserves(t.cycle()));
    }

    #[test]
    fn induced_reflection_fixed_two() {
        // (2,2,2,4,2,2,2,4)-type: fixed 2 central in a run of three twos
        let c = CycleWord::from([4, 2, 2, 2, 4, 2, 2, 2]);
        let r = Reflection::fixing(2, 8).unwrap();
        let s = SymmetricStructure::new(c, r).unwrap();
        let t = induced_dual_reflection(&s).unwrap();
        let (a, b) = t.axis().fixed();
        assert_eq!(t.cycle().at(a), 6);
        assert_eq!(t.cycle().at(b), 6);
    }

    #[test]
    fn quotient_graph_shapes() {
        let s =
            SymmetricStructure::new([2, 4, 2, 4].into(), Reflection::new(2, 4).unwrap()).unwrap();
        let g = quotient_resolution_graph(&s).unwrap();
        assert_eq!(g.chain, vec![3, 2, 3]);
        assert_eq!(g.vertex_count(), 7);
        assert!(g.forks.iter().all(|f| f.weight == 2));
        assert_eq!(g.forks.map(|f| f.attached_to), [0, 0, 2, 2]);

        let s =
            SymmetricStructure::new([6, 2, 6, 2].into(), Reflection::new(0, 4).unwrap()).unwrap();
        assert_eq!(quotient_resolution_graph(&s).unwrap().chain, vec![4, 2, 4]);
    }
}
