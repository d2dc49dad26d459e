use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use super::{EquivariantStep, PairCycle};
use crate::cycle::{CycleWord, Reflection};
use crate::error::{Error, Result};

/// Longest toric model the enumeration accepts.
pub const MAX_TORIC_LENGTH: usize = 16;

/// `(0,0,0,0)` with the reflection fixing components 1 and 3.
pub fn seed() -> PairCycle {
    PairCycle::from_parts(alloc::vec![0, 0, 0, 0], 2).expect("seed is symmetric")
}

/// Storage for enumerated toric models, keyed by length.
pub trait ToricCache {
    fn get(&self, n: usize) -> Option<Vec<PairCycle>>;
    fn put(&mut self, n: usize, pairs: &[PairCycle]);
}

#[derive(Clone, Debug, Default)]
pub struct MemoryCache {
    levels: BTreeMap<usize, Vec<PairCycle>>,
}

impl MemoryCache {
    pub fn new() -> Self {
        Self::default()
    }
}

impl ToricCache for MemoryCache {
    fn get(&self, n: usize) -> Option<Vec<PairCycle>> {
        self.levels.get(&n).cloned()
    }

    fn put(&mut self, n: usize, pairs: &[PairCycle]) {
        self.levels.insert(n, pairs.to_vec());
    }
}

/// Never stores anything.
#[derive(Clone, Copy, Debug, Default)]
pub struct NoCache;

impl ToricCache for NoCache {
    fn get(&self, _: usize) -> Option<Vec<PairCycle>> {
        None
    }

    fn put(&mut self, _: usize, _: &[PairCycle]) {}
}

fn check_length(n: usize) -> Result<()> {
    if n % 2 == 1 || !(4..=MAX_TORIC_LENGTH).contains(&n) {
        return Err(Error::LengthOutOfRange {
            n,
            max: MAX_TORIC_LENGTH,
        });
    }
    Ok(())
}

/// Toric models of length `n` reachable from the seed by corner pairs, one
/// per equivalence class, sorted by canonical key.
///
/// Every returned pair is the literal result of a corner schedule applied to
/// the seed (not a relabeled copy), so [`corner_schedule_for`] succeeds on it.
pub fn enumerate_equivariant_toric(n: usize, cache: &mut dyn ToricCache) -> Result<Vec<PairCycle>> {
    check_length(n)?;
    if let Some(hit) = cache.get(n) {
        return Ok(hit);
    }
    let mut level: BTreeMap<(Vec<i64>, usize), PairCycle> = BTreeMap::new();
    let s = seed();
    level.insert(s.canonical_key(), s);
    let mut len = 4;
    loop {
        let sorted: Vec<PairCycle> = level.values().cloned().collect();
        cache.put(len, &sorted);
        if len == n {
            return Ok(sorted);
        }
        let mut next = BTreeMap::new();
        for p in &sorted {
            for i in 0..len {
                let q = p.apply(EquivariantStep::CornerPair(i))?;
                next.entry(q.canonical_key()).or_insert(q);
            }
        }
        level = next;
        len += 2;
    }
}

/// A corner schedule taking the seed to exactly `target` (cycle and axis),
/// found by peeling off mirrored pairs of `1`s.
pub fn corner_schedule_for(target: &PairCycle) -> Result<Vec<EquivariantStep>> {
    let mut dead = BTreeSet::new();
    let mut path = Vec::new();
    if peel(target, &mut dead, &mut path) {
        path.reverse();
        Ok(path)
    } else {
        Err(Error::CacheInconsistent(target.cycle().entries().to_vec()))
    }
}

fn peel(
    x: &PairCycle,
    dead: &mut BTreeSet<(Vec<i64>, usize)>,
    path: &mut Vec<EquivariantStep>,
) -> bool {
    let m = x.len();
    if m == 4 {
        return *x == seed();
    }
    let key = (x.cycle().entries().to_vec(), x.axis().axis());
    if dead.contains(&key) {
        return false;
    }
    let e = x.cycle().entries();
    let sigma = x.axis();
    for (a, &ea) in e.iter().enumerate().skip(1) {
        let b = sigma.image(a);
        if ea != 1 || b <= a || b == a + 1 || (b + 1) % m == a {
            continue;
        }
        let Some(pred) = predecessor(x, a, b) else {
            continue;
        };
        let node = a - 1;
        if pred.apply(EquivariantStep::CornerPair(node)).ok().as_ref() != Some(x) {
            continue;
        }
        path.push(EquivariantStep::CornerPair(node));
        if peel(&pred, dead, path) {
            return true;
        }
        path.pop();
    }
    dead.insert(key);
    false
}

/// Removes the `1`s at `a < b` and undoes the neighbor increments.
fn predecessor(x: &PairCycle, a: usize, b: usize) -> Option<PairCycle> {
    let m = x.len();
    let mut e = x.cycle().entries().to_vec();
    for i in [a, b] {
        e[i - 1] -= 1;
        e[(i + 1) % m] -= 1;
    }
    let (f, _) = x.axis().fixed();
    if f == a || f == b {
        return None;
    }
    let shift = [a, b].iter().filter(|&&i| i < f).count();
    e.remove(b);
    e.remove(a);
    let axis = Reflection::fixing(f - shift, m - 2).ok()?;
    PairCycle::new(CycleWord::new(e), axis).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lengths() -> Vec<(usize, usize)> {
        let mut cache = MemoryCache::new();
        (4..=12)
            .step_by(2)
            .map(|n| (n, enumerate_equivariant_toric(n, &mut cache).unwrap().len()))
            .collect()
    }

    #[test]
    fn counts_per_length() {
        assert_eq!(lengths(), [(4, 1), (6, 1), (8, 3), (10, 7), (12, 22)]);
    }

    #[test]
    fn small_models_present() {
        let mut cache = NoCache;
        let has = |n: usize, c: &[i64], cache: &mut NoCache| {
            enumerate_equivariant_toric(n, cache)
                .unwrap()
                .iter()
                .any(|p| {
                    p.cycle()
                        .is_dihedrally_equivalent(&CycleWord::new(c.to_vec()))
                })
        };
        assert!(has(4, &[0, 0, 0, 0], &mut cache));
        assert!(has(6, &[2, 1, 1, 0, 1, 1], &mut cache));
        assert!(has(8, &[2, 1, 2, 1, 2, 1, 2, 1], &mut cache));
        assert!(has(10, &[2, 3, 1, 2, 2, 0, 2, 2, 1, 3], &mut cache));
    }

    #[test]
    fn schedules_replay() {
        let mut cache = MemoryCache::new();
        for p in enumerate_equivariant_toric(12, &mut cache).unwrap() {
            let sched = corner_schedule_for(&p).unwrap();
            assert_eq!(sched.len(), 4);
            let mut q = seed();
            for s in sched {
                q = q.apply(s).unwrap();
            }
            assert_eq!(q, p);
        }
    }

    #[test]
    fn bad_lengths() {
        assert!(enumerate_equivariant_toric(5, &mut NoCache).is_err());
        assert!(enumerate_equivariant_toric(2, &mut NoCache).is_err());
        assert!(enumerate_equivariant_toric(MAX_TORIC_LENGTH + 2, &mut NoCache).is_err());
    }

    #[test]
    fn unreachable_pair_has_no_schedule() {
        let p = PairCycle::from_parts(alloc::vec![0, 0, 0, 0], 0).unwrap();
        assert!(corner_schedule_for(&p).is_err());
        let p = PairCycle::from_parts(alloc::vec![2, 2, 2, 2, 2, 2], 0).unwrap();
        assert!(corner_schedule_for(&p).is_err());
    }
}
