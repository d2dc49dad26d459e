use alloc::vec::Vec;
use core::cmp::Ordering;

use super::decide::Decider;
use super::toric::{ToricCache, MAX_TORIC_LENGTH};
use super::{charge, PairCycle};
use crate::cycle::{canonicalize, dual, find_reflections, CycleWord, Reflection, Relabel};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ScanOptions {
    /// build and replay a witness for every accepted axis
    pub verify_witnesses: bool,
}

/// A symmetric cycle rejected on every one of its axes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanFailure {
    /// canonical form of the boundary cycle
    pub dual: CycleWord,
    pub axes: Vec<Reflection>,
    /// canonical form of the cusp whose dual this is
    pub cusp: CycleWord,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ScanReport {
    pub n: usize,
    pub max_entry: i64,
    pub toric_models: usize,
    /// distinct cycles decided
    pub examined: usize,
    /// (cycle, axis) decisions made
    pub axes_decided: usize,
    /// cycles with charge below 3, which bound no Looijenga pair
    pub skipped_low_charge: usize,
    pub witnesses_replayed: usize,
    pub failures: Vec<ScanFailure>,
}

/// Words `(a, w_1, ..., w_{k}, b, w_k, ..., w_1)` with `k = n/2 - 1`, `a`, `b`
/// even, entries in `2..=max_entry` and some entry at least 3. These are the
/// negative definite cycles symmetric under the axis fixing 0 and `n/2`.
pub fn frame_words(n: usize, max_entry: i64) -> impl Iterator<Item = CycleWord> {
    let k = n / 2 - 1;
    let evens: Vec<i64> = (2..=max_entry).filter(|x| x % 2 == 0).collect();
    let span = (max_entry - 1).max(0) as usize;
    let arms = span.pow(k as u32);
    let ends: Vec<(i64, i64)> = evens
        .iter()
        .flat_map(|&a| evens.iter().map(move |&b| (a, b)))
        .collect();
    ends.into_iter().flat_map(move |(a, b)| {
        (0..arms).filter_map(move |mut code| {
            let mut arm = Vec::with_capacity(k);
            for _ in 0..k {
                arm.push(2 + (code % span) as i64);
                code /= span;
            }
            arm.reverse();
            let mut w = Vec::with_capacity(n);
            w.push(a);
            w.extend_from_slice(&arm);
            w.push(b);
            w.extend(arm.iter().rev());
            w.iter().any(|&x| x >= 3).then(|| CycleWord::new(w))
        })
    })
}

fn image_at(w: &[i64], g: Relabel, k: usize) -> i64 {
    let n = w.len();
    if g.reversed {
        w[(g.shift + n - k) % n]
    } else {
        w[(k + n - g.shift) % n]
    }
}

/// Whether `w` is the least of its images that are symmetric about axis 0.
fn is_frame_representative(w: &[i64]) -> bool {
    let n = w.len();
    let h = n / 2;
    for g in Relabel::all(n) {
        if g == Relabel::IDENTITY {
            continue;
        }
        let a = image_at(w, g, 0);
        let b = image_at(w, g, h);
        if a % 2 != 0 || b % 2 != 0 {
            continue;
        }
        if !(1..h).all(|k| image_at(w, g, k) == image_at(w, g, n - k)) {
            continue;
        }
        let cmp = (0..n)
            .map(|k| image_at(w, g, k).cmp(&w[k]))
            .find(|o| *o != Ordering::Equal)
            .unwrap_or(Ordering::Equal);
        if cmp == Ordering::Less {
            return false;
        }
    }
    true
}

/// Decides every symmetric negative definite cycle of length `n` with entries
/// at most `max_entry` on each of its axes, and lists those rejected on all.
pub fn scan_length(
    n: usize,
    max_entry: i64,
    options: ScanOptions,
    cache: &mut dyn ToricCache,
) -> Result<ScanReport> {
    if n % 2 == 1 || !(4..=MAX_TORIC_LENGTH).contains(&n) || max_entry < 4 {
        return Err(Error::LengthOutOfRange {
            n,
            max: MAX_TORIC_LENGTH,
        });
    }
    let mut decider = Decider::new(n, cache)?;
    let mut report = ScanReport {
        n,
        max_entry,
        toric_models: decider.models().len(),
        ..ScanReport::default()
    };
    for w in frame_words(n, max_entry) {
        if !is_frame_representative(w.entries()) {
            continue;
        }
        let q = charge(&w);
        if q < 3 {
            report.skipped_low_charge += 1;
            continue;
        }
        assert!(
            q >= 4 && q % 2 == 0,
            "symmetric definite cycle {w} has charge {q}"
        );
        report.examined += 1;
        let c = canonicalize(&w);
        let axes = find_reflections(&c);
        let mut rejected = Vec::new();
        for &r in &axes {
            let target = PairCycle::new(c.clone(), r)?;
            report.axes_decided += 1;
            if options.verify_witnesses {
                let v = decider.decide(&target)?;
                match v.decision.witness() {
                    Some(wit) => {
                        wit.replay(&target)?;
                        report.witnesses_replayed += 1;
                    }
                    None => rejected.push(r),
                }
            } else if !decider.accepts(&target)? {
                rejected.push(r);
            }
        }
        if rejected.len() == axes.len() {
            let cusp = canonicalize(&dual(&c)?);
            report.failures.push(ScanFailure {
                dual: c,
                axes: rejected,
                cusp,
            });
        }
    }
    report.failures.sort_by(|a, b| a.dual.cmp(&b.dual));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::super::toric::MemoryCache;
    use super::*;

    #[test]
    fn frame_word_shape() {
        let words: Vec<_> = frame_words(4, 4).collect();
        // a, b in {2,4}, arm in {2,3,4}, minus (2,2,2,2)
        assert_eq!(words.len(), 11);
        assert!(words
            .iter()
            .all(|w| Reflection::new(0, 4).unwrap().preserves(w)));
    }

    #[test]
    fn representatives_are_unique_per_class() {
        let reps: Vec<CycleWord> = frame_words(6, 5)
            .filter(|w| is_frame_representative(w.entries()))
            .collect();
        let mut canon: Vec<CycleWord> = reps.iter().map(canonicalize).collect();
        let before = canon.len();
        canon.sort();
        canon.dedup();
        assert_eq!(canon.len(), before);
        let all: alloc::collections::BTreeSet<CycleWord> =
            frame_words(6, 5).map(|w| canonicalize(&w)).collect();
        assert_eq!(all.len(), before);
    }

    #[test]
    fn short_lengths_have_no_failures() {
        let mut cache = MemoryCache::new();
        for n in [4, 6, 8] {
            let r = scan_length(n, 8, ScanOptions::default(), &mut cache).unwrap();
            assert!(r.failures.is_empty(), "n = {n}: {:?}", r.failures);
        }
        assert!(scan_length(4, 3, ScanOptions::default(), &mut cache).is_err());
    }
}
