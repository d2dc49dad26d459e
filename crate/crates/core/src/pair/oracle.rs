//! Exhaustive search over mixed move sequences, used to cross-check the
//! toric-first decision.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec::Vec;

use super::decide::{Decision, Exhaustion, ToricWitness};
use super::toric::seed;
use super::{equivariant_steps, EquivariantStep, PairCycle};
use crate::error::{Error, Result};

type Key = (Vec<i64>, usize);
type Visited = BTreeMap<Key, (PairCycle, Option<(Key, EquivariantStep)>)>;

/// Breadth-first search from the seed over all equivariant steps. States are
/// pruned once they are longer than the target, carry more charge, or have an
/// entry above the target's largest entry (entries never decrease).
///
/// Visiting more than `budget` states is an error, distinct from rejection.
pub fn brute_force_reachability(target: &PairCycle, budget: usize) -> Result<Decision> {
    let n = target.len();
    let q_max = target.charge();
    let e_max = target.cycle().entries().iter().copied().max().unwrap_or(0);
    let goal = target.canonical_key();

    let start = seed();
    let mut seen: Visited = BTreeMap::new();
    let mut queue = VecDeque::new();
    let k0 = start.canonical_key();
    seen.insert(k0.clone(), (start, None));
    queue.push_back(k0);

    while let Some(key) = queue.pop_front() {
        if key == goal {
            let path = backtrack(&seen, &key);
            return Ok(Decision::Accepted(normalize(&path, target)?));
        }
        let state = seen[&key].0.clone();
        for step in equivariant_steps(&state) {
            if step.is_corner() && state.len() + 2 > n {
                continue;
            }
            let next = state.apply(step)?;
            if next.charge() > q_max || next.cycle().entries().iter().any(|&x| x > e_max) {
                continue;
            }
            let nk = next.canonical_key();
            if seen.contains_key(&nk) {
                continue;
            }
            if seen.len() >= budget {
                return Err(Error::BudgetExceeded(budget));
            }
            seen.insert(nk.clone(), (next, Some((key.clone(), step))));
            queue.push_back(nk);
        }
    }
    Ok(Decision::Rejected(Exhaustion {
        toric_models: 0,
        alignments: 0,
        states: seen.len(),
    }))
}

fn backtrack(seen: &Visited, end: &Key) -> Vec<EquivariantStep> {
    let mut path = Vec::new();
    let mut cur = end.clone();
    while let Some((parent, step)) = &seen[&cur].1 {
        path.push(*step);
        cur = parent.clone();
    }
    path.reverse();
    path
}

/// Reorders a mixed path so all corner pairs come first. An interior step on
/// component `c` commutes past a corner pair at nodes `i`, `j`, landing on
/// `c + #{nodes < c}`.
fn normalize(path: &[EquivariantStep], target: &PairCycle) -> Result<ToricWitness> {
    let mut p = seed();
    let mut corners = Vec::new();
    let mut pending: Vec<EquivariantStep> = Vec::new();
    for &step in path {
        if step.is_corner() {
            let i = step.index();
            let j = p.axis().node_image(i);
            for s in pending.iter_mut() {
                let c = s.index();
                let shift = [i, j].iter().filter(|&&x| x < c).count();
                *s = s.with_index(c + shift);
            }
            corners.push(step);
        } else {
            pending.push(step);
        }
        p = p.apply(step)?;
    }
    let mut toric = seed();
    for &s in &corners {
        toric = toric.apply(s)?;
    }
    let mut end = toric.clone();
    for &s in &pending {
        end = end.apply(s)?;
    }
    if end != p {
        return Err(Error::WitnessReplay("reordered path changes the result"));
    }
    let g = end
        .cycle()
        .dihedral_images()
        .map(|(g, _)| g)
        .find(|&g| end.relabeled(g) == *target)
        .ok_or(Error::WitnessReplay(
            "search result is not equivalent to the target",
        ))?;
    let n = target.len();
    let interior_schedule = pending
        .iter()
        .map(|s| {
            let k = g.apply(s.index(), n);
            match s {
                EquivariantStep::InteriorPair(_) => {
                    EquivariantStep::InteriorPair(k.min(target.axis().image(k)))
                }
                _ => s.with_index(k),
            }
        })
        .collect();
    let w = ToricWitness {
        toric_cycle: toric,
        corner_schedule: corners,
        interior_schedule,
        alignment: g,
    };
    w.replay(target)?;
    Ok(w)
}
