use alloc::vec::Vec;

use super::toric::{corner_schedule_for, enumerate_equivariant_toric, seed, ToricCache};
use super::{EquivariantStep, PairCycle};
use crate::cycle::Relabel;
use crate::error::{Error, Result};

/// A construction of the target from the seed: corner pairs up to a toric
/// model, a relabeling onto the target, then interior blowups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricWitness {
    pub toric_cycle: PairCycle,
    pub corner_schedule: Vec<EquivariantStep>,
    /// steps in target indices
    pub interior_schedule: Vec<EquivariantStep>,
    /// toric index `j` goes to target index `alignment.apply(j)`
    pub alignment: Relabel,
}

impl ToricWitness {
    pub fn alignment_map(&self) -> Vec<usize> {
        self.alignment.to_vec(self.toric_cycle.len())
    }

    /// Replays every step and checks it lands on `target` exactly.
    pub fn replay(&self, target: &PairCycle) -> Result<()> {
        let mut p = seed();
        for &step in &self.corner_schedule {
            if !step.is_corner() {
                return Err(Error::WitnessReplay("interior step in the corner schedule"));
            }
            p = p.apply(step)?;
        }
        if p != self.toric_cycle {
            return Err(Error::WitnessReplay(
                "corner schedule misses the toric model",
            ));
        }
        let mut p = p.relabeled(self.alignment);
        if p.axis() != target.axis() {
            return Err(Error::WitnessReplay("alignment does not match the axes"));
        }
        for &step in &self.interior_schedule {
            if step.is_corner() {
                return Err(Error::WitnessReplay("corner step in the interior schedule"));
            }
            p = p.apply(step)?;
        }
        if p != *target {
            return Err(Error::WitnessReplay("interior schedule misses the target"));
        }
        Ok(())
    }
}

/// What a rejection covered.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Exhaustion {
    pub toric_models: usize,
    pub alignments: usize,
    /// states visited by the search oracle; zero for the toric-first decision
    pub states: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision {
    Accepted(ToricWitness),
    Rejected(Exhaustion),
}

impl Decision {
    pub fn is_accepted(&self) -> bool {
        matches!(self, Decision::Accepted(_))
    }

    pub fn witness(&self) -> Option<&ToricWitness> {
        match self {
            Decision::Accepted(w) => Some(w),
            Decision::Rejected(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub decision: Decision,
    /// every entry is 2: the boundary is only negative semidefinite
    pub semidefinite: bool,
}

/// An alignment `g` of `toric` onto `target` with `target >= g(toric)`
/// entrywise and even excess on the fixed components.
pub fn dominates_with_parity(target: &PairCycle, toric: &PairCycle) -> Result<Option<Relabel>> {
    Ok(aligned_dominations(target, toric)?.0)
}

fn aligned_dominations(target: &PairCycle, toric: &PairCycle) -> Result<(Option<Relabel>, usize)> {
    let n = target.len();
    if toric.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: toric.len(),
        });
    }
    let t = target.cycle().entries();
    let d = toric.cycle().entries();
    let sigma = toric.axis();
    let mut tried = 0;
    for g in toric.aligning_relabels(target.axis()) {
        tried += 1;
        let ok = (0..n).all(|j| {
            let diff = t[g.apply(j, n)] - d[j];
            diff >= 0 && (!sigma.is_fixed(j) || diff % 2 == 0)
        });
        if ok {
            return Ok((Some(g), tried));
        }
    }
    Ok((None, tried))
}

fn check_target(target: &PairCycle) -> Result<bool> {
    let e = target.cycle().entries();
    if let Some((index, &value)) = e.iter().enumerate().find(|(_, &x)| x < 2) {
        return Err(Error::Indefinite { index, value });
    }
    Ok(e.iter().all(|&x| x == 2))
}

/// Interior steps turning `g(toric)` into `target`, ascending by index.
fn interior_steps(target: &PairCycle, aligned: &PairCycle) -> Vec<EquivariantStep> {
    let n = target.len();
    let sigma = target.axis();
    let t = target.cycle().entries();
    let a = aligned.cycle().entries();
    let mut steps = Vec::new();
    for j in 0..n {
        let diff = (t[j] - a[j]) as usize;
        if sigma.is_fixed(j) {
            steps.extend(core::iter::repeat_n(
                EquivariantStep::InteriorDouble(j),
                diff / 2,
            ));
        } else if j < sigma.image(j) {
            steps.extend(core::iter::repeat_n(EquivariantStep::InteriorPair(j), diff));
        }
    }
    steps
}

/// The toric models of one length with their corner schedules, ready to
/// decide many targets.
#[derive(Clone, Debug)]
pub struct Decider {
    n: usize,
    models: Vec<PairCycle>,
    schedules: Vec<Option<Vec<EquivariantStep>>>,
}

impl Decider {
    pub fn new(n: usize, cache: &mut dyn ToricCache) -> Result<Self> {
        let models = enumerate_equivariant_toric(n, cache)?;
        let schedules = alloc::vec![None; models.len()];
        Ok(Decider {
            n,
            models,
            schedules,
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.models.is_empty()
    }

    pub fn models(&self) -> &[PairCycle] {
        &self.models
    }

    /// Accept/reject without building a witness.
    pub fn accepts(&self, target: &PairCycle) -> Result<bool> {
        Ok(self.find(target)?.is_ok())
    }

    fn find(
        &self,
        target: &PairCycle,
    ) -> Result<core::result::Result<(usize, Relabel), Exhaustion>> {
        if target.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: target.len(),
            });
        }
        let mut ex = Exhaustion::default();
        for (k, model) in self.models.iter().enumerate() {
            ex.toric_models += 1;
            let (g, tried) = aligned_dominations(target, model)?;
            ex.alignments += tried;
            if let Some(g) = g {
                return Ok(Ok((k, g)));
            }
        }
        Ok(Err(ex))
    }

    pub fn decide(&mut self, target: &PairCycle) -> Result<Verdict> {
        let semidefinite = check_target(target)?;
        let decision = match self.find(target)? {
            Err(ex) => Decision::Rejected(ex),
            Ok((k, g)) => {
                let model = self.models[k].clone();
                let corner_schedule = match &self.schedules[k] {
                    Some(s) => s.clone(),
                    None => {
                        let s = corner_schedule_for(&model)?;
                        self.schedules[k] = Some(s.clone());
                        s
                    }
                };
                let interior_schedule = interior_steps(target, &model.relabeled(g));
                Decision::Accepted(ToricWitness {
                    toric_cycle: model,
                    corner_schedule,
                    interior_schedule,
                    alignment: g,
                })
            }
        };
        Ok(Verdict {
            decision,
            semidefinite,
        })
    }
}

/// Whether `target` sits on an equivariant Looijenga pair, decided toric model
/// first.
pub fn decide_equivariant_pair(target: &PairCycle, cache: &mut dyn ToricCache) -> Result<Verdict> {
    check_target(target)?;
    Decider::new(target.len(), cache)?.decide(target)
}

#[cfg(test)]
mod tests {
    use super::super::toric::{MemoryCache, NoCache};
    use super::*;
    use crate::cycle::{induced_dual_reflection, CycleWord, Reflection, SymmetricStructure};

    fn dual_pair(cusp: &[i64], axis: usize) -> PairCycle {
        let c = CycleWord::new(cusp.to_vec());
        let s = SymmetricStructure::new(c, Reflection::new(axis, cusp.len()).unwrap()).unwrap();
        let t = induced_dual_reflection(&s).unwrap();
        PairCycle::new(t.cycle().clone(), t.axis()).unwrap()
    }

    #[test]
    fn domination_examples() {
        let target = PairCycle::from_parts(alloc::vec![4, 2, 2, 2], 0).unwrap();
        let toric = PairCycle::from_parts(alloc::vec![0, 0, 0, 0], 0).unwrap();
        assert_eq!(
            dominates_with_parity(&target, &toric),
            Ok(Some(Relabel::IDENTITY))
        );
        assert_eq!(
            dominates_with_parity(&toric, &toric),
            Ok(Some(Relabel::IDENTITY))
        );
        let low = PairCycle::from_parts(alloc::vec![2, 2, 2, 2], 0).unwrap();
        let high = PairCycle::from_parts(alloc::vec![4, 0, 4, 0], 0).unwrap();
        assert!(dominates_with_parity(&low, &high).unwrap().is_none());
        // rotating by one moves the 4s onto the unfixed components
        let high = PairCycle::from_parts(alloc::vec![0, 4, 0, 4], 0).unwrap();
        assert!(dominates_with_parity(&low, &high).unwrap().is_none());
        let short = PairCycle::from_parts(alloc::vec![1, 1, 2, 1, 1, 0], 4).unwrap();
        assert!(dominates_with_parity(&short, &toric).is_err());
    }

    #[test]
    fn known_failure_rejected() {
        let target = dual_pair(&[3, 10, 3, 4], 2);
        let v = decide_equivariant_pair(&target, &mut NoCache).unwrap();
        assert!(!v.semidefinite);
        match v.decision {
            Decision::Rejected(ex) => {
                assert_eq!(ex.toric_models, 22);
                assert!(ex.alignments >= 22);
            }
            Decision::Accepted(_) => panic!("expected rejection"),
        }
    }

    #[test]
    fn accepted_example_replays() {
        let target = dual_pair(&[2, 8, 2, 8], 2);
        assert!(target
            .cycle()
            .is_dihedrally_equivalent(&[4, 2, 2, 2, 2, 2, 4, 2, 2, 2, 2, 2].into()));
        let v = decide_equivariant_pair(&target, &mut MemoryCache::new()).unwrap();
        let w = v.decision.witness().expect("accepted");
        w.replay(&target).unwrap();
    }

    #[test]
    fn rotated_known_failure_rejected() {
        // (4,4,4,8) is a rotation of the known failure (4,8,4,4)
        let target = dual_pair(&[4, 4, 4, 8], 2);
        assert!(target
            .cycle()
            .is_dihedrally_equivalent(&[3, 2, 3, 2, 3, 2, 2, 2, 2, 2, 3, 2].into()));
        let v = decide_equivariant_pair(&target, &mut MemoryCache::new()).unwrap();
        assert!(!v.decision.is_accepted());
    }

    #[test]
    fn semidefinite_case() {
        let target = PairCycle::from_parts(alloc::vec![2; 8], 0).unwrap();
        let v = decide_equivariant_pair(&target, &mut NoCache).unwrap();
        assert!(v.semidefinite);
        let w = v.decision.witness().expect("accepted");
        w.replay(&target).unwrap();
        let t_i = PairCycle::from_parts(alloc::vec![1, 2, 1, 2, 1, 2, 1, 2], 2).unwrap();
        assert!(t_i
            .cycle()
            .is_dihedrally_equivalent(&[2, 1, 2, 1, 2, 1, 2, 1].into()));
        assert!(dominates_with_parity(&target, &t_i).unwrap().is_some());
    }

    #[test]
    fn indefinite_target_rejected_as_error() {
        let target = PairCycle::from_parts(alloc::vec![2, 1, 2, 1], 0).unwrap();
        assert!(matches!(
            decide_equivariant_pair(&target, &mut NoCache),
            Err(Error::Indefinite { .. })
        ));
    }
}
