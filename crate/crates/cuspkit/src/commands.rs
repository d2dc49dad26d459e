use cuspkit_core::cycle::{
    canonicalize, dual, find_reflections, induced_dual_reflection, multiplicity,
    neg_self_intersection, quotient_resolution_graph, validate_cusp,
};
use cuspkit_core::lattice::{class_group_of_quotient, pi1_complement};
use cuspkit_core::pair::{
    brute_force_reachability, enumerate_equivariant_toric, scan_length, Decider, Decision,
    ScanOptions, ToricCache,
};
use cuspkit_core::sl2::{
    build_involution_datum, check_identity_mod2, is_hyperbolic, matrix_of_cycle, Mod2Vec,
};
use cuspkit_core::{CycleWord, Error, PairCycle, Reflection, SymmetricStructure};

use crate::report::{
    mat, ExhaustionRecord, Record, WitnessRecord, NO_SYMMETRY, VERDICT_FAILS, VERDICT_HOLDS,
};

/// A failure, split by exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("bound exceeded: {0}")]
    Bound(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Invalid(_) => 1,
            CliError::Bound(_) => 2,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded(_)
            | Error::LengthOutOfRange { .. }
            | Error::TooShort { .. }
            | Error::Overflow => CliError::Bound(e.to_string()),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

fn entries(c: &CycleWord) -> Vec<i64> {
    c.entries().to_vec()
}

fn m2(v: Mod2Vec) -> [u8; 2] {
    [v.0, v.1]
}

fn pair(r: Reflection) -> [usize; 2] {
    let (a, b) = r.fixed();
    [a, b]
}

/// Reflections of `c`, or just `axis` after checking it is one of them.
fn axes_of(c: &CycleWord, axis: Option<usize>) -> CliResult<Vec<Reflection>> {
    let found = find_reflections(c);
    match axis {
        None => Ok(found),
        Some(s) => {
            let r = Reflection::new(s % c.len().max(1), c.len())?;
            if found.contains(&r) {
                Ok(vec![r])
            } else {
                Err(Error::NotSymmetric { axis: s }.into())
            }
        }
    }
}

fn cusp(c: &CycleWord) -> CliResult<()> {
    Ok(validate_cusp(c).into_result()?)
}

pub fn validate(c: &CycleWord) -> CliResult<Vec<Record>> {
    let v = validate_cusp(c);
    Ok(vec![Record::Validation {
        cycle: entries(c),
        valid: v.is_valid(),
        violations: v.violations.iter().map(|x| x.to_string()).collect(),
        self_intersection: neg_self_intersection(c).ok(),
        multiplicity: multiplicity(c).ok(),
    }])
}

pub fn dual_cmd(c: &CycleWord) -> CliResult<Vec<Record>> {
    let d = dual(c)?;
    Ok(vec![Record::Dual {
        cycle: entries(c),
        canonical_dual: entries(&canonicalize(&d)),
        dual: entries(&d),
        self_intersection: neg_self_intersection(c)?,
    }])
}

/// Reflections need not come from a cusp; the dual side is filled in when
/// they do.
pub fn symmetry(c: &CycleWord, axis: Option<usize>) -> CliResult<Vec<Record>> {
    if c.is_empty() {
        return Err(Error::EmptyCycle.into());
    }
    let axes = axes_of(c, axis)?;
    if axes.is_empty() {
        return Ok(vec![Record::NoSymmetry {
            cycle: entries(c),
            verdict: NO_SYMMETRY.into(),
        }]);
    }
    let is_cusp = validate_cusp(c).is_valid();
    axes.into_iter()
        .map(|r| {
            let t = if is_cusp {
                Some(induced_dual_reflection(&SymmetricStructure::new(
                    c.clone(),
                    r,
                )?)?)
            } else {
                None
            };
            Ok(Record::Reflection {
                cycle: entries(c),
                axis: r.axis(),
                fixed: pair(r),
                dual: t.as_ref().map(|t| entries(t.cycle())),
                dual_axis: t.as_ref().map(|t| t.axis().axis()),
                dual_fixed: t.as_ref().map(|t| pair(t.axis())),
            })
        })
        .collect()
}

pub fn involution(c: &CycleWord, axis: Option<usize>) -> CliResult<Vec<Record>> {
    cusp(c)?;
    let a = matrix_of_cycle(c, 0)?;
    let hyperbolic = is_hyperbolic(&a)?;
    let mut out = vec![Record::Monodromy {
        cycle: entries(c),
        start: 0,
        matrix: mat(&a),
        trace: a.trace()?,
        hyperbolic,
        identity_mod2: check_identity_mod2(&a),
        note: (!hyperbolic).then(|| "non-hyperbolic companion matrix".to_string()),
    }];
    let axes = axes_of(c, axis)?;
    if axes.is_empty() {
        out.push(Record::NoSymmetry {
            cycle: entries(c),
            verdict: NO_SYMMETRY.into(),
        });
    }
    for r in axes {
        let d = build_involution_datum(&SymmetricStructure::new(c.clone(), r)?)?;
        out.push(Record::Involution {
            cycle: entries(c),
            axis: r.axis(),
            start: d.start,
            a: mat(&d.a),
            b: mat(&d.b),
            e_n: d.e_n,
            u0_mod2: m2(d.u0_mod2),
            u_half_mod2: m2(d.u_half_mod2),
            t_candidates: d.t_candidates.iter().map(|&t| m2(t)).collect(),
            a_identity_mod2: check_identity_mod2(&d.a),
            b_squared_identity: d.b_squared_is_identity()?,
            dihedral_relation: d.dihedral_relation_holds()?,
            candidates_odd: d.candidates_have_odd_first_coordinate(),
        });
    }
    Ok(out)
}

pub fn quotient(c: &CycleWord, axis: Option<usize>) -> CliResult<Vec<Record>> {
    cusp(c)?;
    let axes = axes_of(c, axis)?;
    if axes.is_empty() {
        return Ok(vec![Record::NoSymmetry {
            cycle: entries(c),
            verdict: NO_SYMMETRY.into(),
        }]);
    }
    axes.into_iter()
        .map(|r| {
            let g = quotient_resolution_graph(&SymmetricStructure::new(c.clone(), r)?)?;
            let cl = class_group_of_quotient(&g)?;
            Ok(Record::Quotient {
                cycle: entries(c),
                axis: r.axis(),
                chain: g.chain.clone(),
                forks: g
                    .forks
                    .iter()
                    .map(|f| [f.weight, f.attached_to as i64])
                    .collect(),
                class_group: cl.to_string(),
                free_rank: cl.free_rank,
                torsion: cl.invariant_factors.iter().map(|d| d.to_string()).collect(),
            })
        })
        .collect()
}

/// `"x,y;x,y;..."`.
pub fn parse_rays(s: &str) -> CliResult<Vec<(i128, i128)>> {
    let bad = || {
        CliError::Invalid(format!(
            "malformed ray list {s:?}, expected \"x,y;x,y;...\""
        ))
    };
    s.split(';')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            let t = t.trim_start_matches('(').trim_end_matches(')');
            let (x, y) = t.split_once(',').ok_or_else(bad)?;
            let x = x.trim().parse().map_err(|_| bad())?;
            let y = y.trim().parse().map_err(|_| bad())?;
            Ok((x, y))
        })
        .collect()
}

pub fn pi1(rays: &[(i128, i128)]) -> CliResult<Vec<Record>> {
    let p = pi1_complement(rays)?;
    Ok(vec![Record::Pi1 {
        rays: rays.iter().map(|&(x, y)| [x, y]).collect(),
        group: p.group.to_string(),
        free_rank: p.group.free_rank,
        torsion: p
            .group
            .invariant_factors
            .iter()
            .map(|d| d.to_string())
            .collect(),
        empty_input: p.empty_input,
    }])
}

pub struct SmoothableOptions {
    pub axis: Option<usize>,
    pub dual_given: bool,
    /// cross-check each axis with the brute-force search under this budget
    pub cross_check: Option<usize>,
}

/// One (cusp axis, boundary pair) per axis to decide.
fn targets(
    c: &CycleWord,
    opts: &SmoothableOptions,
) -> CliResult<Vec<(Option<Reflection>, PairCycle)>> {
    if opts.dual_given {
        return axes_of(c, opts.axis)?
            .into_iter()
            .map(|r| Ok((None, PairCycle::new(c.clone(), r)?)))
            .collect();
    }
    cusp(c)?;
    axes_of(c, opts.axis)?
        .into_iter()
        .map(|r| {
            let t = induced_dual_reflection(&SymmetricStructure::new(c.clone(), r)?)?;
            Ok((Some(r), PairCycle::new(t.cycle().clone(), t.axis())?))
        })
        .collect()
}

pub fn smoothable(
    c: &CycleWord,
    opts: &SmoothableOptions,
    cache: &mut dyn ToricCache,
) -> CliResult<Vec<Record>> {
    let targets = targets(c, opts)?;
    if targets.is_empty() {
        return Ok(vec![Record::NoSymmetry {
            cycle: entries(c),
            verdict: NO_SYMMETRY.into(),
        }]);
    }
    let mut decider = Decider::new(targets[0].1.len(), cache)?;
    let mut out = Vec::new();
    for (axis, target) in targets {
        let v = decider.decide(&target)?;
        let holds = v.decision.is_accepted();
        if let Some(w) = v.decision.witness() {
            w.replay(&target)?;
        }
        let oracle_agrees = match opts.cross_check {
            Some(budget) => Some(brute_force_reachability(&target, budget)?.is_accepted() == holds),
            None => None,
        };
        let (witness, exhaustion) = match &v.decision {
            Decision::Accepted(w) => (Some(WitnessRecord::of(w)), None),
            Decision::Rejected(e) => (None, Some(ExhaustionRecord::of(e))),
        };
        out.push(Record::Verdict {
            cusp: axis.map(|_| entries(c)),
            axis: axis.map(|r| r.axis()),
            dual: entries(target.cycle()),
            dual_axis: target.axis().axis(),
            holds,
            verdict: if holds { VERDICT_HOLDS } else { VERDICT_FAILS }.into(),
            semidefinite: v.semidefinite,
            witness,
            exhaustion,
            oracle_agrees,
        });
    }
    Ok(out)
}

pub fn enumerate_toric(n: usize, cache: &mut dyn ToricCache) -> CliResult<Vec<Record>> {
    let models = enumerate_equivariant_toric(n, cache)?;
    let mut out: Vec<Record> = models
        .iter()
        .map(|p| Record::Toric {
            n,
            cycle: entries(p.cycle()),
            axis: p.axis().axis(),
        })
        .collect();
    out.push(Record::ToricSummary {
        n,
        count: models.len(),
    });
    Ok(out)
}

pub fn scan(
    n: usize,
    max_entry: i64,
    verify: bool,
    cache: &mut dyn ToricCache,
) -> CliResult<Vec<Record>> {
    if max_entry < 4 {
        return Err(CliError::Invalid(format!(
            "--max-entry must be at least 4, got {max_entry}"
        )));
    }
    let opts = ScanOptions {
        verify_witnesses: verify,
    };
    let report = scan_length(n, max_entry, opts, cache)?;
    let mut rows: Vec<Record> = report
        .failures
        .iter()
        .map(|f| Record::ScanRow {
            cusp: entries(&f.cusp),
            dual: entries(&f.dual),
            axes: f.axes.iter().map(|r| r.axis()).collect(),
        })
        .collect();
    rows.push(Record::ScanSummary {
        n: report.n,
        max_entry: report.max_entry,
        toric_models: report.toric_models,
        examined: report.examined,
        axes_decided: report.axes_decided,
        skipped_low_charge: report.skipped_low_charge,
        witnesses_replayed: report.witnesses_replayed,
        failures: report.failures.len(),
    });
    Ok(rows)
}
