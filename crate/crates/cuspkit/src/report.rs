//! Report records and their two renderings.
//!
//! Machine format: one JSON object per line, tagged by `"kind"`. A run prints
//! a `command` record first and a `meta` record last; everything between
//! depends only on the input. Only `meta` carries timing and cache details.
//!
//! Text format: the same records, one block per record, with table layouts
//! for toric models and scan rows.

use std::fmt::Write as _;

use cuspkit_core::pair::{Exhaustion, ToricWitness};
use cuspkit_core::Mat2Z;
use serde::{Deserialize, Serialize};

use crate::cache::Provenance;

pub const VERDICT_HOLDS: &str = "equivariant Looijenga pair exists (sufficient condition holds)";
pub const VERDICT_FAILS: &str =
    "no equivariant pair (sufficient condition fails; conjecturally not equivariantly smoothable)";
pub const NO_SYMMETRY: &str = "no symmetric structure";

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Machine,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub toric_cycle: Vec<i64>,
    pub axis: usize,
    pub alignment: Vec<usize>,
    pub corner_steps: Vec<String>,
    pub interior_steps: Vec<String>,
}

impl WitnessRecord {
    pub fn of(w: &ToricWitness) -> Self {
        WitnessRecord {
            toric_cycle: w.toric_cycle.cycle().entries().to_vec(),
            axis: w.toric_cycle.axis().axis(),
            alignment: w.alignment_map(),
            corner_steps: w.corner_schedule.iter().map(|s| s.to_string()).collect(),
            interior_steps: w.interior_schedule.iter().map(|s| s.to_string()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExhaustionRecord {
    pub toric_models: usize,
    pub alignments: usize,
    pub states: usize,
}

impl ExhaustionRecord {
    pub fn of(e: &Exhaustion) -> Self {
        ExhaustionRecord {
            toric_models: e.toric_models,
            alignments: e.alignments,
            states: e.states,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Meta {
    pub version: String,
    pub elapsed_ms: u64,
    pub cache: CacheRecord,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheRecord {
    pub dir: Option<String>,
    pub hits: Vec<usize>,
    pub stored: Vec<usize>,
    pub discarded: Vec<usize>,
    pub errors: Vec<String>,
}

impl From<Provenance> for CacheRecord {
    fn from(p: Provenance) -> Self {
        CacheRecord {
            dir: p.dir,
            hits: p.hits,
            stored: p.stored,
            discarded: p.discarded,
            errors: p.errors,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Record {
    Command {
        name: String,
        args: Vec<String>,
    },
    Validation {
        cycle: Vec<i64>,
        valid: bool,
        violations: Vec<String>,
        self_intersection: Option<i64>,
        multiplicity: Option<i64>,
    },
    Dual {
        cycle: Vec<i64>,
        dual: Vec<i64>,
        canonical_dual: Vec<i64>,
        self_intersection: i64,
    },
    Reflection {
        cycle: Vec<i64>,
        axis: usize,
        fixed: [usize; 2],
        /// set when the cycle is a cusp
        dual: Option<Vec<i64>>,
        dual_axis: Option<usize>,
        dual_fixed: Option<[usize; 2]>,
    },
    NoSymmetry {
        cycle: Vec<i64>,
        verdict: String,
    },
    Monodromy {
        cycle: Vec<i64>,
        start: usize,
        matrix: [[i128; 2]; 2],
        trace: i128,
        hyperbolic: bool,
        identity_mod2: bool,
        note: Option<String>,
    },
    Involution {
        cycle: Vec<i64>,
        axis: usize,
        start: usize,
        a: [[i128; 2]; 2],
        b: [[i128; 2]; 2],
        e_n: i64,
        u0_mod2: [u8; 2],
        u_half_mod2: [u8; 2],
        t_candidates: Vec<[u8; 2]>,
        a_identity_mod2: bool,
        b_squared_identity: bool,
        dihedral_relation: bool,
        candidates_odd: bool,
    },
    Quotient {
        cycle: Vec<i64>,
        axis: usize,
        chain: Vec<i64>,
        forks: Vec<[i64; 2]>,
        class_group: String,
        free_rank: usize,
        torsion: Vec<String>,
    },
    Pi1 {
        rays: Vec<[i128; 2]>,
        group: String,
        free_rank: usize,
        torsion: Vec<String>,
        empty_input: bool,
    },
    Verdict {
        cusp: Option<Vec<i64>>,
        axis: Option<usize>,
        dual: Vec<i64>,
        dual_axis: usize,
        holds: bool,
        verdict: String,
        semidefinite: bool,
        witness: Option<WitnessRecord>,
        exhaustion: Option<ExhaustionRecord>,
        oracle_agrees: Option<bool>,
    },
    Toric {
        n: usize,
        cycle: Vec<i64>,
        axis: usize,
    },
    ToricSummary {
        n: usize,
        count: usize,
    },
    ScanRow {
        cusp: Vec<i64>,
        dual: Vec<i64>,
        axes: Vec<usize>,
    },
    ScanSummary {
        n: usize,
        max_entry: i64,
        toric_models: usize,
        examined: usize,
        axes_decided: usize,
        skipped_low_charge: usize,
        witnesses_replayed: usize,
        failures: usize,
    },
    Meta(Meta),
}

pub fn mat(m: &Mat2Z) -> [[i128; 2]; 2] {
    m.0
}

fn cyc(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

fn m2(m: &[[i128; 2]; 2]) -> String {
    format!("[[{},{}],[{},{}]]", m[0][0], m[0][1], m[1][0], m[1][1])
}

fn v2(v: &[u8; 2]) -> String {
    format!("({},{})", v[0], v[1])
}

fn list<T: ToString>(v: &[T]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref()
        .map_or_else(|| "-".to_string(), |x| x.to_string())
}

fn steps(v: &[String]) -> String {
    if v.is_empty() {
        "-".to_string()
    } else {
        v.join(" ")
    }
}

const TABLE_WIDTH: usize = 28;

impl Record {
    pub fn to_machine(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        match self {
            Record::Command { args, .. } => {
                s.push_str("$ cuspkit");
                for a in args {
                    let _ = write!(s, " {a}");
                }
            }
            Record::Validation {
                cycle,
                valid,
                violations,
                self_intersection,
                multiplicity,
            } => {
                let status = if *valid {
                    "valid cusp cycle"
                } else {
                    "not a cusp cycle"
                };
                let _ = write!(s, "{}: {status}", cyc(cycle));
                for v in violations {
                    let _ = write!(s, "\n  {v}");
                }
                let _ = write!(
                    s,
                    "\n  -E^2 = {}, multiplicity = {}",
                    opt(self_intersection),
                    opt(multiplicity)
                );
            }
            Record::Dual {
                cycle,
                dual,
                canonical_dual,
                self_intersection,
            } => {
                let _ = write!(
                    s,
                    "cusp  {}\ndual  {}\ncanonical dual  {}\n-E^2 = {self_intersection}",
                    cyc(cycle),
                    cyc(dual),
                    cyc(canonical_dual)
                );
            }
            Record::Reflection {
                cycle,
                axis,
                fixed,
                dual,
                dual_axis,
                dual_fixed,
            } => {
                let _ = write!(
                    s,
                    "{} axis {axis} fixes components {} and {}",
                    cyc(cycle),
                    fixed[0],
                    fixed[1]
                );
                if let (Some(d), Some(da), Some(df)) = (dual, dual_axis, dual_fixed) {
                    let _ = write!(
                        s,
                        "\n  dual {} axis {da} fixes components {} and {}",
                        cyc(d),
                        df[0],
                        df[1]
                    );
                }
            }
            Record::NoSymmetry { cycle, verdict } => {
                let _ = write!(s, "{}: {verdict}", cyc(cycle));
            }
            Record::Monodromy {
                cycle,
                start,
                matrix,
                trace,
                hyperbolic,
                identity_mod2,
                note,
            } => {
                let _ = write!(
                    s,
                    "{} from {start}: A = {}, trace {trace}, hyperbolic {hyperbolic}, A = I mod 2 {identity_mod2}",
                    cyc(cycle),
                    m2(matrix)
                );
                if let Some(n) = note {
                    let _ = write!(s, "\n  {n}");
                }
            }
            Record::Involution {
                cycle,
                axis,
                start,
                a,
                b,
                e_n,
                u0_mod2,
                u_half_mod2,
                t_candidates,
                a_identity_mod2,
                b_squared_identity,
                dihedral_relation,
                candidates_odd,
            } => {
                let ts: Vec<String> = t_candidates.iter().map(v2).collect();
                let _ = write!(
                    s,
                    "{} axis {axis}, reading from {start}\n  A = {}\n  B = {}\n  e_n = {e_n}\n  u0 = {} mod 2, u_half = {} mod 2\n  t candidates (v0,v1 mod 2): {}\n  A = I mod 2: {a_identity_mod2}\n  B^2 = I: {b_squared_identity}\n  B A = A^-1 B: {dihedral_relation}\n  candidates odd over (v0,u0): {candidates_odd}",
                    cyc(cycle),
                    m2(a),
                    m2(b),
                    v2(u0_mod2),
                    v2(u_half_mod2),
                    ts.join(" ")
                );
            }
            Record::Quotient {
                cycle,
                axis,
                chain,
                forks,
                class_group,
                free_rank,
                torsion,
            } => {
                let fs: Vec<String> = forks.iter().map(|[w, at]| format!("{w}@{at}")).collect();
                let _ = write!(
                    s,
                    "{} axis {axis}\n  chain {}\n  forks {}\n  class group {class_group} (free rank {free_rank}, torsion {})",
                    cyc(cycle),
                    cyc(chain),
                    fs.join(" "),
                    list(torsion)
                );
            }
            Record::Pi1 {
                rays,
                group,
                free_rank,
                torsion,
                empty_input,
            } => {
                let rs: Vec<String> = rays.iter().map(|[x, y]| format!("({x},{y})")).collect();
                let _ = write!(
                    s,
                    "rays {}\npi1 = {group} (free rank {free_rank}, torsion {})",
                    rs.join(" "),
                    list(torsion)
                );
                if *empty_input {
                    s.push_str("\n  no rays given");
                }
            }
            Record::Verdict {
                cusp,
                axis,
                dual,
                dual_axis,
                holds,
                verdict,
                semidefinite,
                witness,
                exhaustion,
                oracle_agrees,
            } => {
                if let Some(c) = cusp {
                    let _ = write!(s, "cusp {} axis {}\n  ", cyc(c), opt(axis));
                }
                let _ = write!(s, "dual {} axis {dual_axis}: {verdict}", cyc(dual));
                let _ = write!(s, "\n  holds {holds}, semidefinite {semidefinite}");
                if let Some(w) = witness {
                    let _ = write!(
                        s,
                        "\n  toric model {} axis {}\n  alignment {}\n  corner steps {}\n  interior steps {}",
                        cyc(&w.toric_cycle),
                        w.axis,
                        list(&w.alignment),
                        steps(&w.corner_steps),
                        steps(&w.interior_steps)
                    );
                }
                if let Some(e) = exhaustion {
                    let _ = write!(
                        s,
                        "\n  exhausted {} toric models, {} alignments, {} states",
                        e.toric_models, e.alignments, e.states
                    );
                }
                if let Some(o) = oracle_agrees {
                    let _ = write!(s, "\n  brute-force search agrees: {o}");
                }
            }
            Record::Toric { n, cycle, axis } => {
                let _ = write!(
                    s,
                    "{n:>3}  {:<w$}  axis {axis}",
                    cyc(cycle),
                    w = TABLE_WIDTH
                );
            }
            Record::ToricSummary { n, count } => {
                let _ = write!(s, "{count} equivariant toric models of length {n}");
            }
            Record::ScanRow { cusp, dual, axes } => {
                let _ = write!(
                    s,
                    "{:<w$}  {:<w$}  axes {}",
                    cyc(cusp),
                    cyc(dual),
                    list(axes),
                    w = TABLE_WIDTH
                );
            }
            Record::ScanSummary {
                n,
                max_entry,
                toric_models,
                examined,
                axes_decided,
                skipped_low_charge,
                witnesses_replayed,
                failures,
            } => {
                let _ = write!(
                    s,
                    "length {n}, entries <= {max_entry}: {failures} failing cycles\n  {toric_models} toric models, {examined} cycles, {axes_decided} axes decided, {witnesses_replayed} witnesses replayed, {skipped_low_charge} skipped with charge < 3"
                );
            }
            Record::Meta(m) => {
                let c = &m.cache;
                let _ = write!(
                    s,
                    "# cuspkit {} in {} ms; cache {} hits {} stored {} discarded {}",
                    m.version,
                    m.elapsed_ms,
                    c.dir.as_deref().unwrap_or("off"),
                    list(&c.hits),
                    list(&c.stored),
                    list(&c.discarded)
                );
                for e in &c.errors {
                    let _ = write!(s, "\n# cache write failed: {e}");
                }
            }
        }
        s
    }
}

/// Header line printed in text mode before the first scan row or toric model.
pub fn table_header(first: &Record) -> Option<String> {
    match first {
        Record::ScanRow { .. } => Some(format!("{:<w$}  {:<w$}", "cusp", "dual", w = TABLE_WIDTH)),
        Record::Toric { .. } => Some(format!("{:>3}  {:<w$}", "n", "cycle", w = TABLE_WIDTH)),
        _ => None,
    }
}

pub fn render(records: &[Record], format: Format) -> String {
    let mut out = String::new();
    let mut prev_kind = None;
    for r in records {
        let kind = std::mem::discriminant(r);
        match format {
            Format::Machine => out.push_str(&r.to_machine()),
            Format::Text => {
                if prev_kind != Some(kind) {
                    if let Some(h) = table_header(r) {
                        out.push_str(h.trim_end());
                        out.push('\n');
                    }
                }
                out.push_str(&r.to_text());
            }
        }
        out.push('\n');
        prev_kind = Some(kind);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn machine_records_parse_back() {
        let recs = vec![
            Record::Toric {
                n: 4,
                cycle: vec![0, 0, 0, 0],
                axis: 2,
            },
            Record::ScanRow {
                cusp: vec![3, 10, 3, 4],
                dual: vec![2, 2, 2, 3, 3, 2, 3, 3, 2, 2, 2, 2],
                axes: vec![0],
            },
            Record::Meta(Meta {
                version: "0.1.0".into(),
                elapsed_ms: 3,
                cache: CacheRecord::default(),
            }),
        ];
        for r in recs {
            let back: Record = serde_json::from_str(&r.to_machine()).unwrap();
            assert_eq!(back, r);
        }
    }

    #[test]
    fn text_cycles_parse_back() {
        let r = Record::Toric {
            n: 6,
            cycle: vec![2, 1, 1, 0, 1, 1],
            axis: 0,
        };
        let text = r.to_text();
        let field = text.split_whitespace().nth(1).unwrap();
        let c: cuspkit_core::CycleWord = field.parse().unwrap();
        assert_eq!(c.entries(), &[2, 1, 1, 0, 1, 1]);
    }
}
