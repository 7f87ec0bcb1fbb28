//! JSON reports. Every report carries `schema_version`; see
//! `docs/json-schema.md` for the field reference.

use serde::Serialize;

use aspconf_core::confidentiality::{Mode, NoSolutionReason, Pipeline, PublishSolution, VerifyReport};
use aspconf_core::edp::Program;
use aspconf_core::parser::serialize_internal;

pub const SCHEMA_VERSION: &str = "1";

fn rules(p: &Program) -> Vec<String> {
    p.rules().map(|r| r.to_string().trim_end_matches('.').to_string()).collect()
}

#[derive(Serialize)]
pub struct SolveReport {
    pub schema_version: &'static str,
    pub command: &'static str,
    pub answer_sets: Vec<Vec<String>>,
}

impl SolveReport {
    pub fn new(answer_sets: Vec<Vec<String>>) -> Self {
        SolveReport {
            schema_version: SCHEMA_VERSION,
            command: "solve",
            answer_sets,
        }
    }
}

#[derive(Serialize)]
pub struct QueryReport {
    pub schema_version: &'static str,
    pub command: &'static str,
    pub query: String,
    pub responses: Vec<String>,
}

impl QueryReport {
    pub fn new(query: String, responses: Vec<String>) -> Self {
        QueryReport {
            schema_version: SCHEMA_VERSION,
            command: "query",
            query,
            responses,
        }
    }
}

#[derive(Serialize)]
pub struct DependencyReport {
    pub levels: Vec<Vec<String>>,
    pub closure: Vec<String>,
}

#[derive(Serialize)]
pub struct TransformReport {
    pub schema_version: &'static str,
    pub command: &'static str,
    pub mode: String,
    pub universe: Vec<String>,
    pub policy: Vec<String>,
    pub ptr: String,
    pub dependency: Option<DependencyReport>,
    pub abducibles: String,
    pub normal_kb: String,
    pub normal_abducibles: String,
    pub update_program: String,
    pub update_atoms: Vec<String>,
}

impl TransformReport {
    pub fn new(mode: Mode, pl: &Pipeline) -> Self {
        let lits = |v: &[aspconf_core::edp::Literal]| v.iter().map(|l| l.to_string()).collect::<Vec<_>>();
        TransformReport {
            schema_version: SCHEMA_VERSION,
            command: "transform",
            mode: mode.to_string(),
            universe: pl.universe.constants().map(|c| c.to_string()).collect(),
            policy: pl.policy.iter().map(|c| c.to_string()).collect(),
            ptr: serialize_internal(&pl.ptr.rules),
            dependency: pl.dependency.as_ref().map(|d| DependencyReport {
                levels: d.levels.iter().map(|l| lits(l)).collect(),
                closure: lits(&d.closure),
            }),
            abducibles: serialize_internal(&pl.abducibles),
            normal_kb: serialize_internal(&pl.normal.k),
            normal_abducibles: serialize_internal(&pl.normal.a),
            update_program: serialize_internal(&pl.update.rules),
            update_atoms: pl.update.update_atoms().iter().map(|a| a.to_string()).collect(),
        }
    }
}

#[derive(Serialize)]
pub struct ElementReport {
    pub element: String,
    pub leaks: Vec<String>,
}

#[derive(Serialize)]
pub struct Verification {
    pub passed: bool,
    pub consistent: bool,
    pub elements: Vec<ElementReport>,
}

impl Verification {
    pub fn new(r: &VerifyReport) -> Self {
        Verification {
            passed: r.passed(),
            consistent: r.consistent,
            elements: r
                .responses
                .iter()
                .map(|(c, leaks)| ElementReport {
                    element: c.to_string(),
                    leaks: leaks.iter().map(|l| l.to_string()).collect(),
                })
                .collect(),
        }
    }
}

#[derive(Serialize)]
pub struct SolutionReport {
    pub deletions: Vec<String>,
    pub insertions: Vec<String>,
    pub k_pub: String,
    pub verified: bool,
    pub verification: Verification,
    /// The changes read off the answer set, written `-R` or `+L`.
    pub update_atoms: Vec<String>,
}

impl SolutionReport {
    pub fn new(s: &PublishSolution, k_pub: String, report: &VerifyReport, update_atoms: Vec<String>) -> Self {
        SolutionReport {
            deletions: rules(&s.display.f),
            insertions: rules(&s.display.e),
            k_pub,
            verified: report.passed(),
            verification: Verification::new(report),
            update_atoms,
        }
    }
}

#[derive(Serialize)]
pub struct PublishReport {
    pub schema_version: &'static str,
    pub command: &'static str,
    pub mode: String,
    pub solution_count: usize,
    pub solutions: Vec<SolutionReport>,
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub transforms: Option<TransformReport>,
}

impl PublishReport {
    pub fn new(
        mode: Mode,
        solution_count: usize,
        solutions: Vec<SolutionReport>,
        reason: Option<NoSolutionReason>,
        transforms: Option<TransformReport>,
    ) -> Self {
        PublishReport {
            schema_version: SCHEMA_VERSION,
            command: "publish",
            mode: mode.to_string(),
            solution_count,
            solutions,
            reason: reason.map(|r| r.as_str().to_string()),
            transforms,
        }
    }
}

#[derive(Serialize)]
pub struct CheckReport {
    pub schema_version: &'static str,
    pub command: &'static str,
    pub passed: bool,
    pub consistent: bool,
    pub elements: Vec<ElementReport>,
}

impl CheckReport {
    pub fn new(r: &VerifyReport) -> Self {
        let v = Verification::new(r);
        CheckReport {
            schema_version: SCHEMA_VERSION,
            command: "check",
            passed: v.passed,
            consistent: v.consistent,
            elements: v.elements,
        }
    }
}
