//! Policies, the policy transformation, abducible selection, the publishing
//! search and its verification.

mod abducibles;
mod policy;
mod ptr;
mod publish;
mod verify;

use std::fmt;
use std::str::FromStr;

use crate::abduction::{normal_form, update_program_in_context, AbductiveProgram, NameMap, UpdateProgram};
use crate::edp::{Conjunction, Program, Symbol, Universe};
use crate::error::{Error, Result};
use crate::solver::SolverConfig;

pub use abducibles::{abducibles_deletion, dependency_abducibles, DependencyTrace};
pub use policy::{normalize_policy, Policy, PolicyElement};
pub use ptr::{ptr_cred, PtrProgram};
pub use publish::{is_skeptical_solution, publish, NoSolutionReason, PublishOutcome, PublishSolution, PublishStats};
pub use verify::{minimality_audit, verify, VerifyReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Only deletions from `K`.
    DeleteOnly,
    /// Deletions and insertions over the dependency abducibles.
    DeleteInsert,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::DeleteOnly => "delete-only",
            Mode::DeleteInsert => "delete-insert",
        })
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "delete-only" => Ok(Mode::DeleteOnly),
            "delete-insert" => Ok(Mode::DeleteInsert),
            _ => Err(format!("unknown mode `{s}` (expected delete-only or delete-insert)")),
        }
    }
}

/// The knowledge base, what the user already knows, and what must stay
/// secret.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Setup {
    pub k: Program,
    pub prior: Program,
    pub policy: Policy,
}

impl Setup {
    pub fn new(k: Program, prior: Program, policy: Policy) -> Self {
        Setup { k, prior, policy }
    }
}

#[derive(Clone, Debug)]
pub struct PublishConfig {
    pub solver: SolverConfig,
    /// Constants added to the universe beyond those of the inputs.
    pub extra_constants: Vec<Symbol>,
    /// Largest number of sub-change-sets a minimality audit may check.
    pub audit_cap: u64,
}

impl Default for PublishConfig {
    fn default() -> Self {
        PublishConfig {
            solver: SolverConfig::default(),
            extra_constants: Vec::new(),
            audit_cap: 1 << 12,
        }
    }
}

/// Constants of `K`, the prior knowledge and the policy, plus any extras.
pub fn pipeline_universe(setup: &Setup, extra: &[Symbol]) -> Result<Universe> {
    let mut u = Universe::of_all([&setup.k, &setup.prior]);
    u.extend(setup.policy.constants());
    u.extend(extra.iter().cloned());
    Ok(u)
}

/// Every intermediate artefact of the transformation, in order.
#[derive(Clone, Debug)]
pub struct Pipeline {
    pub universe: Universe,
    pub policy: Vec<Conjunction>,
    pub ptr: PtrProgram,
    pub abducibles: Program,
    pub dependency: Option<DependencyTrace>,
    /// `<K^n, A^n>`.
    pub normal: AbductiveProgram,
    pub names: NameMap,
    pub update: UpdateProgram,
    /// `UP ∪ prior ∪ PTR ∪ {:- not O+}`.
    pub program: Program,
}

pub fn build_pipeline(setup: &Setup, mode: Mode, config: &PublishConfig) -> Result<Pipeline> {
    if setup.policy.is_empty() {
        return Err(Error::EmptyPolicy);
    }
    let universe = pipeline_universe(setup, &config.extra_constants)?;
    let policy = normalize_policy(&setup.policy, &universe)?;
    let ptr = ptr_cred(&policy)?;
    let (abducibles, dependency) = match mode {
        Mode::DeleteOnly => (abducibles_deletion(&setup.k), None),
        Mode::DeleteInsert => {
            let trace = dependency_abducibles(&setup.k, &setup.prior, &ptr);
            (trace.abducibles.clone(), Some(trace))
        }
    };
    let (normal, names) = normal_form(&AbductiveProgram::new(setup.k.clone(), abducibles.clone()));
    let context = setup.prior.union(&ptr.rules);
    let update = update_program_in_context(&normal, &universe, &context)?;
    let mut program = update.rules.union(&context);
    program.insert(ptr.goal.clone());
    Ok(Pipeline {
        universe,
        policy,
        ptr,
        abducibles,
        dependency,
        normal,
        names,
        update,
        program,
    })
}

impl Pipeline {
    /// An update atom written as `+L` or `-R` over the user's own syntax.
    pub fn describe_update_atom(&self, atom: &crate::edp::Literal) -> Option<String> {
        let source = self.update.provenance.get(atom)?;
        let rule = self.names.decode(source);
        let sign = if crate::abduction::names::is_insert_atom(atom) { '+' } else { '-' };
        let text = rule.to_string();
        let text = text.trim_end_matches('.');
        Some(if rule.is_literal() {
            format!("{sign}{text}")
        } else {
            format!("{sign}[{text}]")
        })
    }
}
