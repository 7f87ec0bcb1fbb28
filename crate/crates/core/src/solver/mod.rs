//! Answer sets of extended disjunctive programs.

mod brute;
pub(crate) mod ground_program;
pub(crate) mod minimal;
pub(crate) mod search;

use std::collections::BTreeSet;
use std::fmt;

use crate::edp::{substitutions, Conjunction, Interpretation, Literal, Program, Rule, Universe};
use crate::error::{Error, Result};

use ground_program::GroundProgram;
use minimal::naf_free_part_has_consistent_model;
use search::{Extra, Flow, Search};

/// A conjunctive query; its free variables are answered over the universe.
pub type Query = Conjunction;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolverConfig {
    pub max_ground_rules: u64,
    pub max_ground_literals: u64,
    pub max_branches: u64,
    /// Largest literal set the brute-force oracle accepts.
    pub oracle_cap: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            max_ground_rules: 5_000,
            max_ground_literals: 2_000,
            max_branches: 1_000_000,
            oracle_cap: 16,
        }
    }
}

/// The answer sets of a program in canonical order. Holds the contradictory
/// set alone when that is the only answer set.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AnswerSets {
    sets: Vec<Interpretation>,
}

impl AnswerSets {
    pub fn new(sets: impl IntoIterator<Item = Interpretation>) -> Self {
        let mut sets: Vec<_> = sets.into_iter().collect();
        sets.sort();
        sets.dedup();
        AnswerSets { sets }
    }

    pub fn iter(&self) -> impl Iterator<Item = &Interpretation> {
        self.sets.iter()
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Some answer set is not the contradictory set.
    pub fn is_consistent(&self) -> bool {
        self.sets.iter().any(|s| !s.is_contradictory())
    }

    pub fn consistent(&self) -> impl Iterator<Item = &Interpretation> {
        self.sets.iter().filter(|s| !s.is_contradictory())
    }

    pub fn as_slice(&self) -> &[Interpretation] {
        &self.sets
    }
}

impl IntoIterator for AnswerSets {
    type Item = Interpretation;
    type IntoIter = std::vec::IntoIter<Interpretation>;
    fn into_iter(self) -> Self::IntoIter {
        self.sets.into_iter()
    }
}

impl fmt::Display for AnswerSets {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.sets {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default)]
pub struct Solver {
    pub config: SolverConfig,
}

impl Solver {
    pub fn new(config: SolverConfig) -> Self {
        Solver { config }
    }

    pub(crate) fn prepare(&self, p: &Program, universe: &Universe) -> Result<GroundProgram> {
        GroundProgram::build(p, universe, &self.config)
    }

    pub(crate) fn interpretation(gp: &GroundProgram, s: &[bool]) -> Interpretation {
        Interpretation::new(
            s.iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .map(|(i, _)| gp.atoms[i].clone()),
        )
    }

    pub fn answer_sets(&self, p: &Program) -> Result<AnswerSets> {
        self.answer_sets_in(p, &Universe::of(p))
    }

    pub fn answer_sets_in(&self, p: &Program, universe: &Universe) -> Result<AnswerSets> {
        let gp = self.prepare(p, universe)?;
        let extra = Extra::default();
        let mut search = Search::new(&gp, &extra, &[], self.config.max_branches);
        let mut found = Vec::new();
        search.run(&mut |s| {
            found.push(Self::interpretation(&gp, s));
            Flow::Continue
        })?;
        log::debug!("answer sets: {} found, {} branches", found.len(), search.branches());
        if found.is_empty() && !gp.naf_free_constraint && !naf_free_part_has_consistent_model(&gp) {
            found.push(Interpretation::contradictory());
        }
        Ok(AnswerSets::new(found))
    }

    pub fn brute_force_answer_sets_in(&self, p: &Program, universe: &Universe) -> Result<AnswerSets> {
        brute::brute_force_answer_sets(p, universe, &self.config)
    }

    pub fn is_consistent_in(&self, p: &Program, universe: &Universe) -> Result<bool> {
        let gp = self.prepare(p, universe)?;
        let extra = Extra::default();
        let mut search = Search::new(&gp, &extra, &[], self.config.max_branches);
        search.run(&mut |_| Flow::Stop)
    }

    /// Some consistent answer set, if there is one.
    pub fn first_answer_set_in(&self, p: &Program, universe: &Universe) -> Result<Option<Interpretation>> {
        let gp = self.prepare(p, universe)?;
        let extra = Extra::default();
        let mut search = Search::new(&gp, &extra, &[], self.config.max_branches);
        let mut found = None;
        search.run(&mut |s| {
            found = Some(Self::interpretation(&gp, s));
            Flow::Stop
        })?;
        Ok(found)
    }

    /// `p ⊨ r`: every answer set satisfies the ground rule `r`.
    pub fn entails_in(&self, p: &Program, r: &Rule, universe: &Universe) -> Result<bool> {
        if !r.is_ground() {
            return Err(Error::NonGroundRule(r.to_string()));
        }
        for s in self.answer_sets_in(p, universe)?.iter() {
            if !s.satisfies(r)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Credulous responses: the ground instances of `q` over `universe` that
    /// some answer set satisfies.
    pub fn cred_in(&self, p: &Program, q: &Query, universe: &Universe) -> Result<BTreeSet<Conjunction>> {
        let sets = self.answer_sets_in(p, universe)?;
        if !sets.is_consistent() {
            return Err(Error::InconsistentProgram);
        }
        cred_over(&sets, q, universe)
    }
}

/// Instances of `q` over `universe` satisfied by some consistent answer set.
pub(crate) fn cred_over(sets: &AnswerSets, q: &Query, universe: &Universe) -> Result<BTreeSet<Conjunction>> {
    let vars = q.free_vars();
    let instances: Vec<Conjunction> = if vars.is_empty() {
        vec![q.clone()]
    } else if universe.is_empty() {
        return Err(Error::EmptyUniverse);
    } else {
        substitutions(&vars, universe).map(|s| q.apply(&s)).collect()
    };
    Ok(instances
        .into_iter()
        .filter(|inst| sets.consistent().any(|s| s.satisfies_body(inst.elems())))
        .collect())
}

/// `|L_p|`: the number of ground literals over the predicates of `p`.
pub fn language_size(p: &Program, universe: &Universe) -> usize {
    brute::all_literals(p, universe).len()
}

pub fn answer_sets(p: &Program) -> Result<AnswerSets> {
    Solver::default().answer_sets(p)
}

pub fn brute_force_answer_sets(p: &Program) -> Result<AnswerSets> {
    Solver::default().brute_force_answer_sets_in(p, &Universe::of(p))
}

pub fn is_consistent(p: &Program) -> Result<bool> {
    Solver::default().is_consistent_in(p, &Universe::of(p))
}

pub fn entails(p: &Program, r: &Rule) -> Result<bool> {
    Solver::default().entails_in(p, r, &Universe::of(p))
}

pub fn entails_literal(p: &Program, l: &Literal) -> Result<bool> {
    entails(p, &Rule::fact(l.clone()))
}

pub fn cred(p: &Program, q: &Query) -> Result<BTreeSet<Conjunction>> {
    Solver::default().cred_in(p, q, &Universe::of(p))
}
