//! Random programs and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};
use std::path::PathBuf;

use rand::rngs::StdRng;
use rand::Rng;

use aspconf_core::abduction::ChangeSet;
use aspconf_core::confidentiality::{build_pipeline, Mode, Policy, PublishConfig, Setup};
use aspconf_core::edp::{
    ground, ground_literal, ground_rule, substitutions, Atom, BodyElem, Conjunction, Literal, Program, Rule,
    Term, Universe,
};
use aspconf_core::solver::{Solver, SolverConfig};
use aspconf_core::Result;

pub fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

/// Every `.lp` fixture as `(name, text)`.
pub fn program_fixtures() -> Vec<(String, String)> {
    let mut out = Vec::new();
    for dir in std::fs::read_dir(fixtures_dir()).unwrap() {
        let dir = dir.unwrap().path();
        if !dir.is_dir() {
            continue;
        }
        for f in std::fs::read_dir(&dir).unwrap() {
            let f = f.unwrap().path();
            if f.extension().is_some_and(|e| e == "lp") {
                out.push((f.display().to_string(), std::fs::read_to_string(&f).unwrap()));
            }
        }
    }
    out.sort();
    out
}

#[derive(Clone, Copy, Debug)]
pub struct Shape {
    pub predicates: usize,
    pub constants: usize,
    pub rules: usize,
    pub max_arity: usize,
}

pub const SOLVER_SHAPE: Shape = Shape {
    predicates: 5,
    constants: 3,
    rules: 6,
    max_arity: 2,
};

pub const PUBLISH_SHAPE: Shape = Shape {
    predicates: 3,
    constants: 2,
    rules: 5,
    max_arity: 1,
};

const PREDICATES: [&str; 5] = ["p", "q", "r", "s", "t"];
const CONSTANTS: [&str; 3] = ["a", "b", "c"];
const VARIABLES: [&str; 2] = ["X", "Y"];

pub struct Gen<'r> {
    pub rng: &'r mut StdRng,
    shape: Shape,
    arities: Vec<usize>,
}

impl<'r> Gen<'r> {
    pub fn new(rng: &'r mut StdRng, shape: Shape) -> Self {
        let n = rng.gen_range(1..=shape.predicates);
        let arities = (0..n).map(|_| rng.gen_range(0..=shape.max_arity)).collect();
        Gen { rng, shape, arities }
    }

    fn term(&mut self, vars: bool) -> Term {
        if vars && self.rng.gen_bool(0.4) {
            Term::var(VARIABLES[self.rng.gen_range(0..VARIABLES.len())])
        } else {
            Term::constant(CONSTANTS[self.rng.gen_range(0..self.shape.constants)])
        }
    }

    pub fn literal(&mut self, vars: bool) -> Literal {
        let i = self.rng.gen_range(0..self.arities.len());
        let args = (0..self.arities[i]).map(|_| self.term(vars)).collect();
        let atom = Atom::new(PREDICATES[i], args);
        if self.rng.gen_bool(0.2) {
            Literal::neg(atom)
        } else {
            Literal::pos(atom)
        }
    }

    pub fn rule(&mut self, vars: bool) -> Rule {
        let heads = match self.rng.gen_range(0..10) {
            0 => 0,
            1..=6 => 1,
            _ => 2,
        };
        let head: Vec<Literal> = (0..heads).map(|_| self.literal(vars)).collect();
        let n = self.rng.gen_range(usize::from(heads == 0)..=3);
        let body: Vec<BodyElem> = (0..n)
            .map(|_| {
                let l = self.literal(vars);
                if self.rng.gen_bool(0.4) {
                    BodyElem::naf(l)
                } else {
                    BodyElem::pos(l)
                }
            })
            .collect();
        Rule::new(head, body)
    }

    pub fn fact(&mut self) -> Rule {
        Rule::fact(self.literal(false))
    }

    pub fn program(&mut self, vars: bool) -> Program {
        let n = self.rng.gen_range(1..=self.shape.rules);
        let mut p = Program::new();
        for _ in 0..n {
            let r = if self.rng.gen_bool(0.4) { self.fact() } else { self.rule(vars) };
            p.insert(r);
        }
        p
    }

    pub fn conjunction(&mut self) -> Conjunction {
        let n = self.rng.gen_range(1..=2);
        Conjunction::new((0..n).map(|i| {
            let l = self.literal(true);
            if i > 0 && self.rng.gen_bool(0.2) {
                BodyElem::naf(l)
            } else {
                BodyElem::pos(l)
            }
        }))
    }

    pub fn policy(&mut self) -> Policy {
        let n = self.rng.gen_range(1..=2);
        Policy::from_conjunctions((0..n).map(|_| self.conjunction()))
    }

    /// A policy literal taken from a head of `k`, its constants sometimes
    /// replaced by a variable, so that the policy usually leaks.
    fn leaky_literal(&mut self, k: &Program) -> Literal {
        let heads: Vec<&Literal> = k.rules().flat_map(|r| r.head()).collect();
        if heads.is_empty() || self.rng.gen_bool(0.2) {
            return self.literal(true);
        }
        let mut l = heads[self.rng.gen_range(0..heads.len())].clone();
        for t in l.atom.args.iter_mut() {
            if self.rng.gen_bool(0.5) {
                *t = Term::var("X");
            }
        }
        l
    }

    fn leaky_policy(&mut self, k: &Program) -> Policy {
        let n = self.rng.gen_range(1..=2);
        let mut cs = Vec::new();
        for _ in 0..n {
            let mut elems = vec![BodyElem::pos(self.leaky_literal(k))];
            if self.rng.gen_bool(0.25) {
                let l = self.literal(true);
                elems.push(if self.rng.gen_bool(0.3) { BodyElem::naf(l) } else { BodyElem::pos(l) });
            }
            cs.push(Conjunction::new(elems));
        }
        Policy::from_conjunctions(cs)
    }

    /// A publishing instance: `K`, often empty prior knowledge, and a policy
    /// that usually leaks in `K`.
    pub fn setup(&mut self) -> Setup {
        let k = self.program(true);
        let prior = if self.rng.gen_bool(0.5) {
            Program::new()
        } else {
            let mut p = Program::new();
            p.insert(self.rule(true));
            p
        };
        let policy = self.leaky_policy(&k);
        Setup::new(k, prior, policy)
    }
}

/// `cred` by scanning the brute-force answer sets.
pub fn oracle_leaks(sets: &[aspconf_core::edp::Interpretation], policy: &[Conjunction], u: &Universe) -> usize {
    let mut leaks = 0;
    for c in policy {
        let vars = c.free_vars();
        for s in substitutions(&vars, u) {
            let g = c.apply(&s);
            if sets.iter().any(|a| a.satisfies_body(g.elems())) {
                leaks += 1;
            }
        }
    }
    leaks
}

/// Confidentiality of `k_pub` checked with the brute-force solver only.
pub fn oracle_preserves(k_pub: &Program, prior: &Program, policy: &[Conjunction], u: &Universe) -> Result<bool> {
    let solver = Solver::new(SolverConfig::default());
    let sets = solver.brute_force_answer_sets_in(&k_pub.union(prior), u)?;
    let consistent: Vec<_> = sets.consistent().cloned().collect();
    if consistent.is_empty() {
        return Ok(false);
    }
    Ok(oracle_leaks(&consistent, policy, u) == 0)
}

/// The ground changes the abducibles of `mode` allow.
pub fn change_elements(setup: &Setup, abducibles: &Program, u: &Universe) -> Result<Vec<(bool, Rule)>> {
    let k_ground: HashSet<Rule> = ground(&setup.k, u)?.into_iter().collect();
    let mut out = BTreeSet::new();
    for a in abducibles {
        match a.as_literal() {
            Some(l) => {
                for g in ground_literal(l, u)? {
                    let fact = Rule::fact(g);
                    let insert = !k_ground.contains(&fact);
                    out.insert((insert, fact));
                }
            }
            None => {
                for g in ground_rule(a, u)? {
                    out.insert((false, g));
                }
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// All subset-minimal change sets after which `K ∪ prior` preserves
/// confidentiality, by enumerating subsets of the allowed changes.
/// `None` when there are more than `cap` changes.
pub fn brute_force_publish(setup: &Setup, mode: Mode, cap: usize) -> Result<Option<BTreeSet<ChangeSet>>> {
    let pl = build_pipeline(setup, mode, &PublishConfig::default())?;
    let u = &pl.universe;
    let elements = change_elements(setup, &pl.abducibles, u)?;
    if elements.len() > cap {
        return Ok(None);
    }
    let k_ground = ground(&setup.k, u)?;
    let prior = ground(&setup.prior, u)?;
    let n = elements.len();
    let mut masks: Vec<u32> = (0..1u32 << n).collect();
    masks.sort_by_key(|m| m.count_ones());
    let mut found: Vec<u32> = Vec::new();
    for m in masks {
        if found.iter().any(|f| f & m == *f) {
            continue;
        }
        let mut k_pub = k_ground.clone();
        for (i, (insert, r)) in elements.iter().enumerate() {
            if m >> i & 1 == 1 {
                if *insert {
                    k_pub.insert(r.clone());
                } else {
                    k_pub.remove(r);
                }
            }
        }
        if oracle_preserves(&k_pub, &prior, &pl.policy, u)? {
            found.push(m);
        }
    }
    Ok(Some(
        found
            .into_iter()
            .map(|m| {
                let mut cs = ChangeSet::default();
                for (i, (insert, r)) in elements.iter().enumerate() {
                    if m >> i & 1 == 1 {
                        if *insert {
                            cs.e.insert(r.clone());
                        } else {
                            cs.f.insert(r.clone());
                        }
                    }
                }
                cs
            })
            .collect(),
    ))
}
