//! Extended abduction: abductive programs, the normal form that names
//! abducible rules, update programs and change sets.

pub mod names;
mod update;

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use crate::edp::{
    ground, ground_rule, matches, variants_equal, BodyElem, Interpretation, Literal, Program, Rule,
    Substitution, Symbol, Universe,
};
use crate::error::{Error, Result};
use crate::solver::AnswerSets;

pub use update::{update_program, update_program_in_context, UpdateProgram};

/// `<K, A>`: a program together with the rules and literals that may be
/// inserted into it (when outside `K`) or deleted from it (when inside).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AbductiveProgram {
    pub k: Program,
    pub a: Program,
}

impl AbductiveProgram {
    pub fn new(k: Program, a: Program) -> Self {
        AbductiveProgram { k, a }
    }

    /// Abducibles that are not literals.
    pub fn abducible_rules(&self) -> impl Iterator<Item = &Rule> {
        self.a.rules().filter(|r| !r.is_literal())
    }
}

#[derive(Clone, Debug)]
struct NameEntry {
    rule: Rule,
    name: Literal,
    vars: Vec<Symbol>,
}

/// The association between abducible rules and their naming atoms.
#[derive(Clone, Debug, Default)]
pub struct NameMap {
    entries: Vec<NameEntry>,
}

impl NameMap {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Rule, &Literal)> {
        self.entries.iter().map(|e| (&e.rule, &e.name))
    }

    /// The naming atom of `rule`, compared modulo variable renaming.
    pub fn name_of(&self, rule: &Rule) -> Option<&Literal> {
        self.entries
            .iter()
            .find(|e| variants_equal(&e.rule, rule))
            .map(|e| &e.name)
    }

    /// The rule (instance) named by `name`, or `None` when `name` is not a
    /// naming atom.
    pub fn rule_of(&self, name: &Literal) -> Option<Rule> {
        let e = self
            .entries
            .iter()
            .find(|e| e.name.predicate() == name.predicate())?;
        let s: Substitution = e
            .vars
            .iter()
            .cloned()
            .zip(name.atom.args.iter().cloned())
            .collect();
        Some(e.rule.apply(&s))
    }

    /// The rule a (ground) abducible of the normal form stands for.
    pub fn decode(&self, lit: &Literal) -> Rule {
        self.rule_of(lit).unwrap_or_else(|| Rule::fact(lit.clone()))
    }
}

fn contains_variant(p: &Program, r: &Rule) -> bool {
    p.contains(r) || p.rules().any(|q| variants_equal(q, r))
}

/// Replaces abducible rules by naming atoms so that only literals remain
/// abducible: each such rule `R` gets its name `n(R)` added to its body, and
/// `n(R)` becomes a fact when `R` is in `K`.
pub fn normal_form(ap: &AbductiveProgram) -> (AbductiveProgram, NameMap) {
    let mut names = NameMap::default();
    for (i, rule) in ap.abducible_rules().enumerate() {
        let vars: Vec<Symbol> = rule.free_vars().into_iter().collect();
        names.entries.push(NameEntry {
            rule: rule.clone(),
            name: names::rule_name(i + 1, &vars),
            vars,
        });
    }
    let mut k = Program::new();
    for r in &ap.k {
        if names.name_of(r).is_none() {
            k.insert(r.clone());
        }
    }
    let mut a = Program::new();
    for r in &ap.a {
        if r.is_literal() {
            a.insert(r.clone());
        }
    }
    for e in &names.entries {
        k.insert(e.rule.with_body_elem(BodyElem::pos(e.name.clone())));
        if contains_variant(&ap.k, &e.rule) {
            k.insert(Rule::fact(e.name.clone()));
        }
        a.insert(Rule::fact(e.name.clone()));
    }
    (AbductiveProgram { k, a }, names)
}

/// Insertions `E` and deletions `F`, as ground rules.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChangeSet {
    pub e: Program,
    pub f: Program,
}

impl ChangeSet {
    pub fn new(e: Program, f: Program) -> Self {
        ChangeSet { e, f }
    }

    pub fn is_empty(&self) -> bool {
        self.e.is_empty() && self.f.is_empty()
    }

    pub fn len(&self) -> usize {
        self.e.len() + self.f.len()
    }

    /// Both sides contained in the respective sides of `other`.
    pub fn is_subset(&self, other: &ChangeSet) -> bool {
        self.e.rules().all(|r| other.e.contains(r)) && self.f.rules().all(|r| other.f.contains(r))
    }
}

impl fmt::Display for ChangeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |p: &Program| {
            p.rules()
                .map(|r| r.to_string().trim_end_matches('.').to_string())
                .collect::<Vec<_>>()
                .join(", ")
        };
        write!(f, "E = {{{}}}, F = {{{}}}", show(&self.e), show(&self.f))
    }
}

/// Reads `(E, F)` off the update atoms of an answer set.
pub fn extract_changeset(s: &Interpretation, up: &UpdateProgram, nm: &NameMap) -> Result<ChangeSet> {
    if s.is_contradictory() {
        return Err(Error::InconsistentProgram);
    }
    let mut cs = ChangeSet::default();
    for lit in s.literals().iter().filter(|l| names::is_update_atom(l)) {
        let source = up
            .provenance
            .get(lit)
            .ok_or_else(|| Error::UnknownUpdateAtom(lit.to_string()))?;
        let rule = nm.decode(source);
        if names::is_insert_atom(lit) {
            cs.e.insert(rule);
        } else {
            cs.f.insert(rule);
        }
    }
    Ok(cs)
}

/// `(K \ F) ∪ E` on ground instances. Rules of `K` that lose no instance
/// are kept as written; the others are replaced by their surviving instances.
pub fn apply_changeset(k: &Program, cs: &ChangeSet, universe: &Universe) -> Result<Program> {
    let deleted: HashSet<Rule> = ground(&cs.f, universe)?.into_iter().collect();
    let mut out = Program::new();
    for r in k {
        if deleted.is_empty() {
            out.insert(r.clone());
            continue;
        }
        let instances = ground_rule(r, universe)?;
        if instances.iter().any(|i| deleted.contains(i)) {
            out.extend(instances.into_iter().filter(|i| !deleted.contains(i)));
        } else {
            out.insert(r.clone());
        }
    }
    out.extend(cs.e.rules().cloned());
    Ok(out)
}

/// Answer sets whose update atoms are not a strict superset of another's.
pub fn u_minimal(results: &AnswerSets, ua: &BTreeSet<Literal>) -> AnswerSets {
    let proj = |s: &Interpretation| -> BTreeSet<Literal> {
        if s.is_contradictory() {
            ua.clone()
        } else {
            s.literals().intersection(ua).cloned().collect()
        }
    };
    let projections: Vec<BTreeSet<Literal>> = results.iter().map(proj).collect();
    AnswerSets::new(
        results
            .iter()
            .zip(&projections)
            .filter(|(_, p)| {
                !projections
                    .iter()
                    .any(|q| q.len() < p.len() && q.is_subset(p))
            })
            .map(|(s, _)| s.clone()),
    )
}

/// All instances of rules in `p` over `universe`, compressed back to the
/// rules of `reference` whose instances are all present.
pub fn compress(p: &Program, reference: &Program, universe: &Universe) -> Result<Program> {
    let mut remaining: BTreeSet<Rule> = p.rules().cloned().collect();
    let mut out = Program::new();
    for r in reference.rules().filter(|r| !r.is_ground()) {
        let instances = ground_rule(r, universe)?;
        if !instances.is_empty() && instances.iter().all(|i| remaining.contains(i)) {
            for i in &instances {
                remaining.remove(i);
            }
            out.insert(r.clone());
        }
    }
    out.extend(remaining);
    Ok(out)
}

/// A ground instance of `general` equal to `specific`, if any.
pub(crate) fn instance_of(general: &Literal, specific: &Literal) -> bool {
    matches(general, specific).is_some()
}
