use super::ptr::PtrProgram;
use crate::edp::{overlaps, variants_equal, Literal, Program, Rule};

/// Deletion-only publishing may remove anything from `K`.
pub fn abducibles_deletion(k: &Program) -> Program {
    k.clone()
}

/// The literals the negative observations depend on, level by level.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DependencyTrace {
    /// `P0` followed by the literals first reached at each later level.
    pub levels: Vec<Vec<Literal>>,
    /// The union of all levels.
    pub closure: Vec<Literal>,
    /// The closure plus every rule of `K` whose head meets it.
    pub abducibles: Program,
}

impl DependencyTrace {
    pub fn p0(&self) -> &[Literal] {
        self.levels.first().map(Vec::as_slice).unwrap_or(&[])
    }
}

fn same_literal(a: &Literal, b: &Literal) -> bool {
    variants_equal(&Rule::fact(a.clone()), &Rule::fact(b.clone()))
}

fn push_new(seen: &mut Vec<Literal>, frontier: &mut Vec<Literal>, lit: &Literal) {
    if lit.is_reserved() || seen.iter().any(|s| same_literal(s, lit)) {
        return;
    }
    seen.push(lit.clone());
    frontier.push(lit.clone());
}

/// Traces back from the negative observations through `K ∪ prior ∪ PTR`:
/// a rule whose head unifies with a collected literal contributes all of
/// its body literals, under NAF or not.
pub fn dependency_abducibles(k: &Program, prior: &Program, ptr: &PtrProgram) -> DependencyTrace {
    let mut seen = Vec::new();
    let mut frontier = Vec::new();
    for r in &ptr.rules {
        if r.head().iter().any(|h| ptr.neg_obs.contains(h)) {
            for b in r.body() {
                push_new(&mut seen, &mut frontier, &b.literal);
            }
        }
    }
    let all = k.union(prior).union(&ptr.rules);
    let mut levels = Vec::new();
    while !frontier.is_empty() {
        let current = std::mem::take(&mut frontier);
        for r in &all {
            if r.head().iter().any(|h| current.iter().any(|p| overlaps(h, p))) {
                for b in r.body() {
                    push_new(&mut seen, &mut frontier, &b.literal);
                }
            }
        }
        levels.push(current);
    }
    let mut abducibles: Program = seen.iter().cloned().map(Rule::fact).collect();
    for r in k {
        if r.head().iter().any(|h| seen.iter().any(|p| overlaps(h, p))) {
            abducibles.insert(r.clone());
        }
    }
    DependencyTrace {
        levels,
        closure: seen,
        abducibles,
    }
}
