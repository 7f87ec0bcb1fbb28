use std::collections::BTreeSet;
use std::fmt;

use crate::edp::{substitutions, Conjunction, Symbol, Universe};
use crate::error::{Error, Result};

/// One policy statement: a conjunction, or a disjunction of conjunctions.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PolicyElement {
    disjuncts: Vec<Conjunction>,
}

impl PolicyElement {
    pub fn new(disjuncts: Vec<Conjunction>) -> Self {
        PolicyElement { disjuncts }
    }

    pub fn conjunction(c: Conjunction) -> Self {
        PolicyElement { disjuncts: vec![c] }
    }

    pub fn disjuncts(&self) -> &[Conjunction] {
        &self.disjuncts
    }

    /// Variables occurring in more than one disjunct.
    pub fn shared_vars(&self) -> Vec<Symbol> {
        let mut seen = BTreeSet::new();
        let mut shared = BTreeSet::new();
        for d in &self.disjuncts {
            for v in d.free_vars() {
                if !seen.insert(v.clone()) {
                    shared.insert(v);
                }
            }
        }
        shared.into_iter().collect()
    }
}

impl fmt::Display for PolicyElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.disjuncts.iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            write!(f, "{d}")?;
        }
        f.write_str(".")
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Policy {
    elements: Vec<PolicyElement>,
}

impl Policy {
    pub fn new(elements: Vec<PolicyElement>) -> Self {
        Policy { elements }
    }

    pub fn from_conjunctions(cs: impl IntoIterator<Item = Conjunction>) -> Self {
        Policy {
            elements: cs.into_iter().map(PolicyElement::conjunction).collect(),
        }
    }

    pub fn elements(&self) -> &[PolicyElement] {
        &self.elements
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn constants(&self) -> BTreeSet<Symbol> {
        self.elements
            .iter()
            .flat_map(|e| e.disjuncts.iter())
            .flat_map(|c| c.literals())
            .flat_map(|l| l.atom.args.iter())
            .filter(|t| !t.is_var())
            .map(|t| t.name().clone())
            .collect()
    }
}

impl fmt::Display for Policy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.elements {
            writeln!(f, "{e}")?;
        }
        Ok(())
    }
}

/// Flattens the policy into conjunctions: a disjunctive element becomes one
/// conjunction per disjunct, after grounding the variables its disjuncts
/// share. Duplicates are dropped, first occurrence wins.
pub fn normalize_policy(p: &Policy, universe: &Universe) -> Result<Vec<Conjunction>> {
    let mut out: Vec<Conjunction> = Vec::new();
    let mut push = |c: Conjunction| {
        if !out.contains(&c) {
            out.push(c);
        }
    };
    for e in p.elements() {
        let shared = e.shared_vars();
        if e.disjuncts().len() < 2 || shared.is_empty() {
            e.disjuncts().iter().cloned().for_each(&mut push);
            continue;
        }
        if universe.is_empty() {
            return Err(Error::EmptyUniverse);
        }
        for s in substitutions(&shared, universe) {
            for d in e.disjuncts() {
                push(d.apply(&s));
            }
        }
    }
    Ok(out)
}
