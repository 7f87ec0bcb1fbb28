use std::collections::BTreeSet;
use std::fmt;

use super::subst::Substitution;
use super::term::{BodyElem, Literal, Symbol};

/// A conjunction of (NAF-)literals, used for queries and policy elements.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Conjunction {
    elems: Vec<BodyElem>,
}

impl Conjunction {
    pub fn new(elems: impl IntoIterator<Item = BodyElem>) -> Self {
        let mut elems: Vec<BodyElem> = elems.into_iter().collect();
        elems.sort();
        elems.dedup();
        Conjunction { elems }
    }

    pub fn elems(&self) -> &[BodyElem] {
        &self.elems
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn literals(&self) -> impl Iterator<Item = &Literal> {
        self.elems.iter().map(|b| &b.literal)
    }

    /// Free variables in first-occurrence order.
    pub fn free_vars(&self) -> Vec<Symbol> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for v in self.literals().flat_map(Literal::vars) {
            if seen.insert(v.clone()) {
                out.push(v.clone());
            }
        }
        out
    }

    pub fn is_ground(&self) -> bool {
        self.literals().all(Literal::is_ground)
    }

    pub fn apply(&self, s: &Substitution) -> Conjunction {
        Conjunction::new(self.elems.iter().map(|b| BodyElem {
            naf: b.naf,
            literal: s.apply_literal(&b.literal),
        }))
    }
}

impl fmt::Display for Conjunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.elems.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{b}")?;
        }
        Ok(())
    }
}
