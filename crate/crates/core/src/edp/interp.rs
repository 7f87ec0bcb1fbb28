use std::collections::BTreeSet;
use std::fmt;

use super::rule::{Program, Rule};
use super::term::{BodyElem, Literal};
use crate::error::{Error, Result};

/// A set of ground literals. The contradictory interpretation stands for the
/// full literal set of the language and is never materialised.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Interpretation {
    contradictory: bool,
    literals: BTreeSet<Literal>,
}

impl Interpretation {
    pub fn new(literals: impl IntoIterator<Item = Literal>) -> Self {
        Interpretation {
            contradictory: false,
            literals: literals.into_iter().collect(),
        }
    }

    pub fn contradictory() -> Self {
        Interpretation {
            contradictory: true,
            literals: BTreeSet::new(),
        }
    }

    pub fn is_contradictory(&self) -> bool {
        self.contradictory
    }

    /// Literals of a consistent interpretation; empty for the contradictory one.
    pub fn literals(&self) -> &BTreeSet<Literal> {
        &self.literals
    }

    pub fn contains(&self, lit: &Literal) -> bool {
        self.contradictory || self.literals.contains(lit)
    }

    /// Whether the set holds a complementary pair.
    pub fn has_complementary_pair(&self) -> bool {
        self.contradictory
            || self
                .literals
                .iter()
                .any(|l| l.negated && self.literals.contains(&l.complement()))
    }

    pub fn satisfies_body(&self, body: &[BodyElem]) -> bool {
        body.iter().all(|b| self.contains(&b.literal) != b.naf)
    }

    /// Rule satisfaction for a ground rule: body true implies some head literal true.
    pub fn satisfies(&self, rule: &Rule) -> Result<bool> {
        if !rule.is_ground() {
            return Err(Error::NonGroundRule(rule.to_string()));
        }
        Ok(!self.satisfies_body(rule.body()) || rule.head().iter().any(|h| self.contains(h)))
    }

    pub fn satisfies_all(&self, p: &Program) -> Result<bool> {
        for r in p {
            if !self.satisfies(r)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Display for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.contradictory {
            return f.write_str("{ <all literals> }");
        }
        f.write_str("{")?;
        for (i, l) in self.literals.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, " {l}")?;
        }
        f.write_str(" }")
    }
}

/// `satisfies` as a free function over an interpretation and a ground rule.
pub fn satisfies(s: &Interpretation, r: &Rule) -> Result<bool> {
    s.satisfies(r)
}

/// The NAF-free program `p^s`: rules whose NAF part misses `s`, with NAF stripped.
pub fn reduct(p: &Program, s: &Interpretation) -> Program {
    p.rules()
        .filter(|r| r.naf_body().all(|l| !s.contains(l)))
        .map(|r| {
            Rule::new(
                r.head().iter().cloned(),
                r.body().iter().filter(|b| !b.naf).cloned(),
            )
        })
        .collect()
}
