use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::subst::Substitution;
use super::term::{BodyElem, Literal, Symbol, Term};

/// `L1 ; ... ; Ll :- B1, ..., Bm, not Bm+1, ..., not Bn.`
///
/// Head and body are sets: the constructor sorts and deduplicates both, so
/// two rules built from permuted inputs compare equal.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Rule {
    head: Vec<Literal>,
    body: Vec<BodyElem>,
}

impl Rule {
    pub fn new(head: impl IntoIterator<Item = Literal>, body: impl IntoIterator<Item = BodyElem>) -> Self {
        let mut head: Vec<Literal> = head.into_iter().collect();
        head.sort();
        head.dedup();
        let mut body: Vec<BodyElem> = body.into_iter().collect();
        body.sort();
        body.dedup();
        Rule { head, body }
    }

    pub fn fact(lit: Literal) -> Self {
        Rule {
            head: vec![lit],
            body: Vec::new(),
        }
    }

    pub fn constraint(body: impl IntoIterator<Item = BodyElem>) -> Self {
        Rule::new(Vec::new(), body)
    }

    pub fn head(&self) -> &[Literal] {
        &self.head
    }

    pub fn body(&self) -> &[BodyElem] {
        &self.body
    }

    pub fn positive_body(&self) -> impl Iterator<Item = &Literal> {
        self.body.iter().filter(|b| !b.naf).map(|b| &b.literal)
    }

    pub fn naf_body(&self) -> impl Iterator<Item = &Literal> {
        self.body.iter().filter(|b| b.naf).map(|b| &b.literal)
    }

    pub fn has_naf(&self) -> bool {
        self.body.iter().any(|b| b.naf)
    }

    pub fn is_constraint(&self) -> bool {
        self.head.is_empty()
    }

    /// A fact `L.` is identified with the literal `L`.
    pub fn as_literal(&self) -> Option<&Literal> {
        match (self.head.as_slice(), self.body.is_empty()) {
            ([lit], true) => Some(lit),
            _ => None,
        }
    }

    pub fn is_literal(&self) -> bool {
        self.as_literal().is_some()
    }

    pub fn literals(&self) -> impl Iterator<Item = &Literal> {
        self.head.iter().chain(self.body.iter().map(|b| &b.literal))
    }

    /// Every variable occurring in the head or body.
    pub fn free_vars(&self) -> BTreeSet<Symbol> {
        self.literals().flat_map(|l| l.vars().cloned()).collect()
    }

    pub fn is_ground(&self) -> bool {
        self.literals().all(Literal::is_ground)
    }

    pub fn is_reserved(&self) -> bool {
        self.literals().any(Literal::is_reserved)
    }

    pub fn with_body_elem(&self, extra: BodyElem) -> Rule {
        Rule::new(self.head.clone(), self.body.iter().cloned().chain(std::iter::once(extra)))
    }

    pub fn apply(&self, subst: &Substitution) -> Rule {
        Rule::new(
            self.head.iter().map(|l| subst.apply_literal(l)),
            self.body.iter().map(|b| BodyElem {
                naf: b.naf,
                literal: subst.apply_literal(&b.literal),
            }),
        )
    }

    pub fn constants(&self) -> impl Iterator<Item = &Symbol> {
        self.literals().flat_map(|l| {
            l.atom.args.iter().filter_map(|t| match t {
                Term::Const(c) => Some(c),
                Term::Var(_) => None,
            })
        })
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, h) in self.head.iter().enumerate() {
            if i > 0 {
                f.write_str(" ; ")?;
            }
            write!(f, "{h}")?;
        }
        if !self.body.is_empty() || self.head.is_empty() {
            if self.head.is_empty() {
                f.write_str(":-")?;
            } else {
                f.write_str(" :-")?;
            }
            for (i, b) in self.body.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, " {b}")?;
            }
        }
        f.write_str(".")
    }
}

/// A set of rules. Iteration order is the canonical rule order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Default, Debug, Hash)]
pub struct Program {
    rules: BTreeSet<Rule>,
}

impl Program {
    pub fn new() -> Self {
        Program::default()
    }

    pub fn insert(&mut self, rule: Rule) -> bool {
        self.rules.insert(rule)
    }

    pub fn remove(&mut self, rule: &Rule) -> bool {
        self.rules.remove(rule)
    }

    pub fn contains(&self, rule: &Rule) -> bool {
        self.rules.contains(rule)
    }

    pub fn rules(&self) -> impl Iterator<Item = &Rule> + '_ {
        self.rules.iter()
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn union(&self, other: &Program) -> Program {
        let mut out = self.clone();
        out.extend(other.rules().cloned());
        out
    }

    pub fn is_ground(&self) -> bool {
        self.rules.iter().all(Rule::is_ground)
    }

    pub fn constants(&self) -> BTreeSet<Symbol> {
        self.rules.iter().flat_map(|r| r.constants().cloned()).collect()
    }

    /// Predicate symbols with the arities they are used at. A well-formed
    /// program maps every predicate to exactly one arity.
    pub fn signature(&self) -> BTreeMap<Symbol, BTreeSet<usize>> {
        let mut sig: BTreeMap<Symbol, BTreeSet<usize>> = BTreeMap::new();
        for lit in self.rules.iter().flat_map(Rule::literals) {
            sig.entry(lit.predicate().clone()).or_default().insert(lit.atom.arity());
        }
        sig
    }

    /// The facts of the program, viewed as literals.
    pub fn facts(&self) -> impl Iterator<Item = &Literal> + '_ {
        self.rules.iter().filter_map(Rule::as_literal)
    }

    pub fn has_reserved(&self) -> bool {
        self.rules.iter().any(Rule::is_reserved)
    }
}

impl Extend<Rule> for Program {
    fn extend<T: IntoIterator<Item = Rule>>(&mut self, iter: T) {
        self.rules.extend(iter);
    }
}

impl FromIterator<Rule> for Program {
    fn from_iter<T: IntoIterator<Item = Rule>>(iter: T) -> Self {
        Program {
            rules: iter.into_iter().collect(),
        }
    }
}

impl<'a> IntoIterator for &'a Program {
    type Item = &'a Rule;
    type IntoIter = std::collections::btree_set::Iter<'a, Rule>;

    fn into_iter(self) -> Self::IntoIter {
        self.rules.iter()
    }
}

impl IntoIterator for Program {
    type Item = Rule;
    type IntoIter = std::collections::btree_set::IntoIter<Rule>;

    fn into_iter(self) -> Self::IntoIter {
        self.rules.into_iter()
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rules {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}
