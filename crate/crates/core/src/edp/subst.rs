use std::collections::BTreeMap;

use super::term::{Atom, Literal, Symbol, Term};

/// Variable bindings. Bindings may chain (`X -> Y -> a`); `resolve` follows them.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct Substitution {
    map: BTreeMap<Symbol, Term>,
}

impl Substitution {
    pub fn new() -> Self {
        Substitution::default()
    }

    pub fn bind(&mut self, var: Symbol, term: Term) {
        self.map.insert(var, term);
    }

    pub fn get(&self, var: &Symbol) -> Option<&Term> {
        self.map.get(var)
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Symbol, &Term)> {
        self.map.iter()
    }

    pub fn resolve(&self, term: &Term) -> Term {
        let mut cur = term.clone();
        // Chains are acyclic: `unify` never binds a variable to itself.
        while let Term::Var(v) = &cur {
            match self.map.get(v) {
                Some(next) => cur = next.clone(),
                None => break,
            }
        }
        cur
    }

    pub fn apply_atom(&self, atom: &Atom) -> Atom {
        Atom {
            predicate: atom.predicate.clone(),
            args: atom.args.iter().map(|t| self.resolve(t)).collect(),
        }
    }

    pub fn apply_literal(&self, lit: &Literal) -> Literal {
        Literal {
            atom: self.apply_atom(&lit.atom),
            negated: lit.negated,
        }
    }
}

impl FromIterator<(Symbol, Term)> for Substitution {
    fn from_iter<T: IntoIterator<Item = (Symbol, Term)>>(iter: T) -> Self {
        Substitution {
            map: iter.into_iter().collect(),
        }
    }
}
