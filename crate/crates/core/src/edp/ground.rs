use std::collections::BTreeSet;

use super::rule::{Program, Rule};
use super::subst::Substitution;
use super::term::{Literal, Symbol, Term};
use crate::error::{Error, Result};

/// The set of constants variables range over.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct Universe {
    constants: BTreeSet<Symbol>,
}

impl Universe {
    pub fn new(constants: impl IntoIterator<Item = Symbol>) -> Self {
        Universe {
            constants: constants.into_iter().collect(),
        }
    }

    /// Constants occurring in `p`.
    pub fn of(p: &Program) -> Self {
        Universe {
            constants: p.constants(),
        }
    }

    /// Constants occurring in any of the programs.
    pub fn of_all<'a>(programs: impl IntoIterator<Item = &'a Program>) -> Self {
        Universe {
            constants: programs.into_iter().flat_map(Program::constants).collect(),
        }
    }

    pub fn extend(&mut self, constants: impl IntoIterator<Item = Symbol>) {
        self.constants.extend(constants);
    }

    pub fn constants(&self) -> impl Iterator<Item = &Symbol> {
        self.constants.iter()
    }

    pub fn contains(&self, c: &Symbol) -> bool {
        self.constants.contains(c)
    }

    pub fn len(&self) -> usize {
        self.constants.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constants.is_empty()
    }
}

/// Every substitution of `vars` by universe constants, in lexicographic order.
pub fn substitutions<'a>(
    vars: &'a [Symbol],
    universe: &'a Universe,
) -> impl Iterator<Item = Substitution> + 'a {
    let consts: Vec<&Symbol> = universe.constants().collect();
    let total = if vars.is_empty() {
        1
    } else if consts.is_empty() {
        0
    } else {
        consts.len().checked_pow(vars.len() as u32).unwrap_or(usize::MAX)
    };
    let base = consts.len().max(1);
    (0..total).map(move |mut code| {
        let mut idx = vec![0usize; vars.len()];
        for slot in idx.iter_mut().rev() {
            *slot = code % base;
            code /= base;
        }
        vars.iter()
            .zip(idx)
            .map(|(v, i)| (v.clone(), Term::Const(consts[i].clone())))
            .collect()
    })
}

/// Number of ground instances `rule` has over a universe of `n` constants.
pub fn instance_count(rule: &Rule, n: usize) -> u64 {
    let vars = rule.free_vars().len() as u32;
    (n as u64).checked_pow(vars).unwrap_or(u64::MAX)
}

pub fn ground_rule(rule: &Rule, universe: &Universe) -> Result<Vec<Rule>> {
    let vars: Vec<Symbol> = rule.free_vars().into_iter().collect();
    if vars.is_empty() {
        return Ok(vec![rule.clone()]);
    }
    if universe.is_empty() {
        return Err(Error::EmptyUniverse);
    }
    Ok(substitutions(&vars, universe).map(|s| rule.apply(&s)).collect())
}

pub fn ground_literal(lit: &Literal, universe: &Universe) -> Result<Vec<Literal>> {
    let vars: Vec<Symbol> = lit.vars().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    if vars.is_empty() {
        return Ok(vec![lit.clone()]);
    }
    if universe.is_empty() {
        return Err(Error::EmptyUniverse);
    }
    Ok(substitutions(&vars, universe).map(|s| s.apply_literal(lit)).collect())
}

/// Replaces every rule with variables by all of its ground instances.
pub fn ground(p: &Program, universe: &Universe) -> Result<Program> {
    let mut out = Program::new();
    for rule in p {
        out.extend(ground_rule(rule, universe)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_program_str;

    fn universe(names: &[&str]) -> Universe {
        Universe::new(names.iter().map(|n| Symbol::new(n)))
    }

    #[test]
    fn running_rule_grounds_once_per_constant() {
        let p = parse_program_str(
            "ill(X,aids) ; ill(X,flu) :- treat(X,medi1), not treat(X,medi2).",
        )
        .unwrap();
        let u = universe(&["mary", "pete", "aids", "flu", "medi1", "medi2"]);
        let g = ground(&p, &u).unwrap();
        assert_eq!(g.len(), 6);
        assert!(g.is_ground());
    }

    #[test]
    fn ground_program_passes_through() {
        let p = parse_program_str("ill(mary,aids). treat(pete,medi1).").unwrap();
        assert_eq!(ground(&p, &universe(&["zzz"])).unwrap(), p);
        assert_eq!(ground(&p, &Universe::default()).unwrap(), p);
    }

    #[test]
    fn single_substitution() {
        let p = parse_program_str("p(X).").unwrap();
        let g = ground(&p, &universe(&["a"])).unwrap();
        assert_eq!(g, parse_program_str("p(a).").unwrap());
    }

    #[test]
    fn empty_universe_with_variables_is_an_error() {
        let p = parse_program_str("p(X) :- q(X).").unwrap();
        assert_eq!(ground(&p, &Universe::default()), Err(Error::EmptyUniverse));
    }

    #[test]
    fn regrounding_is_idempotent() {
        let p = parse_program_str("p(X,Y) :- q(X), not r(Y). r(a).").unwrap();
        let u = universe(&["a", "b"]);
        let once = ground(&p, &u).unwrap();
        assert_eq!(once.len(), 5);
        assert_eq!(ground(&once, &u).unwrap(), once);
    }
}
