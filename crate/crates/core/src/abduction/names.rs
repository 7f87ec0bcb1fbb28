//! Spelling of the internal atoms introduced by the transformations.
//!
//! All of them start with `__`, which the parser refuses in user input, so
//! they can never clash with user predicates. Classical negation is folded
//! into the predicate as `Neg_p`; user predicates start with a lowercase
//! letter, so the encoding stays injective.

use crate::edp::{Atom, Literal, Symbol, Term};

pub const NAME_PREFIX: &str = "__n_";
pub const SPLIT_PREFIX: &str = "__n_l";
pub const BAR_PREFIX: &str = "__no_";
pub const INS_PREFIX: &str = "__ins_";
pub const DEL_PREFIX: &str = "__del_";
pub const OBS_NEG_PREFIX: &str = "__obs_neg_";
pub const OBS_POS: &str = "__obs_pos";

fn encode(lit: &Literal) -> String {
    if lit.negated {
        format!("Neg_{}", lit.predicate())
    } else {
        lit.predicate().to_string()
    }
}

fn derived(prefix: &str, lit: &Literal) -> Literal {
    Literal::pos(Atom {
        predicate: Symbol::new(format!("{prefix}{}", encode(lit))),
        args: lit.atom.args.clone(),
    })
}

/// `L̄`, the atom chosen when abducible `L` is absent.
pub fn bar(lit: &Literal) -> Literal {
    derived(BAR_PREFIX, lit)
}

/// `+L`.
pub fn ins(lit: &Literal) -> Literal {
    derived(INS_PREFIX, lit)
}

/// `-L`.
pub fn del(lit: &Literal) -> Literal {
    derived(DEL_PREFIX, lit)
}

/// `n(R)` for the `i`-th named rule, over the rule's free variables.
pub fn rule_name(i: usize, vars: &[Symbol]) -> Literal {
    Literal::pos(Atom {
        predicate: Symbol::new(format!("{NAME_PREFIX}{i}")),
        args: vars.iter().map(|v| Term::Var(v.clone())).collect(),
    })
}

/// Name standing in for a derivable abducible literal.
pub fn split_name(j: usize, lit: &Literal) -> Literal {
    Literal::pos(Atom {
        predicate: Symbol::new(format!("{SPLIT_PREFIX}{j}")),
        args: lit.atom.args.clone(),
    })
}

pub fn obs_neg(i: usize) -> Literal {
    Literal::pos(Atom::new(format!("{OBS_NEG_PREFIX}{i}"), Vec::new()))
}

pub fn obs_pos() -> Literal {
    Literal::pos(Atom::new(OBS_POS, Vec::new()))
}

pub fn is_update_atom(lit: &Literal) -> bool {
    let p = lit.predicate().as_str();
    !lit.negated && (p.starts_with(INS_PREFIX) || p.starts_with(DEL_PREFIX))
}

pub fn is_insert_atom(lit: &Literal) -> bool {
    !lit.negated && lit.predicate().as_str().starts_with(INS_PREFIX)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_literal_str;

    #[test]
    fn negated_literals_encode_apart_from_lookalike_predicates() {
        let a = parse_literal_str("-able_to_work(pete)").unwrap();
        let b = parse_literal_str("neg_able_to_work(pete)").unwrap();
        assert_ne!(bar(&a), bar(&b));
        assert_eq!(bar(&a).to_string(), "__no_Neg_able_to_work(pete)");
        assert_eq!(del(&b).to_string(), "__del_neg_able_to_work(pete)");
        assert!(is_update_atom(&ins(&a)));
        assert!(!is_update_atom(&bar(&a)));
    }
}
