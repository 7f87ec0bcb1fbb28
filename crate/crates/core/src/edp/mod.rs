//! Object model for extended disjunctive programs: terms, literals, rules,
//! grounding over a Herbrand universe, rule satisfaction and the reduct.

mod conj;
mod ground;
mod interp;
mod rule;
mod subst;
mod term;
mod unify;

use std::collections::BTreeSet;

pub use conj::Conjunction;
pub use ground::{ground, ground_literal, ground_rule, instance_count, substitutions, Universe};
pub use interp::{reduct, satisfies, Interpretation};
pub use rule::{Program, Rule};
pub use subst::Substitution;
pub use term::{Atom, BodyElem, Literal, Symbol, Term};
pub use unify::{matches, overlaps, rename_literal, set_minus_modulo_inst, unify, variants_equal};

pub fn free_vars(r: &Rule) -> BTreeSet<Symbol> {
    r.free_vars()
}
