use std::collections::BTreeMap;

use super::ground::{ground, Universe};
use super::rule::{Program, Rule};
use super::subst::Substitution;
use super::term::{Literal, Symbol, Term};
use crate::error::Result;

/// Most general unifier of two literals, or `None` when they have no common
/// instance. Without function symbols this is a single left-to-right pass.
///
/// Both literals share one variable namespace; rename apart first when the
/// literals come from different rules.
pub fn unify(a: &Literal, b: &Literal) -> Option<Substitution> {
    if a.negated != b.negated
        || a.atom.predicate != b.atom.predicate
        || a.atom.arity() != b.atom.arity()
    {
        return None;
    }
    let mut s = Substitution::new();
    for (ta, tb) in a.atom.args.iter().zip(&b.atom.args) {
        let ra = s.resolve(ta);
        let rb = s.resolve(tb);
        match (&ra, &rb) {
            (Term::Const(x), Term::Const(y)) => {
                if x != y {
                    return None;
                }
            }
            (Term::Var(v), _) => {
                if ra != rb {
                    s.bind(v.clone(), rb);
                }
            }
            (_, Term::Var(v)) => s.bind(v.clone(), ra),
        }
    }
    let resolved = s
        .iter()
        .map(|(v, _)| (v.clone(), s.resolve(&Term::Var(v.clone()))))
        .collect::<Vec<_>>();
    Some(resolved.into_iter().collect())
}

/// One-way matching: a substitution θ with `general θ = specific`.
pub fn matches(general: &Literal, specific: &Literal) -> Option<Substitution> {
    if general.negated != specific.negated
        || general.atom.predicate != specific.atom.predicate
        || general.atom.arity() != specific.atom.arity()
    {
        return None;
    }
    let mut s = Substitution::new();
    for (g, t) in general.atom.args.iter().zip(&specific.atom.args) {
        match g {
            Term::Const(_) => {
                if g != t {
                    return None;
                }
            }
            Term::Var(v) => match s.get(v) {
                Some(bound) if bound != t => return None,
                Some(_) => {}
                None => s.bind(v.clone(), t.clone()),
            },
        }
    }
    Some(s)
}

/// Renames every variable `X` of `lit` to `X<suffix>`.
pub fn rename_literal(lit: &Literal, suffix: &str) -> Literal {
    let s: Substitution = lit
        .vars()
        .map(|v| (v.clone(), Term::var(format!("{v}{suffix}"))))
        .collect();
    s.apply_literal(lit)
}

/// Whether the two literals share a ground instance (after renaming apart).
pub fn overlaps(a: &Literal, b: &Literal) -> bool {
    unify(&rename_literal(a, "_l"), &rename_literal(b, "_r")).is_some()
}

/// Whether some variable renaming maps `r1` onto `r2` exactly.
pub fn variants_equal(r1: &Rule, r2: &Rule) -> bool {
    if r1.head().len() != r2.head().len() || r1.body().len() != r2.body().len() {
        return false;
    }
    let items = |r: &Rule| -> Vec<(u8, Literal)> {
        r.head()
            .iter()
            .map(|l| (0u8, l.clone()))
            .chain(r.body().iter().map(|b| (1 + b.naf as u8, b.literal.clone())))
            .collect()
    };
    let left = items(r1);
    let right = items(r2);
    let mut used = vec![false; right.len()];
    let mut fwd = BTreeMap::new();
    let mut bwd = BTreeMap::new();
    match_items(&left, &right, 0, &mut used, &mut fwd, &mut bwd)
}

fn match_items(
    left: &[(u8, Literal)],
    right: &[(u8, Literal)],
    i: usize,
    used: &mut [bool],
    fwd: &mut BTreeMap<Symbol, Symbol>,
    bwd: &mut BTreeMap<Symbol, Symbol>,
) -> bool {
    if i == left.len() {
        return true;
    }
    let (tag, lit) = &left[i];
    for j in 0..right.len() {
        if used[j] || right[j].0 != *tag {
            continue;
        }
        let (saved_f, saved_b) = (fwd.clone(), bwd.clone());
        if match_literal(lit, &right[j].1, fwd, bwd) {
            used[j] = true;
            if match_items(left, right, i + 1, used, fwd, bwd) {
                return true;
            }
            used[j] = false;
        }
        *fwd = saved_f;
        *bwd = saved_b;
    }
    false
}

fn match_literal(
    a: &Literal,
    b: &Literal,
    fwd: &mut BTreeMap<Symbol, Symbol>,
    bwd: &mut BTreeMap<Symbol, Symbol>,
) -> bool {
    if a.negated != b.negated || a.atom.predicate != b.atom.predicate || a.atom.arity() != b.atom.arity() {
        return false;
    }
    for (x, y) in a.atom.args.iter().zip(&b.atom.args) {
        match (x, y) {
            (Term::Const(c), Term::Const(d)) if c == d => {}
            (Term::Var(v), Term::Var(w)) => {
                match (fwd.get(v), bwd.get(w)) {
                    (None, None) => {
                        fwd.insert(v.clone(), w.clone());
                        bwd.insert(w.clone(), v.clone());
                    }
                    (Some(fw), Some(bv)) if fw == w && bv == v => {}
                    _ => return false,
                }
            }
            _ => return false,
        }
    }
    true
}

/// `s \ t` computed on ground instantiations, returned extensionally.
pub fn set_minus_modulo_inst(s: &Program, t: &Program, universe: &Universe) -> Result<Program> {
    let gs = ground(s, universe)?;
    let gt = ground(t, universe)?;
    Ok(gs.into_iter().filter(|r| !gt.contains(r)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::{parse_literal_str, parse_program_str};

    fn lit(s: &str) -> Literal {
        parse_literal_str(s).unwrap()
    }

    fn rule(s: &str) -> Rule {
        parse_program_str(s).unwrap().into_iter().next().unwrap()
    }

    #[test]
    fn unify_binds_constant() {
        let s = unify(&lit("ill(X,aids)"), &lit("ill(pete,aids)")).unwrap();
        assert_eq!(s.get(&Symbol::new("X")), Some(&Term::constant("pete")));
    }

    #[test]
    fn unify_constant_clash() {
        assert!(unify(&lit("ill(X,aids)"), &lit("ill(X,flu)")).is_none());
    }

    #[test]
    fn unify_negation_mismatch() {
        assert!(unify(&lit("ill(X,aids)"), &lit("-ill(Y,aids)")).is_none());
    }

    #[test]
    fn unify_chains_through_variables() {
        let a = lit("p(X,X,b)");
        let b = lit("p(Y,a,Y)");
        assert!(unify(&a, &b).is_none());
        let s = unify(&lit("p(X,X)"), &lit("p(Y,a)")).unwrap();
        assert_eq!(s.apply_literal(&lit("p(X,Y)")), lit("p(a,a)"));
    }

    #[test]
    fn variants() {
        assert!(variants_equal(&rule("p(X) :- q(X)."), &rule("p(Y) :- q(Y).")));
        assert!(!variants_equal(&rule("p(X) :- q(X)."), &rule("p(X) :- q(Z).")));
        assert!(variants_equal(&rule("p(a) :- q(b)."), &rule("p(a) :- q(b).")));
        // body order after renaming differs from the sorted order
        assert!(variants_equal(
            &rule("p :- q(A), r(B), q(B)."),
            &rule("p :- q(Y), r(X), q(X).")
        ));
        assert!(!variants_equal(&rule("p :- q(X), not r(X)."), &rule("p :- r(X), not q(X).")));
    }

    #[test]
    fn set_minus_on_instances() {
        let u = Universe::new([Symbol::new("a"), Symbol::new("b")]);
        let s = parse_program_str("p(X).").unwrap();
        let t = parse_program_str("p(a).").unwrap();
        assert_eq!(
            set_minus_modulo_inst(&s, &t, &u).unwrap(),
            parse_program_str("p(b).").unwrap()
        );
        assert_eq!(set_minus_modulo_inst(&t, &s, &u).unwrap(), Program::new());
        assert_eq!(
            set_minus_modulo_inst(&s, &Program::new(), &u).unwrap(),
            parse_program_str("p(a). p(b).").unwrap()
        );
    }
}
