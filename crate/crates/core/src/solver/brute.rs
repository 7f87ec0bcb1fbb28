use std::collections::BTreeSet;

use super::{AnswerSets, SolverConfig};
use crate::edp::{
    ground, reduct, substitutions, Atom, Interpretation, Literal, Program, Symbol, Term, Universe,
};
use crate::error::{Error, Result};

/// Every ground literal over the signature of `p` and `universe`.
pub(crate) fn all_literals(p: &Program, universe: &Universe) -> Vec<Literal> {
    let mut out = Vec::new();
    for (pred, arities) in p.signature() {
        for arity in arities {
            let vars: Vec<Symbol> = (0..arity).map(|i| Symbol::new(format!("V{i}"))).collect();
            let pattern = Atom {
                predicate: pred.clone(),
                args: vars.iter().map(|v| Term::Var(v.clone())).collect(),
            };
            let atoms: Vec<Atom> = if arity == 0 {
                vec![pattern]
            } else {
                substitutions(&vars, universe)
                    .map(|s| s.apply_atom(&pattern))
                    .collect()
            };
            for a in atoms {
                out.push(Literal::pos(a.clone()));
                out.push(Literal::neg(a));
            }
        }
    }
    out.sort();
    out
}

fn subset(lits: &[Literal], mask: u64) -> Interpretation {
    Interpretation::new(
        lits.iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, l)| l.clone()),
    )
}

/// Pairs of indices holding complementary literals.
fn complementary_pairs(lits: &[Literal]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (i, l) in lits.iter().enumerate() {
        if !l.negated {
            if let Ok(j) = lits.binary_search(&l.complement()) {
                out.push((i, j));
            }
        }
    }
    out
}

fn consistent_mask(pairs: &[(usize, usize)], mask: u64) -> bool {
    pairs.iter().all(|&(i, j)| mask >> i & 1 == 0 || mask >> j & 1 == 0)
}

/// Literals derivable when every NAF literal is taken as true.
fn possible_literals(g: &Program) -> Vec<Literal> {
    let mut possible: BTreeSet<Literal> = BTreeSet::new();
    let mut changed = true;
    while changed {
        changed = false;
        for r in g.rules() {
            if r.positive_body().all(|l| possible.contains(l)) {
                for h in r.head() {
                    changed |= possible.insert(h.clone());
                }
            }
        }
    }
    possible.into_iter().collect()
}

/// Enumerates sets of ground literals and checks the answer-set definition
/// directly. Only literals derivable with NAF ignored are enumerated: if `S`
/// is a model of its reduct, so is its intersection with them, hence a
/// consistent answer set lies inside. Exponential; only for cross-checking.
pub fn brute_force_answer_sets(p: &Program, universe: &Universe, config: &SolverConfig) -> Result<AnswerSets> {
    let g = ground(p, universe)?;
    let lits = possible_literals(&g);
    if lits.len() as u64 > config.oracle_cap {
        return Err(Error::ResourceCap {
            what: "oracle literals",
            limit: config.oracle_cap,
            needed: lits.len() as u64,
        });
    }
    let pairs = complementary_pairs(&lits);
    let n = lits.len();
    let mut found = Vec::new();
    for mask in 0u64..(1u64 << n) {
        if !consistent_mask(&pairs, mask) {
            continue;
        }
        let s = subset(&lits, mask);
        let red = reduct(&g, &s);
        if !s.satisfies_all(&red)? {
            continue;
        }
        let mut minimal = true;
        // Proper submasks of mask.
        let mut sub = mask.wrapping_sub(1) & mask;
        while mask != 0 {
            if subset(&lits, sub).satisfies_all(&red)? {
                minimal = false;
                break;
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & mask;
        }
        if minimal {
            found.push(s);
        }
    }
    if found.is_empty() {
        // The contradictory set: it must satisfy its reduct, and no
        // consistent set may.
        let all = Interpretation::contradictory();
        let red = reduct(&g, &all);
        if all.satisfies_all(&red)? {
            let mut smaller = false;
            for mask in 0u64..(1u64 << n) {
                if consistent_mask(&pairs, mask) && subset(&lits, mask).satisfies_all(&red)? {
                    smaller = true;
                    break;
                }
            }
            if !smaller {
                found.push(all);
            }
        }
    }
    Ok(AnswerSets::new(found))
}
