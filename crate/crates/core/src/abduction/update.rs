use std::collections::{BTreeMap, BTreeSet, HashSet};

use super::{instance_of, names, AbductiveProgram};
use crate::edp::{ground, ground_literal, BodyElem, Literal, Program, Rule, Symbol, Universe};
use crate::error::{Error, Result};

/// The update program of an abductive program in normal form, with its
/// update atoms and a map from each update atom back to its abducible.
#[derive(Clone, Debug, Default)]
pub struct UpdateProgram {
    pub rules: Program,
    /// `+L` atoms.
    pub ua_plus: BTreeSet<Literal>,
    /// `-L` atoms.
    pub ua_minus: BTreeSet<Literal>,
    /// Abducible (as it appears in the update program) to its `L̄` atom.
    pub bar_map: BTreeMap<Literal, Literal>,
    /// Update atom to the ground abducible of the normal form it changes.
    pub provenance: BTreeMap<Literal, Literal>,
    /// Stand-in names for abducible literals that other rules can derive.
    pub split: BTreeMap<Literal, Literal>,
}

impl UpdateProgram {
    pub fn update_atoms(&self) -> BTreeSet<Literal> {
        self.ua_plus.union(&self.ua_minus).cloned().collect()
    }
}

/// Builds the update program of `ap_n` with abducibles instantiated over
/// `universe`. See [`update_program_in_context`].
pub fn update_program(ap_n: &AbductiveProgram, universe: &Universe) -> Result<UpdateProgram> {
    update_program_in_context(ap_n, universe, &Program::new())
}

/// Builds `(K \ A) ∪ UR` where `UR` holds, per ground abducible `L`, the
/// choice `L :- not L̄. L̄ :- not L.` and either `-L :- not L.` (when `L` is
/// in `K`) or `+L :- L.` (otherwise).
///
/// An abducible literal that some remaining rule of `K` or of `context` (the
/// rules the update program will be combined with) can also derive is chosen
/// through a fresh name `A` with `L :- A.`, and the update rules are written
/// for `A`. Without this, `+L` would fire whenever `L` is merely derived, and
/// deleting `L` would be impossible whenever it is derived anyway.
pub fn update_program_in_context(
    ap_n: &AbductiveProgram,
    universe: &Universe,
    context: &Program,
) -> Result<UpdateProgram> {
    let mut abducibles = BTreeSet::new();
    for r in &ap_n.a {
        let lit = r
            .as_literal()
            .ok_or_else(|| Error::NonLiteralAbducible(r.to_string()))?;
        abducibles.extend(ground_literal(lit, universe)?);
    }
    let k_facts: Vec<&Literal> = ap_n.k.rules().filter_map(Rule::as_literal).collect();
    let in_k = |l: &Literal| k_facts.iter().any(|f| instance_of(f, l));

    let mut up = UpdateProgram::default();
    for r in &ap_n.k {
        match r.as_literal() {
            Some(l) if ground_literal(l, universe)?.iter().any(|g| abducibles.contains(g)) => {
                for g in ground_literal(l, universe)? {
                    if !abducibles.contains(&g) {
                        up.rules.insert(Rule::fact(g));
                    }
                }
            }
            _ => {
                up.rules.insert(r.clone());
            }
        }
    }

    let derivable = derivable_abducibles(&up.rules, context, &abducibles, universe)?;
    let mut split_index: BTreeMap<(Symbol, bool), usize> = BTreeMap::new();
    for l in &abducibles {
        let chosen = if derivable.contains(l) {
            let next = split_index.len() + 1;
            let j = *split_index
                .entry((l.predicate().clone(), l.negated))
                .or_insert(next);
            let a = names::split_name(j, l);
            up.rules.insert(Rule::new([l.clone()], [BodyElem::pos(a.clone())]));
            up.split.insert(a.clone(), l.clone());
            a
        } else {
            l.clone()
        };
        let bar = names::bar(&chosen);
        up.rules
            .insert(Rule::new([chosen.clone()], [BodyElem::naf(bar.clone())]));
        up.rules
            .insert(Rule::new([bar.clone()], [BodyElem::naf(chosen.clone())]));
        up.bar_map.insert(chosen.clone(), bar);
        if in_k(l) {
            let d = names::del(&chosen);
            up.rules
                .insert(Rule::new([d.clone()], [BodyElem::naf(chosen.clone())]));
            up.provenance.insert(d.clone(), l.clone());
            up.ua_minus.insert(d);
        } else {
            let i = names::ins(&chosen);
            up.rules
                .insert(Rule::new([i.clone()], [BodyElem::pos(chosen.clone())]));
            up.provenance.insert(i.clone(), l.clone());
            up.ua_plus.insert(i);
        }
    }
    Ok(up)
}

/// Ground abducibles that head some rule of `base ∪ context` whose positive
/// body could hold, ignoring NAF and taking every abducible as possible.
fn derivable_abducibles(
    base: &Program,
    context: &Program,
    abducibles: &BTreeSet<Literal>,
    universe: &Universe,
) -> Result<HashSet<Literal>> {
    let rules = ground(&base.union(context), universe)?;
    let rules: Vec<&Rule> = rules.rules().collect();
    let mut possible: HashSet<Literal> = abducibles.iter().cloned().collect();
    let mut changed = true;
    while changed {
        changed = false;
        for r in &rules {
            if r.positive_body().all(|l| possible.contains(l)) {
                for h in r.head() {
                    if possible.insert(h.clone()) {
                        changed = true;
                    }
                }
            }
        }
    }
    Ok(abducibles
        .iter()
        .filter(|l| {
            rules.iter().any(|r| {
                r.head().contains(l)
                    && !r.positive_body().any(|b| b == *l)
                    && r.positive_body().all(|b| possible.contains(b))
            })
        })
        .cloned()
        .collect())
}
