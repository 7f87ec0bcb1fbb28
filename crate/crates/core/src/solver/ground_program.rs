use std::collections::HashMap;

use super::SolverConfig;
use crate::edp::{ground_rule, instance_count, Literal, Program, Universe};
use crate::error::{Error, Result};

pub(crate) type AtomId = u32;

#[derive(Clone, Debug)]
pub(crate) struct GroundRule {
    pub head: Vec<AtomId>,
    pub pos: Vec<AtomId>,
    pub neg: Vec<AtomId>,
    /// The rule had NAF literals before simplification stripped them.
    pub had_naf: bool,
}

/// A ground program over interned literals, simplified for search.
///
/// Rules whose positive body mentions a literal no rule can derive are
/// dropped, and NAF literals on such literals are removed (they always hold).
#[derive(Clone, Debug, Default)]
pub(crate) struct GroundProgram {
    pub atoms: Vec<Literal>,
    pub index: HashMap<Literal, AtomId>,
    pub rules: Vec<GroundRule>,
    /// Complementary literal of each atom, when interned.
    pub comp: Vec<Option<AtomId>>,
    /// Some ground constraint has no NAF literal; the contradictory set
    /// can then never be an answer set.
    pub naf_free_constraint: bool,
}

/// `|L_p|`: the number of ground literals over the signature of `p`.
pub(crate) fn literal_count(p: &Program, universe: &Universe) -> u64 {
    let n = universe.len() as u64;
    p.signature()
        .into_iter()
        .flat_map(|(_, arities)| arities.into_iter())
        .map(|a| n.checked_pow(a as u32).unwrap_or(u64::MAX).saturating_mul(2))
        .fold(0u64, u64::saturating_add)
}

impl GroundProgram {
    pub fn build(p: &Program, universe: &Universe, config: &SolverConfig) -> Result<Self> {
        let lits = literal_count(p, universe);
        if lits > config.max_ground_literals {
            return Err(Error::ResourceCap {
                what: "ground literals",
                limit: config.max_ground_literals,
                needed: lits,
            });
        }
        let rules_needed = p
            .rules()
            .map(|r| instance_count(r, universe.len()))
            .fold(0u64, u64::saturating_add);
        if rules_needed > config.max_ground_rules {
            return Err(Error::ResourceCap {
                what: "ground rules",
                limit: config.max_ground_rules,
                needed: rules_needed,
            });
        }

        let mut raw: Vec<(Vec<Literal>, Vec<Literal>, Vec<Literal>)> = Vec::new();
        let mut naf_free_constraint = false;
        for rule in p {
            for g in ground_rule(rule, universe)? {
                let neg: Vec<Literal> = g.naf_body().cloned().collect();
                if g.head().is_empty() && neg.is_empty() {
                    naf_free_constraint = true;
                }
                raw.push((g.head().to_vec(), g.positive_body().cloned().collect(), neg));
            }
        }

        // Literals some rule could derive, ignoring NAF.
        let mut possible: HashMap<&Literal, bool> = HashMap::new();
        let mut changed = true;
        while changed {
            changed = false;
            for (head, pos, _) in &raw {
                if pos.iter().all(|l| possible.contains_key(l)) {
                    for h in head {
                        if possible.insert(h, true).is_none() {
                            changed = true;
                        }
                    }
                }
            }
        }

        let mut gp = GroundProgram {
            naf_free_constraint,
            ..Default::default()
        };
        for (head, pos, neg) in &raw {
            if !pos.iter().all(|l| possible.contains_key(l)) {
                continue;
            }
            if head.iter().any(|h| pos.contains(h)) || neg.iter().any(|n| pos.contains(n)) {
                continue;
            }
            let head = head.iter().map(|l| gp.intern(l)).collect();
            let pos = pos.iter().map(|l| gp.intern(l)).collect();
            let kept_neg: Vec<AtomId> = neg
                .iter()
                .filter(|l| possible.contains_key(l))
                .map(|l| gp.intern(l))
                .collect();
            gp.rules.push(GroundRule {
                head,
                pos,
                neg: kept_neg,
                had_naf: !neg.is_empty(),
            });
        }
        gp.comp = gp
            .atoms
            .iter()
            .map(|l| gp.index.get(&l.complement()).copied())
            .collect();
        Ok(gp)
    }

    pub fn intern(&mut self, lit: &Literal) -> AtomId {
        if let Some(&id) = self.index.get(lit) {
            return id;
        }
        let id = self.atoms.len() as AtomId;
        self.atoms.push(lit.clone());
        self.index.insert(lit.clone(), id);
        id
    }

    pub fn atom(&self, lit: &Literal) -> Option<AtomId> {
        self.index.get(lit).copied()
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }
}
