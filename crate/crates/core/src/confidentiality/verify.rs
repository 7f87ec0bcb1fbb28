use std::collections::BTreeSet;

use crate::abduction::{apply_changeset, ChangeSet};
use crate::edp::{Conjunction, Program, Rule, Universe};
use crate::error::{Error, Result};
use crate::solver::{cred_over, Solver};

/// Credulous responses of each policy conjunction in `K^pub ∪ prior`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub consistent: bool,
    /// One entry per policy conjunction, in policy order.
    pub responses: Vec<(Conjunction, BTreeSet<Conjunction>)>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.consistent && self.responses.iter().all(|(_, r)| r.is_empty())
    }

    pub fn leaks(&self) -> impl Iterator<Item = &Conjunction> {
        self.responses.iter().flat_map(|(_, r)| r.iter())
    }
}

/// Checks that `k_pub ∪ prior` is consistent and that no instance of a
/// policy conjunction over `universe` holds in any of its answer sets.
pub fn verify(
    solver: &Solver,
    k_pub: &Program,
    prior: &Program,
    policy: &[Conjunction],
    universe: &Universe,
) -> Result<VerifyReport> {
    let sets = solver.answer_sets_in(&k_pub.union(prior), universe)?;
    let consistent = sets.is_consistent();
    let mut responses = Vec::new();
    for c in policy {
        let r = if consistent {
            cred_over(&sets, c, universe)?
        } else {
            BTreeSet::new()
        };
        responses.push((c.clone(), r));
    }
    Ok(VerifyReport {
        consistent,
        responses,
    })
}

/// Whether no proper part of `cs` already yields a confidentiality-preserving
/// program. Checks all `2^|cs|` sub-change-sets, up to `cap` of them.
pub fn minimality_audit(
    solver: &Solver,
    k: &Program,
    prior: &Program,
    policy: &[Conjunction],
    universe: &Universe,
    cs: &ChangeSet,
    cap: u64,
) -> Result<bool> {
    let elements: Vec<(bool, Rule)> = cs
        .e
        .rules()
        .map(|r| (true, r.clone()))
        .chain(cs.f.rules().map(|r| (false, r.clone())))
        .collect();
    let n = elements.len();
    let count = 1u64.checked_shl(n as u32).unwrap_or(u64::MAX);
    if count > cap {
        return Err(Error::ResourceCap {
            what: "minimality audit sub-change-sets",
            limit: cap,
            needed: count,
        });
    }
    for mask in 0..count - 1 {
        let mut sub = ChangeSet::default();
        for (i, (insert, r)) in elements.iter().enumerate() {
            if mask >> i & 1 == 1 {
                if *insert {
                    sub.e.insert(r.clone());
                } else {
                    sub.f.insert(r.clone());
                }
            }
        }
        let k_pub = apply_changeset(k, &sub, universe)?;
        if verify(solver, &k_pub, prior, policy, universe)?.passed() {
            return Ok(false);
        }
    }
    Ok(true)
}
