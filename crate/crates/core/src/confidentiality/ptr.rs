use crate::abduction::names;
use crate::edp::{BodyElem, Conjunction, Literal, Program, Rule};
use crate::error::{Error, Result};

/// Policy transformation rules for credulous users: one negative observation
/// per policy conjunction and a positive observation collecting their
/// absence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PtrProgram {
    pub rules: Program,
    pub neg_obs: Vec<Literal>,
    pub pos_obs: Literal,
    /// `:- not O+.`
    pub goal: Rule,
}

impl PtrProgram {
    /// `:- O+.`, the constraint of the skeptical check.
    pub fn anti_goal(&self) -> Rule {
        Rule::constraint([BodyElem::pos(self.pos_obs.clone())])
    }

    pub fn is_observation(&self, lit: &Literal) -> bool {
        *lit == self.pos_obs || self.neg_obs.contains(lit)
    }
}

pub fn ptr_cred(policy: &[Conjunction]) -> Result<PtrProgram> {
    if policy.is_empty() {
        return Err(Error::EmptyPolicy);
    }
    let mut rules = Program::new();
    let mut neg_obs = Vec::new();
    for (i, c) in policy.iter().enumerate() {
        let o = names::obs_neg(i + 1);
        rules.insert(Rule::new([o.clone()], c.elems().iter().cloned()));
        neg_obs.push(o);
    }
    let pos_obs = names::obs_pos();
    rules.insert(Rule::new(
        [pos_obs.clone()],
        neg_obs.iter().cloned().map(BodyElem::naf),
    ));
    let goal = Rule::constraint([BodyElem::naf(pos_obs.clone())]);
    Ok(PtrProgram {
        rules,
        neg_obs,
        pos_obs,
        goal,
    })
}
