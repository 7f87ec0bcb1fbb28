//! Backtracking search for consistent answer sets of a ground program.
//!
//! Each node propagates to a fixpoint over rule bodies, rule satisfaction,
//! support (an atom needs a rule that can derive it alone), complementary
//! literals, and any extra clauses or cardinality bounds. Total assignments
//! are then checked for minimality against the reduct.

use super::ground_program::{AtomId, GroundProgram};
use super::minimal::is_minimal_model;
use crate::error::{Error, Result};

const UNK: i8 = 0;
const T: i8 = 1;
const F: i8 = -1;

/// Disjunction of atoms required to take the given truth values.
pub(crate) type Clause = Vec<(AtomId, bool)>;

/// Between `min` and `max` of `atoms` are true.
#[derive(Clone, Debug)]
pub(crate) struct Cardinality {
    pub atoms: Vec<AtomId>,
    pub min: usize,
    pub max: usize,
}

#[derive(Clone, Debug, Default)]
pub(crate) struct Extra {
    pub clauses: Vec<Clause>,
    pub cards: Vec<Cardinality>,
}

pub(crate) enum Flow {
    Continue,
    Stop,
}

pub(crate) struct Search<'a> {
    gp: &'a GroundProgram,
    extra: &'a Extra,
    head_occ: Vec<Vec<usize>>,
    order: Vec<AtomId>,
    branches: u64,
    max_branches: u64,
}

impl<'a> Search<'a> {
    /// `first` lists atoms to branch on before all others, in order.
    pub fn new(gp: &'a GroundProgram, extra: &'a Extra, first: &[AtomId], max_branches: u64) -> Self {
        let mut head_occ = vec![Vec::new(); gp.len()];
        for (i, r) in gp.rules.iter().enumerate() {
            for &h in &r.head {
                head_occ[h as usize].push(i);
            }
        }
        let mut seen = vec![false; gp.len()];
        let mut order = Vec::with_capacity(gp.len());
        for &a in first.iter().chain((0..gp.len() as AtomId).collect::<Vec<_>>().iter()) {
            if !seen[a as usize] {
                seen[a as usize] = true;
                order.push(a);
            }
        }
        Search {
            gp,
            extra,
            head_occ,
            order,
            branches: 0,
            max_branches,
        }
    }

    pub fn branches(&self) -> u64 {
        self.branches
    }

    /// Calls `visit` with each consistent answer set (as a membership vector)
    /// until it returns `Flow::Stop` or the space is exhausted. Returns
    /// whether the search was stopped early.
    pub fn run(&mut self, visit: &mut dyn FnMut(&[bool]) -> Flow) -> Result<bool> {
        let atoms = vec![UNK; self.gp.len()];
        let bodies = vec![UNK; self.gp.rules.len()];
        self.descend(atoms, bodies, visit)
    }

    fn descend(
        &mut self,
        mut atoms: Vec<i8>,
        mut bodies: Vec<i8>,
        visit: &mut dyn FnMut(&[bool]) -> Flow,
    ) -> Result<bool> {
        if !self.propagate(&mut atoms, &mut bodies) {
            return Ok(false);
        }
        let next = self.order.iter().copied().find(|&a| atoms[a as usize] == UNK);
        match next {
            None => {
                let s: Vec<bool> = atoms.iter().map(|&v| v == T).collect();
                if is_minimal_model(self.gp, &s) {
                    if let Flow::Stop = visit(&s) {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
            Some(a) => {
                self.branches += 1;
                if self.branches > self.max_branches {
                    return Err(Error::ResourceCap {
                        what: "search branches",
                        limit: self.max_branches,
                        needed: self.branches,
                    });
                }
                for value in [F, T] {
                    let mut a2 = atoms.clone();
                    a2[a as usize] = value;
                    if self.descend(a2, bodies.clone(), visit)? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
        }
    }

    fn propagate(&self, atoms: &mut [i8], bodies: &mut [i8]) -> bool {
        let gp = self.gp;
        loop {
            let mut changed = false;
            for (ri, r) in gp.rules.iter().enumerate() {
                let mut any_false = false;
                let mut unknown = 0;
                let mut last = None;
                for &p in &r.pos {
                    match atoms[p as usize] {
                        F => any_false = true,
                        UNK => {
                            unknown += 1;
                            last = Some((p, F));
                        }
                        _ => {}
                    }
                }
                for &n in &r.neg {
                    match atoms[n as usize] {
                        T => any_false = true,
                        UNK => {
                            unknown += 1;
                            last = Some((n, T));
                        }
                        _ => {}
                    }
                }
                let computed = if any_false {
                    F
                } else if unknown == 0 {
                    T
                } else {
                    UNK
                };
                if computed != UNK {
                    if bodies[ri] == -computed {
                        return false;
                    }
                    if bodies[ri] == UNK {
                        bodies[ri] = computed;
                        changed = true;
                    }
                } else if bodies[ri] == T {
                    for &p in &r.pos {
                        if atoms[p as usize] == UNK {
                            atoms[p as usize] = T;
                        }
                    }
                    for &n in &r.neg {
                        if atoms[n as usize] == UNK {
                            atoms[n as usize] = F;
                        }
                    }
                    changed = true;
                } else if bodies[ri] == F && unknown == 1 {
                    let (a, v) = last.unwrap();
                    atoms[a as usize] = v;
                    changed = true;
                }

                let mut head_true = false;
                let mut head_unknown = 0;
                let mut last_head = 0;
                for &h in &r.head {
                    match atoms[h as usize] {
                        T => head_true = true,
                        UNK => {
                            head_unknown += 1;
                            last_head = h;
                        }
                        _ => {}
                    }
                }
                if !head_true {
                    if head_unknown == 0 {
                        if bodies[ri] == T {
                            return false;
                        }
                        if bodies[ri] == UNK {
                            bodies[ri] = F;
                            changed = true;
                        }
                    } else if head_unknown == 1 && bodies[ri] == T {
                        atoms[last_head as usize] = T;
                        changed = true;
                    }
                }
            }

            for x in 0..gp.len() {
                let mut count = 0;
                let mut last = 0;
                for &ri in &self.head_occ[x] {
                    if bodies[ri] == F {
                        continue;
                    }
                    let r = &gp.rules[ri];
                    if r.head.iter().any(|&h| h as usize != x && atoms[h as usize] == T) {
                        continue;
                    }
                    count += 1;
                    last = ri;
                }
                if count == 0 {
                    if atoms[x] == T {
                        return false;
                    }
                    if atoms[x] == UNK {
                        atoms[x] = F;
                        changed = true;
                    }
                } else if count == 1 && atoms[x] == T {
                    if bodies[last] == UNK {
                        bodies[last] = T;
                        changed = true;
                    }
                    for &h in &gp.rules[last].head {
                        if h as usize != x && atoms[h as usize] == UNK {
                            atoms[h as usize] = F;
                            changed = true;
                        }
                    }
                }
                if atoms[x] == T {
                    if let Some(y) = gp.comp[x] {
                        match atoms[y as usize] {
                            T => return false,
                            UNK => {
                                atoms[y as usize] = F;
                                changed = true;
                            }
                            _ => {}
                        }
                    }
                }
            }

            for clause in &self.extra.clauses {
                let mut sat = false;
                let mut unknown = 0;
                let mut last = None;
                for &(a, want) in clause {
                    match atoms[a as usize] {
                        UNK => {
                            unknown += 1;
                            last = Some((a, want));
                        }
                        v => {
                            if (v == T) == want {
                                sat = true;
                                break;
                            }
                        }
                    }
                }
                if sat {
                    continue;
                }
                if unknown == 0 {
                    return false;
                }
                if unknown == 1 {
                    let (a, want) = last.unwrap();
                    atoms[a as usize] = if want { T } else { F };
                    changed = true;
                }
            }

            for card in &self.extra.cards {
                let t = card.atoms.iter().filter(|&&a| atoms[a as usize] == T).count();
                let u = card.atoms.iter().filter(|&&a| atoms[a as usize] == UNK).count();
                if t > card.max || t + u < card.min {
                    return false;
                }
                if u > 0 && (t == card.max || t + u == card.min) {
                    let v = if t == card.max { F } else { T };
                    for &a in &card.atoms {
                        if atoms[a as usize] == UNK {
                            atoms[a as usize] = v;
                        }
                    }
                    changed = true;
                }
            }

            if !changed {
                return true;
            }
        }
    }
}
