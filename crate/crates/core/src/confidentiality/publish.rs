//! The publishing search.
//!
//! Candidates are the update-atom projections of consistent answer sets of
//! `P = UP ∪ prior ∪ PTR ∪ GR`, explored by increasing size. Each candidate
//! `(E, F)` is checked for the skeptical property: `(K \ F) ∪ E ∪ prior ∪
//! PTR ∪ {:- O+}` must have no consistent answer set, and `(K \ F) ∪ E ∪
//! prior` must be consistent. A passing candidate blocks all its supersets.
//! A failing candidate comes with a witness answer set `X` in which some
//! policy instance holds; the candidate is blocked together with every
//! variation that provably keeps a witness alive (see [`Neutrality`]), which
//! keeps irrelevant insertions and deletions from being enumerated one by
//! one.

use std::collections::{HashMap, HashSet};

use super::{build_pipeline, Mode, Pipeline, PublishConfig, Setup};
use crate::abduction::{apply_changeset, compress, names, ChangeSet};
use crate::edp::{ground, Interpretation, Literal, Program, Rule, Universe};
use crate::error::{Error, Result};
use crate::solver::search::{Cardinality, Clause, Extra, Flow, Search};
use crate::solver::Solver;

use super::verify::{verify, VerifyReport};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PublishSolution {
    /// The change on ground instances.
    pub changeset: ChangeSet,
    /// The same change with fully deleted rules of `K` written as in `K`.
    pub display: ChangeSet,
    pub k_pub: Program,
    /// Update atoms of the answer set the solution was read from.
    pub update_atoms: Vec<Literal>,
    pub verified: bool,
    pub report: VerifyReport,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NoSolutionReason {
    /// `P` has no consistent answer set: no change within the abducibles
    /// even makes the policy credulously underivable.
    GoalUnreachable,
    /// Candidates existed, but none passed the skeptical check.
    AllFailedSkeptical,
}

impl NoSolutionReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            NoSolutionReason::GoalUnreachable => "goal unreachable",
            NoSolutionReason::AllFailedSkeptical => "all candidates failed the skeptical check",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PublishStats {
    pub ground_atoms: usize,
    pub ground_rules: usize,
    pub update_atoms: usize,
    pub candidates: usize,
    pub nogoods: usize,
    pub branches: u64,
}

#[derive(Clone, Debug)]
pub struct PublishOutcome {
    pub solutions: Vec<PublishSolution>,
    pub reason: Option<NoSolutionReason>,
    pub stats: PublishStats,
    pub pipeline: Pipeline,
}

/// `(K \ F) ∪ E ∪ prior ∪ PTR ∪ {:- O+}` has no consistent answer set.
pub fn is_skeptical_solution(
    solver: &Solver,
    k: &Program,
    cs: &ChangeSet,
    prior: &Program,
    ptr: &super::PtrProgram,
    universe: &Universe,
) -> Result<bool> {
    let q = skeptical_program(k, cs, prior, ptr, universe)?;
    Ok(!solver.is_consistent_in(&q, universe)?)
}

fn skeptical_program(
    k: &Program,
    cs: &ChangeSet,
    prior: &Program,
    ptr: &super::PtrProgram,
    universe: &Universe,
) -> Result<Program> {
    let mut q = apply_changeset(k, cs, universe)?.union(prior).union(&ptr.rules);
    q.insert(ptr.anti_goal());
    Ok(q)
}

#[derive(Clone, Debug)]
struct UpdateInfo {
    id: u32,
    atom: Literal,
    insert: bool,
    /// Ground fact or rule instance the atom inserts or deletes.
    element: Rule,
}

enum Flip<'a> {
    Insert(&'a Literal),
    DeleteRule(&'a Rule),
    RestoreRule(&'a Rule),
    Never,
}

/// Decides which changes to a failing candidate keep its witness `X`, or
/// `X` plus the newly inserted literals, an answer set of the modified
/// skeptical program.
///
/// With `I` the inserted literals outside `X`, a change is neutral when:
/// - it inserts a literal already in `X`;
/// - it deletes a rule whose body is false in `X`;
/// - it inserts `L` whose complement is outside `X ∪ I`, that heads no rule
///   with a body true in `X`, and where every rule mentioning `L` in its body
///   stays false: some NAF literal of it lies in `X`, or some positive one
///   lies outside `X ∪ I`;
/// - it restores a rule whose head meets `X` or whose body stays false as
///   above.
///
/// Rules that stay deleted in every variation are left out of these checks.
///
/// Under all neutral changes at once, `X ∪ I` still satisfies the modified
/// program, any smaller model would shrink back to a model of the old reduct
/// inside `X`, and the leaking policy instance still holds.
struct Neutrality {
    head_occ: HashMap<Literal, Vec<usize>>,
    body_occ: HashMap<Literal, Vec<usize>>,
    rules: Vec<Rule>,
    index: HashMap<Rule, usize>,
}

impl Neutrality {
    fn new(potential: &Program) -> Self {
        let rules: Vec<Rule> = potential.rules().cloned().collect();
        let mut head_occ: HashMap<Literal, Vec<usize>> = HashMap::new();
        let mut body_occ: HashMap<Literal, Vec<usize>> = HashMap::new();
        for (i, r) in rules.iter().enumerate() {
            for h in r.head() {
                head_occ.entry(h.clone()).or_default().push(i);
            }
            for b in r.body() {
                let v = body_occ.entry(b.literal.clone()).or_default();
                if v.last() != Some(&i) {
                    v.push(i);
                }
            }
        }
        let index = rules.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();
        Neutrality {
            head_occ,
            body_occ,
            rules,
            index,
        }
    }

    fn body_true(r: &Rule, x: &Interpretation) -> bool {
        x.satisfies_body(r.body())
    }

    fn stays_false(r: &Rule, skip: Option<&Literal>, x: &Interpretation, inserted: &HashSet<Literal>) -> bool {
        r.body().iter().any(|b| {
            Some(&b.literal) != skip
                && if b.naf {
                    x.contains(&b.literal)
                } else {
                    !x.contains(&b.literal) && !inserted.contains(&b.literal)
                }
        })
    }

    fn insert_ok(&self, l: &Literal, x: &Interpretation, inserted: &HashSet<Literal>, absent: &HashSet<usize>) -> bool {
        if x.contains(l) {
            return true;
        }
        let c = l.complement();
        if x.contains(&c) || inserted.contains(&c) {
            return false;
        }
        let occ = |m: &HashMap<Literal, Vec<usize>>| m.get(l).cloned().unwrap_or_default();
        occ(&self.head_occ)
            .into_iter()
            .all(|i| absent.contains(&i) || !Self::body_true(&self.rules[i], x))
            && occ(&self.body_occ)
                .into_iter()
                .all(|i| absent.contains(&i) || Self::stays_false(&self.rules[i], Some(l), x, inserted))
    }

    fn restore_ok(r: &Rule, x: &Interpretation, inserted: &HashSet<Literal>) -> bool {
        r.head().iter().any(|h| x.contains(h)) || Self::stays_false(r, None, x, inserted)
    }

    fn flip(info: &UpdateInfo, current: bool) -> Flip<'_> {
        match (info.insert, current, info.element.as_literal()) {
            (true, false, Some(l)) => Flip::Insert(l),
            (false, false, None) => Flip::DeleteRule(&info.element),
            (false, true, Some(l)) => Flip::Insert(l),
            (false, true, None) => Flip::RestoreRule(&info.element),
            _ => Flip::Never,
        }
    }

    fn ok(&self, flip: &Flip<'_>, x: &Interpretation, inserted: &HashSet<Literal>, absent: &HashSet<usize>) -> bool {
        match flip {
            Flip::Insert(l) => self.insert_ok(l, x, inserted, absent),
            Flip::DeleteRule(r) => !Self::body_true(r, x),
            Flip::RestoreRule(r) => Self::restore_ok(r, x, inserted),
            Flip::Never => false,
        }
    }

    /// Groups `flips` by connectivity through literals outside `X`: a rule
    /// links the literals outside `X` it mentions, and a literal links its
    /// complement. A change touches its literal or its rule.
    fn components(&self, infos: &[UpdateInfo], current: &[bool], x: &Interpretation, flips: &[usize]) -> Vec<Component> {
        let n_rules = self.rules.len();
        let mut lit_ids: HashMap<Literal, usize> = HashMap::new();
        let mut uf = UnionFind::new(n_rules);
        let mut node = |l: &Literal, uf: &mut UnionFind| -> usize {
            *lit_ids.entry(l.clone()).or_insert_with(|| uf.push())
        };
        for (i, r) in self.rules.iter().enumerate() {
            for l in r.head().iter().chain(r.body().iter().map(|b| &b.literal)) {
                if !x.contains(l) {
                    let n = node(l, &mut uf);
                    uf.union(i, n);
                }
            }
        }
        let mut flip_node = Vec::new();
        for &u in flips {
            let n = match Self::flip(&infos[u], current[u]) {
                Flip::Insert(l) => Some(node(l, &mut uf)),
                Flip::DeleteRule(r) | Flip::RestoreRule(r) => self.index.get(r).copied(),
                Flip::Never => None,
            };
            flip_node.push(n);
        }
        let ids: Vec<(Literal, usize)> = lit_ids.iter().map(|(l, &n)| (l.clone(), n)).collect();
        for (l, n) in &ids {
            if let Some(&m) = lit_ids.get(&l.complement()) {
                uf.union(*n, m);
            }
        }

        let mut by_root: HashMap<usize, Component> = HashMap::new();
        let mut out = Vec::new();
        for (&u, n) in flips.iter().zip(&flip_node) {
            match n {
                Some(n) => by_root.entry(uf.find(*n)).or_default().flips.push(u),
                None => out.push(Component {
                    flips: vec![u],
                    placed: false,
                    ..Default::default()
                }),
            }
        }
        for i in 0..n_rules {
            if let Some(c) = by_root.get_mut(&uf.find(i)) {
                c.rules.push(i);
            }
        }
        for (l, n) in ids {
            if let Some(c) = by_root.get_mut(&uf.find(n)) {
                c.lits.push(l);
            }
        }
        out.extend(by_root.into_values().map(|mut c| {
            c.placed = true;
            c.lits.sort();
            c
        }));
        out
    }

    /// Whether every combination of the component's changes leaves a local
    /// answer set: a set `A` of its literals such that `X ∪ A` is a
    /// consistent minimal model of the component's rules reduced by `X ∪ A`.
    /// Rules of the candidate inside the component must not fire on `X`
    /// alone. Then `X` plus the local answer sets of all such components
    /// stays an answer set of the modified skeptical program.
    fn component_free(
        &self,
        c: &Component,
        infos: &[UpdateInfo],
        current: &[bool],
        x: &Interpretation,
        absent: &HashSet<usize>,
    ) -> bool {
        const MAX_FLIPS: usize = 6;
        const MAX_LITS: usize = 10;
        const MAX_RULES: usize = 64;
        if !c.placed || c.flips.len() > MAX_FLIPS || c.lits.len() > MAX_LITS || c.rules.len() > MAX_RULES {
            return false;
        }
        let bit = |l: &Literal| c.lits.binary_search(l).ok().map(|i| 1u32 << i);
        let mut forbidden = 0u32;
        let mut pairs = Vec::new();
        for (i, l) in c.lits.iter().enumerate() {
            let comp = l.complement();
            if x.contains(&comp) {
                forbidden |= 1 << i;
            } else if let Some(b) = bit(&comp) {
                if !l.negated {
                    pairs.push((1u32 << i) | b);
                }
            }
        }

        let mut rule_flip: HashMap<usize, usize> = HashMap::new();
        let mut fact_flip: Vec<(usize, u32)> = Vec::new();
        for (k, &u) in c.flips.iter().enumerate() {
            match Self::flip(&infos[u], current[u]) {
                Flip::Insert(l) => match bit(l) {
                    Some(b) => fact_flip.push((k, b)),
                    None => return false,
                },
                Flip::DeleteRule(r) | Flip::RestoreRule(r) => match self.index.get(r) {
                    Some(&i) => {
                        rule_flip.insert(i, k);
                    }
                    None => return false,
                },
                Flip::Never => return false,
            }
        }

        // (rule, pos, naf, head) over the component's literals; rules that
        // never matter under any `A` are dropped.
        let mut compiled: Vec<(usize, u32, u32, u32)> = Vec::new();
        for &i in &c.rules {
            let r = &self.rules[i];
            let in_q = !absent.contains(&i);
            let gated = r.positive_body().any(|l| !x.contains(l));
            let blocked = r.naf_body().any(|l| x.contains(l));
            if in_q && !gated && !blocked {
                return false;
            }
            if blocked || r.head().iter().any(|l| x.contains(l)) {
                continue;
            }
            let mask = |it: &mut dyn Iterator<Item = &Literal>| {
                let mut m = 0u32;
                for l in it {
                    if !x.contains(l) {
                        m |= bit(l).expect("literal outside X lies in its component");
                    }
                }
                m
            };
            let pos = mask(&mut r.positive_body());
            let naf = mask(&mut r.naf_body());
            let head = mask(&mut r.head().iter());
            compiled.push((i, pos, naf, head));
        }

        let n = c.lits.len();
        let mut sets: Vec<u32> = (0..1u32 << n)
            .filter(|a| a & forbidden == 0 && pairs.iter().all(|p| a & p != *p))
            .collect();
        sets.sort_by_key(|a| a.count_ones());

        (0..1u32 << c.flips.len()).all(|s| {
            let present = |i: usize| match rule_flip.get(&i) {
                Some(&k) => {
                    let deleted = current[c.flips[k]] != (s >> k & 1 == 1);
                    !deleted
                }
                None => !absent.contains(&i),
            };
            let facts = fact_flip
                .iter()
                .filter(|(k, _)| s >> k & 1 == 1)
                .fold(0u32, |m, (_, b)| m | b);
            let rules: Vec<(u32, u32, u32)> = compiled
                .iter()
                .filter(|(i, ..)| present(*i))
                .map(|&(_, p, n, h)| (p, n, h))
                .collect();
            sets.iter().any(|&a| {
                if a & facts != facts {
                    return false;
                }
                let reduct: Vec<(u32, u32)> = rules.iter().filter(|r| r.1 & a == 0).map(|r| (r.0, r.2)).collect();
                let model = |m: u32| m & facts == facts && reduct.iter().all(|&(p, h)| p & m != p || h & m != 0);
                if !model(a) {
                    return false;
                }
                let mut sub = a.wrapping_sub(1) & a;
                while a != 0 {
                    if model(sub) {
                        return false;
                    }
                    if sub == 0 {
                        break;
                    }
                    sub = (sub - 1) & a;
                }
                true
            })
        })
    }

    /// Clause over the update atoms excluding the candidate and all its
    /// neutral variations.
    fn nogood(&self, infos: &[UpdateInfo], current: &[bool], x: &Interpretation) -> Clause {
        let mut free = vec![false; infos.len()];
        // Rules deleted by the candidate whose deletion is not free: they
        // are missing from every variation the nogood covers.
        let mut absent: HashSet<usize> = infos
            .iter()
            .zip(current)
            .filter(|(info, &c)| c && !info.insert && info.element.as_literal().is_none())
            .filter_map(|(info, _)| self.index.get(&info.element).copied())
            .collect();
        let deleted = absent.clone();

        let mut open = Vec::new();
        for u in 0..infos.len() {
            match Self::flip(&infos[u], current[u]) {
                Flip::Never => {}
                Flip::Insert(l) if x.contains(l) => free[u] = true,
                _ => open.push(u),
            }
        }
        let mut rest = Vec::new();
        for c in self.components(infos, current, x, &open) {
            if self.component_free(&c, infos, current, x, &deleted) {
                for &u in &c.flips {
                    free[u] = true;
                    if let Flip::RestoreRule(r) = Self::flip(&infos[u], current[u]) {
                        if let Some(i) = self.index.get(r) {
                            absent.remove(i);
                        }
                    }
                }
            } else {
                rest.extend(c.flips);
            }
        }

        // Changes in the remaining components, one at a time.
        rest.sort_unstable();
        let mut done: Vec<usize> = Vec::new();
        let mut inserted: HashSet<Literal> = HashSet::new();
        for u in rest {
            let flip = Self::flip(&infos[u], current[u]);
            let recheck = |ins: &HashSet<Literal>, abs: &HashSet<usize>| {
                done.iter()
                    .all(|&v| self.ok(&Self::flip(&infos[v], current[v]), x, ins, abs))
            };
            let mut ins = inserted.clone();
            let mut abs = absent.clone();
            match &flip {
                Flip::Insert(l) => {
                    ins.insert((*l).clone());
                }
                Flip::RestoreRule(r) => {
                    if let Some(i) = self.index.get(*r) {
                        abs.remove(i);
                    }
                }
                _ => {}
            }
            if self.ok(&flip, x, &ins, &abs) && recheck(&ins, &abs) {
                free[u] = true;
                done.push(u);
                inserted = ins;
                absent = abs;
            }
        }
        infos
            .iter()
            .zip(current)
            .zip(&free)
            .filter(|(_, &f)| !f)
            .map(|((info, &c), _)| (info.id, !c))
            .collect()
    }
}

/// Changes connected through literals outside the witness, with those
/// literals and the rules mentioning them.
#[derive(Default)]
struct Component {
    flips: Vec<usize>,
    lits: Vec<Literal>,
    rules: Vec<usize>,
    /// False for a change whose rule is unknown to the check.
    placed: bool,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn push(&mut self) -> usize {
        self.parent.push(self.parent.len());
        self.parent.len() - 1
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.parent[a] = b;
        }
    }
}

pub fn publish(setup: &Setup, mode: Mode, config: &PublishConfig) -> Result<PublishOutcome> {
    let solver = Solver::new(config.solver);
    let pl = build_pipeline(setup, mode, config)?;
    let u = &pl.universe;

    if !solver.is_consistent_in(&setup.k.union(&setup.prior), u)? {
        return Err(Error::InconsistentInput);
    }

    let gp = solver.prepare(&pl.program, u)?;
    let mut infos: Vec<UpdateInfo> = Vec::new();
    for atom in pl.update.update_atoms() {
        if let Some(id) = gp.atom(&atom) {
            let source = &pl.update.provenance[&atom];
            infos.push(UpdateInfo {
                id,
                insert: names::is_insert_atom(&atom),
                element: pl.names.decode(source),
                atom,
            });
        }
    }
    let ids: Vec<u32> = infos.iter().map(|i| i.id).collect();
    let mut stats = PublishStats {
        ground_atoms: gp.len(),
        ground_rules: gp.rules.len(),
        update_atoms: infos.len(),
        ..Default::default()
    };
    log::info!(
        "publish: {} ground atoms, {} ground rules, {} update atoms",
        stats.ground_atoms,
        stats.ground_rules,
        stats.update_atoms
    );

    let mut potential = ground(&setup.k.union(&setup.prior).union(&pl.ptr.rules), u)?;
    potential.insert(pl.ptr.anti_goal());
    let neutrality = Neutrality::new(&potential);

    let mut clauses: Vec<Clause> = Vec::new();
    let mut passing: Vec<Vec<bool>> = Vec::new();
    let mut goal_reachable = false;
    let total = ids.len();

    let find = |clauses: &[Clause], min: usize, max: usize, stats: &mut PublishStats| -> Result<Option<Vec<bool>>> {
        let extra = Extra {
            clauses: clauses.to_vec(),
            cards: vec![Cardinality {
                atoms: ids.clone(),
                min,
                max,
            }],
        };
        let mut search = Search::new(&gp, &extra, &ids, config.solver.max_branches.saturating_sub(stats.branches));
        let mut found = None;
        search.run(&mut |s| {
            found = Some(ids.iter().map(|&i| s[i as usize]).collect());
            Flow::Stop
        })?;
        stats.branches += search.branches();
        Ok(found)
    };

    'levels: for k in 0..=total {
        if find(&clauses, k, total, &mut stats)?.is_none() {
            break;
        }
        goal_reachable = true;
        while let Some(current) = find(&clauses, k, k, &mut stats)? {
            stats.candidates += 1;
            let cs = changeset_of(&infos, &current);
            let q = skeptical_program(&setup.k, &cs, &setup.prior, &pl.ptr, u)?;
            match solver.first_answer_set_in(&q, u)? {
                Some(x) => {
                    let clause = neutrality.nogood(&infos, &current, &x);
                    log::debug!("candidate {cs} fails; nogood over {} of {} atoms", clause.len(), total);
                    stats.nogoods += 1;
                    let empty = clause.is_empty();
                    clauses.push(clause);
                    if empty {
                        break 'levels;
                    }
                }
                None => {
                    let k_pub = apply_changeset(&setup.k, &cs, u)?;
                    if solver.is_consistent_in(&k_pub.union(&setup.prior), u)? {
                        log::debug!("candidate {cs} passes");
                        clauses.push(
                            ids.iter()
                                .zip(&current)
                                .filter(|(_, &c)| c)
                                .map(|(&id, _)| (id, false))
                                .collect(),
                        );
                        passing.push(current);
                    } else {
                        log::debug!("candidate {cs} makes the published program inconsistent");
                        clauses.push(ids.iter().zip(&current).map(|(&id, &c)| (id, !c)).collect());
                    }
                }
            }
        }
    }

    let mut solutions = Vec::new();
    for current in &passing {
        let cs = changeset_of(&infos, current);
        let k_pub = apply_changeset(&setup.k, &cs, u)?;
        let report = verify(&solver, &k_pub, &setup.prior, &pl.policy, u)?;
        let display = ChangeSet::new(cs.e.clone(), compress(&cs.f, &setup.k, u)?);
        solutions.push(PublishSolution {
            update_atoms: infos
                .iter()
                .zip(current)
                .filter(|(_, &c)| c)
                .map(|(i, _)| i.atom.clone())
                .collect(),
            verified: report.passed(),
            changeset: cs,
            display,
            k_pub,
            report,
        });
    }
    solutions.sort_by(|a, b| a.changeset.cmp(&b.changeset));
    solutions.dedup_by(|a, b| a.changeset == b.changeset);

    let reason = if !solutions.is_empty() {
        None
    } else if goal_reachable {
        Some(NoSolutionReason::AllFailedSkeptical)
    } else {
        Some(NoSolutionReason::GoalUnreachable)
    };
    Ok(PublishOutcome {
        solutions,
        reason,
        stats,
        pipeline: pl,
    })
}

fn changeset_of(infos: &[UpdateInfo], current: &[bool]) -> ChangeSet {
    let mut cs = ChangeSet::default();
    for (info, &c) in infos.iter().zip(current) {
        if c {
            if info.insert {
                cs.e.insert(info.element.clone());
            } else {
                cs.f.insert(info.element.clone());
            }
        }
    }
    cs
}
