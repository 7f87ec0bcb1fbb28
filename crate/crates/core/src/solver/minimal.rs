use super::ground_program::GroundProgram;

type Lit = (usize, bool);

/// `s` is a model of the program; is it a subset-minimal model of the reduct
/// `P^s`?
pub(crate) fn is_minimal_model(gp: &GroundProgram, s: &[bool]) -> bool {
    let in_s = |a: u32| s[a as usize];
    let relevant: Vec<_> = gp
        .rules
        .iter()
        .filter(|r| !r.neg.iter().any(|&n| in_s(n)) && r.pos.iter().all(|&p| in_s(p)))
        .collect();

    if relevant
        .iter()
        .all(|r| r.head.iter().filter(|&&h| in_s(h)).count() <= 1)
    {
        // Definite over s: the least model is the only candidate.
        let mut m = vec![false; s.len()];
        let mut changed = true;
        while changed {
            changed = false;
            for r in &relevant {
                if let Some(&h) = r.head.iter().find(|&&h| in_s(h)) {
                    if !m[h as usize] && r.pos.iter().all(|&p| m[p as usize]) {
                        m[h as usize] = true;
                        changed = true;
                    }
                }
            }
        }
        return m == s;
    }

    let members: Vec<usize> = (0..s.len()).filter(|&i| s[i]).collect();
    let mut var_of = vec![usize::MAX; s.len()];
    for (v, &a) in members.iter().enumerate() {
        var_of[a] = v;
    }
    let mut clauses: Vec<Vec<Lit>> = relevant
        .iter()
        .map(|r| {
            r.pos
                .iter()
                .map(|&p| (var_of[p as usize], false))
                .chain(
                    r.head
                        .iter()
                        .filter(|&&h| in_s(h))
                        .map(|&h| (var_of[h as usize], true)),
                )
                .collect()
        })
        .collect();
    clauses.push((0..members.len()).map(|v| (v, false)).collect());
    find_model(members.len(), &clauses).is_none()
}

/// Does the NAF-free part of the program have a model without complementary
/// literals?
pub(crate) fn naf_free_part_has_consistent_model(gp: &GroundProgram) -> bool {
    let mut clauses: Vec<Vec<Lit>> = gp
        .rules
        .iter()
        .filter(|r| !r.had_naf)
        .map(|r| {
            r.pos
                .iter()
                .map(|&p| (p as usize, false))
                .chain(r.head.iter().map(|&h| (h as usize, true)))
                .collect()
        })
        .collect();
    for (x, c) in gp.comp.iter().enumerate() {
        if let Some(y) = *c {
            if x < y as usize {
                clauses.push(vec![(x, false), (y as usize, false)]);
            }
        }
    }
    find_model(gp.len(), &clauses).is_some()
}

/// Plain DPLL with unit propagation; inputs here are small.
pub(crate) fn find_model(nvars: usize, clauses: &[Vec<Lit>]) -> Option<Vec<bool>> {
    let mut assign: Vec<Option<bool>> = vec![None; nvars];
    if dpll(clauses, &mut assign) {
        Some(assign.into_iter().map(|v| v.unwrap_or(false)).collect())
    } else {
        None
    }
}

fn dpll(clauses: &[Vec<Lit>], assign: &mut Vec<Option<bool>>) -> bool {
    loop {
        let mut unit = None;
        for c in clauses {
            let mut unknown = 0;
            let mut last = None;
            let mut sat = false;
            for &(v, want) in c {
                match assign[v] {
                    Some(b) if b == want => {
                        sat = true;
                        break;
                    }
                    Some(_) => {}
                    None => {
                        unknown += 1;
                        last = Some((v, want));
                    }
                }
            }
            if sat {
                continue;
            }
            match unknown {
                0 => return false,
                1 => {
                    unit = last;
                    break;
                }
                _ => {}
            }
        }
        match unit {
            Some((v, want)) => assign[v] = Some(want),
            None => break,
        }
    }
    let Some(v) = assign.iter().position(|a| a.is_none()) else {
        return true;
    };
    for b in [false, true] {
        let mut next = assign.clone();
        next[v] = Some(b);
        if dpll(clauses, &mut next) {
            *assign = next;
            return true;
        }
    }
    false
}
