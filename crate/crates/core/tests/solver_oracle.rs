mod common;

use aspconf_core::edp::{Program, Universe};
use aspconf_core::parser::parse_program_str;
use aspconf_core::solver::{language_size, Solver};
use common::{program_fixtures, Gen, SOLVER_SHAPE};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

/// `None` when the program is outside the oracle's range.
fn agree(p: &Program) -> Option<bool> {
    let u = Universe::of(p);
    if language_size(p, &u) > 16 {
        return None;
    }
    agree_in(p, &u)
}

fn agree_in(p: &Program, u: &Universe) -> Option<bool> {
    let solver = Solver::default();
    let fast = solver.answer_sets_in(p, u).ok()?;
    let slow = solver.brute_force_answer_sets_in(p, u).ok()?;
    Some(fast == slow)
}

#[test]
fn fixtures_agree_with_brute_force() {
    for (name, text) in program_fixtures() {
        let p = parse_program_str(&text).unwrap();
        assert_eq!(agree_in(&p, &Universe::of(&p)), Some(true), "{name}");
    }
}

#[test]
fn random_programs_agree_with_brute_force() {
    let mut rng = StdRng::seed_from_u64(7);
    let mut checked = 0;
    let mut attempts = 0;
    while checked < 600 {
        attempts += 1;
        assert!(attempts < 20_000, "generator produced too few small programs");
        let p = Gen::new(&mut rng, SOLVER_SHAPE).program(true);
        match agree(&p) {
            Some(true) => checked += 1,
            Some(false) => panic!("solver disagrees with brute force on\n{p}"),
            None => {}
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn solver_matches_oracle(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let p = Gen::new(&mut rng, SOLVER_SHAPE).program(true);
        prop_assert_ne!(agree(&p), Some(false), "{}", p);
    }

    #[test]
    fn answer_sets_are_consistent_or_the_whole_language(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let p = Gen::new(&mut rng, SOLVER_SHAPE).program(true);
        let u = Universe::of(&p);
        if let Ok(sets) = Solver::default().answer_sets_in(&p, &u) {
            for s in sets.iter() {
                prop_assert!(s.is_contradictory() || !s.has_complementary_pair());
            }
            // At most one answer set when the contradictory set is one.
            if sets.iter().any(|s| s.is_contradictory()) {
                prop_assert_eq!(sets.len(), 1);
            }
        }
    }
}
