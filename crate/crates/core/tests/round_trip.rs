mod common;

use aspconf_core::parser::{parse_program_str, serialize};
use common::{program_fixtures, Gen, SOLVER_SHAPE};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn fixpoint(text: &str) -> Result<(), String> {
    let p = parse_program_str(text).map_err(|e| e.to_string())?;
    let s = serialize(&p).map_err(|e| e.to_string())?;
    let q = parse_program_str(&s).map_err(|e| format!("{e} in\n{s}"))?;
    if p != q {
        return Err(format!("reparse differs:\n{s}"));
    }
    if serialize(&q).unwrap() != s {
        return Err("serialization is not stable".into());
    }
    Ok(())
}

#[test]
fn fixtures_round_trip() {
    for (name, text) in program_fixtures() {
        fixpoint(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}

#[test]
fn random_programs_round_trip() {
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..1200 {
        let p = Gen::new(&mut rng, SOLVER_SHAPE).program(true);
        let text = serialize(&p).unwrap();
        fixpoint(&text).unwrap();
        assert_eq!(parse_program_str(&text).unwrap(), p);
    }
}

proptest! {
    #[test]
    fn serialize_parse_is_identity(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let p = Gen::new(&mut rng, SOLVER_SHAPE).program(true);
        let text = serialize(&p).unwrap();
        prop_assert_eq!(parse_program_str(&text).unwrap(), p);
    }
}
