//! Acceptance criteria, one PASS/FAIL line each. The CLI is driven as a
//! subprocess; the random checks call the library against brute-force
//! oracles.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::SeedableRng;
use serde_json::Value;

use aspconf_core::abduction::ChangeSet;
use aspconf_core::confidentiality::{minimality_audit, publish, Mode, PublishConfig, PublishOutcome, Setup};
use aspconf_core::edp::{Program, Universe};
use aspconf_core::parser::{parse_internal_program_str, parse_policy_str, parse_program_str, serialize};
use aspconf_core::solver::{language_size, Solver};
use aspconf_core::Error;
use common::{brute_force_publish, oracle_preserves, program_fixtures, Gen, PUBLISH_SHAPE, SOLVER_SHAPE};

type Check = Result<String, String>;

const R_PETE: &str = "ill(pete,aids) ; ill(pete,flu) :- treat(pete,medi1), not treat(pete,medi2)";

fn running(name: &str) -> String {
    common::fixtures_dir().join("running").join(name).display().to_string()
}

fn fixture(path: &str) -> String {
    std::fs::read_to_string(common::fixtures_dir().join(path)).unwrap()
}

/// Runs the binary with `--json` and returns exit code, parsed stdout and
/// wall time.
fn aspconf(args: &[&str]) -> Result<(i32, Value, Duration), String> {
    let started = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_aspconf"))
        .args(args)
        .arg("--json")
        .output()
        .map_err(|e| e.to_string())?;
    let elapsed = started.elapsed();
    let code = out.status.code().unwrap_or(-1);
    let json = serde_json::from_slice(&out.stdout).map_err(|e| {
        format!(
            "exit {code}, unparsable stdout ({e}); stderr: {}",
            String::from_utf8_lossy(&out.stderr)
        )
    })?;
    Ok((code, json, elapsed))
}

fn strings(v: &Value) -> BTreeSet<String> {
    v.as_array()
        .map(|a| a.iter().filter_map(|s| s.as_str().map(String::from)).collect())
        .unwrap_or_default()
}

fn set(items: &[&str]) -> BTreeSet<String> {
    items.iter().map(|s| s.to_string()).collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed <= limit, || format!("took {elapsed:?}, limit {limit:?}"))
}

fn answer_sets(v: &Value) -> BTreeSet<BTreeSet<String>> {
    v["answer_sets"].as_array().into_iter().flatten().map(strings).collect()
}

fn criterion_1() -> Check {
    let s1 = set(&["ill(mary,aids)", "ill(pete,aids)", "treat(pete,medi1)"]);
    let s2 = set(&["ill(mary,aids)", "ill(pete,flu)", "treat(pete,medi1)"]);
    let s3 = set(&["ill(mary,aids)", "ill(pete,aids)", "-ill(pete,flu)", "treat(pete,medi1)"]);
    let (code, v, t1) = aspconf(&["solve", "--kb", &running("k.lp")])?;
    ensure(code == 0, || format!("exit {code}"))?;
    let got = answer_sets(&v);
    ensure(got == [s1, s2].into_iter().collect(), || format!("K: {got:?}"))?;
    let (code, v, t2) = aspconf(&["solve", "--kb", &running("k_prime.lp")])?;
    ensure(code == 0, || format!("exit {code}"))?;
    let got = answer_sets(&v);
    ensure(got == [s3].into_iter().collect(), || format!("K': {got:?}"))?;
    within(t1.max(t2), Duration::from_secs(1))?;
    Ok(format!("K: 2 answer sets, K': 1 ({:?}, {:?})", t1, t2))
}

fn same_program(label: &str, got: &Value, golden: &str) -> Result<(), String> {
    let got = parse_internal_program_str(got.as_str().unwrap_or_default()).map_err(|e| format!("{label}: {e}"))?;
    let want = parse_internal_program_str(&fixture(&format!("running/golden/{golden}"))).unwrap();
    ensure(got == want, || format!("{label} differs:\n{got}\nexpected:\n{want}"))
}

fn criterion_2() -> Check {
    let (code, v, _) = aspconf(&[
        "transform",
        "--kb",
        &running("k.lp"),
        "--policy",
        &running("policy.pol"),
        "--mode",
        "delete-only",
    ])?;
    ensure(code == 0, || format!("exit {code}"))?;
    same_program("normal form program", &v["normal_kb"], "normal_kb.lp")?;
    same_program("normal form abducibles", &v["normal_abducibles"], "normal_abducibles.lp")?;
    same_program("update program", &v["update_program"], "update_program.lp")?;
    Ok("normal form and update program match the goldens".into())
}

fn criterion_3() -> Check {
    let (code, v, _) = aspconf(&[
        "transform",
        "--kb",
        &running("k.lp"),
        "--prior",
        &running("prior.lp"),
        "--policy",
        &running("policy_prime.pol"),
    ])?;
    ensure(code == 0, || format!("exit {code}"))?;
    let ptr = parse_internal_program_str(v["ptr"].as_str().unwrap_or_default()).map_err(|e| e.to_string())?;
    ensure(ptr.len() == 3, || format!("{} rules:\n{ptr}", ptr.len()))?;
    same_program("ptr", &v["ptr"], "ptr_policy_prime.lp")?;
    Ok("3 rules".into())
}

fn load_setup(kb: &str, prior: Option<&str>, policy: &str) -> Setup {
    let k = parse_program_str(&fixture(kb)).unwrap();
    let prior = prior.map(|p| parse_program_str(&fixture(p)).unwrap()).unwrap_or_default();
    let policy = parse_policy_str(&fixture(policy)).unwrap();
    Setup::new(k, prior, policy)
}

/// Runs `publish --all-solutions` and checks the displayed change sets, the
/// verification flags and, through the library, minimality.
fn publish_case(
    setup: &Setup,
    files: &[&str],
    mode: Mode,
    expected: &BTreeSet<(BTreeSet<String>, BTreeSet<String>)>,
    limit: Duration,
) -> Check {
    let mode_s = mode.to_string();
    let mut args = vec!["publish", "--mode", &mode_s, "--all-solutions"];
    args.extend_from_slice(files);
    let (code, v, elapsed) = aspconf(&args)?;
    ensure(code == 0, || format!("exit {code}"))?;
    within(elapsed, limit)?;
    let solutions = v["solutions"].as_array().cloned().unwrap_or_default();
    let got: BTreeSet<_> = solutions
        .iter()
        .map(|s| (strings(&s["insertions"]), strings(&s["deletions"])))
        .collect();
    ensure(solutions.len() == expected.len() && &got == expected, || {
        format!("got {got:?}")
    })?;
    ensure(solutions.iter().all(|s| s["verified"] == Value::Bool(true)), || {
        "a solution fails verification".into()
    })?;
    let out = publish(setup, mode, &PublishConfig::default()).map_err(|e| e.to_string())?;
    let solver = Solver::default();
    for s in &out.solutions {
        let minimal = minimality_audit(
            &solver,
            &setup.k,
            &setup.prior,
            &out.pipeline.policy,
            &out.pipeline.universe,
            &s.changeset,
            1 << 12,
        )
        .map_err(|e| e.to_string())?;
        ensure(minimal, || format!("{} is not minimal", s.changeset))?;
    }
    Ok(format!("{} solutions in {elapsed:?}", solutions.len()))
}

fn expect(cases: &[(&[&str], &[&str])]) -> BTreeSet<(BTreeSet<String>, BTreeSet<String>)> {
    cases.iter().map(|(e, f)| (set(e), set(f))).collect()
}

fn criterion_4() -> Check {
    let setup = load_setup("running/k.lp", None, "running/policy.pol");
    let expected = expect(&[
        (&[], &["ill(mary,aids)", "treat(pete,medi1)"]),
        (&[], &["ill(mary,aids)", R_PETE]),
    ]);
    let files = ["--kb", &running("k.lp"), "--policy", &running("policy.pol")];
    publish_case(&setup, &files, Mode::DeleteOnly, &expected, Duration::from_secs(10))
}

fn three_solutions() -> BTreeSet<(BTreeSet<String>, BTreeSet<String>)> {
    expect(&[
        (&[], &["ill(mary,aids)", "treat(pete,medi1)"]),
        (&[], &["ill(mary,aids)", R_PETE]),
        (&["treat(pete,medi2)"], &["ill(mary,aids)"]),
    ])
}

fn criterion_5() -> Check {
    let files = [
        "--kb",
        &running("k.lp"),
        "--prior",
        &running("prior.lp"),
        "--policy",
        &running("policy_prime.pol"),
    ];
    let mut args = vec!["transform", "--mode", "delete-insert"];
    args.extend_from_slice(&files);
    let (code, v, _) = aspconf(&args)?;
    ensure(code == 0, || format!("exit {code}"))?;
    let p0 = strings(&v["dependency"]["levels"][0]);
    ensure(p0 == set(&["ill(X,aids)", "-able_to_work(X)"]), || format!("P0 = {p0:?}"))?;
    let closure = strings(&v["dependency"]["closure"]);
    let want = set(&[
        "ill(X,aids)",
        "-able_to_work(X)",
        "ill(X,flu)",
        "treat(X,medi1)",
        "treat(X,medi2)",
    ]);
    ensure(closure == want, || format!("closure = {closure:?}"))?;
    let setup = load_setup("running/k.lp", Some("running/prior.lp"), "running/policy_prime.pol");
    let r = publish_case(&setup, &files, Mode::DeleteInsert, &three_solutions(), Duration::from_secs(60))?;
    Ok(format!("P0 and closure as expected; {r}"))
}

fn criterion_6() -> Check {
    let setup = load_setup("running/k_prime.lp", None, "running/policy.pol");
    let files = ["--kb", &running("k_prime.lp"), "--policy", &running("policy.pol")];
    publish_case(&setup, &files, Mode::DeleteInsert, &three_solutions(), Duration::from_secs(60))
}

const MODES: [Mode; 2] = [Mode::DeleteOnly, Mode::DeleteInsert];

fn fixture_setups() -> Vec<(String, Setup)> {
    let cases: [(&str, Option<&str>, &str); 6] = [
        ("running/k.lp", None, "running/policy.pol"),
        ("running/k.lp", Some("running/prior.lp"), "running/policy_prime.pol"),
        ("running/k.lp", Some("running/prior.lp"), "running/policy.pol"),
        ("running/k_prime.lp", None, "running/policy.pol"),
        ("filter_minimize/k.lp", None, "filter_minimize/policy.pol"),
        ("unreachable/k.lp", Some("unreachable/prior.lp"), "unreachable/policy.pol"),
    ];
    cases
        .iter()
        .map(|(k, prior, policy)| (format!("{k} {prior:?} {policy}"), load_setup(k, *prior, policy)))
        .collect()
}

/// `None` for random instances outside scope: inconsistent input or caps.
fn run(setup: &Setup, mode: Mode) -> Result<Option<PublishOutcome>, String> {
    match publish(setup, mode, &PublishConfig::default()) {
        Ok(out) => Ok(Some(out)),
        Err(Error::InconsistentInput | Error::ResourceCap { .. } | Error::EmptyUniverse) => Ok(None),
        Err(e) => Err(format!("{e} on\n{}\n{}\n{}", setup.k, setup.prior, setup.policy)),
    }
}

/// Counts solutions checked; `None` when the oracle is out of range.
fn oracle_check(setup: &Setup, out: &PublishOutcome) -> Result<Option<usize>, String> {
    for s in &out.solutions {
        match oracle_preserves(&s.k_pub, &setup.prior, &out.pipeline.policy, &out.pipeline.universe) {
            Ok(true) => {}
            Ok(false) => return Err(format!("{} leaks for\n{}\n{}", s.changeset, setup.k, setup.policy)),
            Err(Error::ResourceCap { .. }) => return Ok(None),
            Err(e) => return Err(e.to_string()),
        }
    }
    Ok(Some(out.solutions.len()))
}

fn audit(setup: &Setup, out: &PublishOutcome) -> Result<usize, String> {
    let solver = Solver::default();
    for s in &out.solutions {
        let minimal = minimality_audit(
            &solver,
            &setup.k,
            &setup.prior,
            &out.pipeline.policy,
            &out.pipeline.universe,
            &s.changeset,
            1 << 12,
        )
        .map_err(|e| e.to_string())?;
        ensure(minimal, || format!("{} not minimal for\n{}\n{}", s.changeset, setup.k, setup.policy))?;
    }
    Ok(out.solutions.len())
}

/// Fixture instances plus `random` random ones, in both modes.
fn publish_instances(random: usize, seed: u64) -> Result<Vec<(Setup, PublishOutcome)>, String> {
    let mut out = Vec::new();
    for (name, setup) in fixture_setups() {
        for mode in MODES {
            let o = run(&setup, mode)?.ok_or_else(|| format!("{name} out of scope"))?;
            out.push((setup.clone(), o));
        }
    }
    let mut rng = StdRng::seed_from_u64(seed);
    let mut attempts = 0;
    let target = out.len() + random;
    while out.len() < target {
        attempts += 1;
        ensure(attempts < 20 * random, || "too few usable random instances".into())?;
        let setup = Gen::new(&mut rng, PUBLISH_SHAPE).setup();
        if let Some(o) = run(&setup, MODES[attempts % 2])? {
            out.push((setup, o));
        }
    }
    Ok(out)
}

fn criterion_7() -> Check {
    let instances = publish_instances(220, 17)?;
    let (mut checked, mut solutions) = (0, 0);
    for (setup, out) in &instances {
        if let Some(n) = oracle_check(setup, out)? {
            checked += 1;
            solutions += n;
        }
    }
    ensure(checked >= 200 + 12, || format!("only {checked} instances in oracle range"))?;
    Ok(format!("{checked} instances, {solutions} solutions, 0 violations"))
}

fn criterion_8() -> Check {
    let instances = publish_instances(220, 19)?;
    let mut solutions = 0;
    for (setup, out) in &instances {
        solutions += audit(setup, out)?;
    }
    Ok(format!("{solutions} solutions over {} instances audited", instances.len()))
}

fn criterion_9() -> Check {
    let started = Instant::now();
    let mut rng = StdRng::seed_from_u64(23);
    let (mut checked, mut attempts, mut nonempty) = (0, 0, 0);
    while checked < 120 {
        attempts += 1;
        ensure(attempts < 5000, || "too few instances in oracle range".into())?;
        let setup = Gen::new(&mut rng, PUBLISH_SHAPE).setup();
        let mode = MODES[attempts % 2];
        let Some(out) = run(&setup, mode)? else { continue };
        let expected = match brute_force_publish(&setup, mode, 12) {
            Ok(Some(e)) => e,
            Ok(None) | Err(Error::ResourceCap { .. }) => continue,
            Err(e) => return Err(e.to_string()),
        };
        let got: BTreeSet<ChangeSet> = out.solutions.iter().map(|s| s.changeset.clone()).collect();
        ensure(got == expected, || {
            format!("mode {mode}: got {got:?}, expected {expected:?} for\n{}\n{}\n{}", setup.k, setup.prior, setup.policy)
        })?;
        checked += 1;
        nonempty += usize::from(got.iter().any(|c| !c.is_empty()));
    }
    within(started.elapsed(), Duration::from_secs(600))?;
    Ok(format!("{checked} instances ({nonempty} needing changes) in {:?}", started.elapsed()))
}

fn criterion_10() -> Check {
    let solver = Solver::default();
    // `Ok(false)` for a program with variables and no constants, which has
    // no ground instances to compare.
    let agree = |p: &Program| -> Result<bool, String> {
        let u = Universe::of(p);
        let fast = match solver.answer_sets_in(p, &u) {
            Err(Error::EmptyUniverse) => return Ok(false),
            r => r.map_err(|e| e.to_string())?,
        };
        let slow = solver.brute_force_answer_sets_in(p, &u).map_err(|e| e.to_string())?;
        ensure(fast == slow, || format!("disagreement on\n{p}"))?;
        Ok(true)
    };
    let fixtures = program_fixtures();
    for (name, text) in &fixtures {
        let p = parse_program_str(text).map_err(|e| format!("{name}: {e}"))?;
        ensure(agree(&p)?, || format!("{name}: nothing to compare"))?;
    }
    let mut rng = StdRng::seed_from_u64(29);
    let (mut checked, mut attempts) = (0, 0);
    while checked < 520 {
        attempts += 1;
        ensure(attempts < 20_000, || "too few small programs".into())?;
        let p = Gen::new(&mut rng, SOLVER_SHAPE).program(true);
        if language_size(&p, &Universe::of(&p)) <= 16 && agree(&p)? {
            checked += 1;
        }
    }
    Ok(format!("{} fixtures, {checked} random programs", fixtures.len()))
}

fn criterion_11() -> Check {
    let fixpoint = |text: &str| -> Result<(), String> {
        let p = parse_program_str(text).map_err(|e| e.to_string())?;
        let s = serialize(&p).map_err(|e| e.to_string())?;
        let q = parse_program_str(&s).map_err(|e| format!("{e} in\n{s}"))?;
        ensure(p == q, || format!("reparse differs:\n{s}"))
    };
    let fixtures = program_fixtures();
    for (name, text) in &fixtures {
        fixpoint(text).map_err(|e| format!("{name}: {e}"))?;
    }
    let mut rng = StdRng::seed_from_u64(31);
    for _ in 0..1050 {
        let p = Gen::new(&mut rng, SOLVER_SHAPE).program(true);
        fixpoint(&serialize(&p).map_err(|e| e.to_string())?)?;
    }
    Ok(format!("{} fixtures, 1050 random programs", fixtures.len()))
}

#[test]
fn acceptance() {
    let criteria: [(usize, &str, fn() -> Check); 11] = [
        (1, "solve on the running programs", criterion_1),
        (2, "delete-only transformation", criterion_2),
        (3, "policy transformation rules", criterion_3),
        (4, "delete-only publishing", criterion_4),
        (5, "dependency abducibles and delete-insert publishing", criterion_5),
        (6, "delete-insert publishing without prior knowledge", criterion_6),
        (7, "confidentiality oracle", criterion_7),
        (8, "minimality audit", criterion_8),
        (9, "completeness oracle", criterion_9),
        (10, "solver against brute force", criterion_10),
        (11, "parse/serialize fixpoint", criterion_11),
    ];
    let mut failed = Vec::new();
    for (n, what, f) in criteria {
        let started = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = started.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {n:>2}: PASS  {what}: {detail} [{secs:.2}s]"),
            Err(why) => {
                println!("criterion {n:>2}: FAIL  {what}: {why} [{secs:.2}s]");
                failed.push(n);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

#[test]
fn goldens_parse() {
    for f in ["normal_kb.lp", "normal_abducibles.lp", "update_program.lp", "ptr_policy_prime.lp"] {
        parse_internal_program_str(&fixture(&format!("running/golden/{f}"))).unwrap();
    }
}
