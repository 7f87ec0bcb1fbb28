use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(path: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(path)
        .display()
        .to_string()
}

fn running(name: &str) -> String {
    fixture(&format!("running/{name}"))
}

fn temp(name: &str, text: &str) -> String {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, text).unwrap();
    path.display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_aspconf"))
        .args(args)
        .env_remove("ASPCONF_LOG")
        .output()
        .unwrap()
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().unwrap()
}

fn stdout(args: &[&str]) -> String {
    String::from_utf8(run(args).stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut args = args.to_vec();
    args.push("--json");
    let v: Value = serde_json::from_str(&stdout(&args)).unwrap();
    assert_eq!(v["schema_version"], "1");
    v
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|s| s.as_str().unwrap().to_string())
        .collect()
}

#[test]
fn solve_prints_answer_sets() {
    let k = running("k.lp");
    let out = stdout(&["solve", "--kb", &k]);
    assert!(out.contains("Answer set 1: {"), "{out}");
    assert!(out.contains("Answer set 2: {"), "{out}");
    let v = json(&["solve", "--kb", &k]);
    assert_eq!(v["command"], "solve");
    assert_eq!(v["answer_sets"].as_array().unwrap().len(), 2);
}

#[test]
fn solve_reports_no_consistent_answer_set() {
    let k = temp("contradiction.lp", "p. -p.\n");
    assert_eq!(code(&["solve", "--kb", &k]), 0);
    assert!(stdout(&["solve", "--kb", &k]).contains("no consistent answer sets"));
}

#[test]
fn query_responses() {
    let v = json(&["query", "--kb", &running("k.lp"), "--query", "ill(X,aids)"]);
    assert_eq!(strings(&v["responses"]), ["ill(mary,aids)", "ill(pete,aids)"]);
    let v = json(&[
        "query",
        "--kb",
        &running("k.lp"),
        "--prior",
        &running("prior.lp"),
        "--query",
        "-able_to_work(X)",
    ]);
    assert_eq!(strings(&v["responses"]), ["-able_to_work(pete)"]);
}

#[test]
fn check_published_and_original() {
    let policy = running("policy.pol");
    let published = temp("published.lp", "ill(X,aids) ; ill(X,flu) :- treat(X,medi1), not treat(X,medi2).\n");
    assert_eq!(code(&["check", "--kb", &published, "--policy", &policy]), 0);
    assert!(stdout(&["check", "--kb", &published, "--policy", &policy]).starts_with("pass"));

    let k = running("k.lp");
    assert_eq!(code(&["check", "--kb", &k, "--policy", &policy]), 1);
    let v = json(&["check", "--kb", &k, "--policy", &policy]);
    assert_eq!(v["passed"], false);
    let leaks: Vec<String> = v["elements"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|e| strings(&e["leaks"]))
        .collect();
    assert_eq!(leaks, ["ill(mary,aids)", "ill(pete,aids)"]);

    assert_eq!(code(&["check", "--kb", &k]), 0);
}

#[test]
fn publish_delete_only() {
    let args = [
        "publish",
        "--kb",
        &running("k.lp"),
        "--policy",
        &running("policy.pol"),
        "--mode",
        "delete-only",
        "--all-solutions",
    ];
    assert_eq!(code(&args), 0);
    let v = json(&args);
    assert_eq!(v["solution_count"], 2);
    for s in v["solutions"].as_array().unwrap() {
        assert_eq!(s["verified"], true);
        assert!(strings(&s["insertions"]).is_empty());
        assert!(strings(&s["deletions"]).contains(&"ill(mary,aids)".to_string()));
    }
    // Without --all-solutions only the first is shown.
    let v = json(&args[..args.len() - 1]);
    assert_eq!(v["solution_count"], 2);
    assert_eq!(v["solutions"].as_array().unwrap().len(), 1);
}

#[test]
fn publish_output_is_deterministic_and_free_of_internal_atoms() {
    let args = [
        "publish",
        "--kb",
        &running("k.lp"),
        "--prior",
        &running("prior.lp"),
        "--policy",
        &running("policy_prime.pol"),
        "--mode",
        "delete-insert",
        "--all-solutions",
    ];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.stdout, second.stdout);
    let text = String::from_utf8(first.stdout).unwrap();
    assert!(!text.contains("__"), "{text}");
    let mut with_json = args.to_vec();
    with_json.push("--json");
    let text = stdout(&with_json);
    assert!(!text.contains("__"), "{text}");
    assert_eq!(text, stdout(&with_json));
}

#[test]
fn publish_show_transforms() {
    let out = stdout(&[
        "publish",
        "--kb",
        &running("k.lp"),
        "--policy",
        &running("policy.pol"),
        "--show-transforms",
    ]);
    assert!(out.contains("% update program"), "{out}");
    assert!(out.contains("Solution 1:"), "{out}");
}

#[test]
fn publish_goal_unreachable() {
    let args = [
        "publish",
        "--kb",
        &fixture("unreachable/k.lp"),
        "--prior",
        &fixture("unreachable/prior.lp"),
        "--policy",
        &fixture("unreachable/policy.pol"),
    ];
    assert_eq!(code(&args), 1);
    assert!(stdout(&args).contains("goal unreachable"));
    let mut with_json = args.to_vec();
    with_json.push("--json");
    let v: Value = serde_json::from_str(&stdout(&with_json)).unwrap();
    assert_eq!(v["reason"], "goal unreachable");
    assert_eq!(v["solution_count"], 0);
}

#[test]
fn transform_lists_dependency_trace() {
    let v = json(&[
        "transform",
        "--kb",
        &running("k.lp"),
        "--prior",
        &running("prior.lp"),
        "--policy",
        &running("policy_prime.pol"),
        "--mode",
        "delete-insert",
    ]);
    assert_eq!(v["command"], "transform");
    assert_eq!(v["mode"], "delete-insert");
    assert_eq!(v["dependency"]["levels"].as_array().unwrap().len(), 2);
    for key in ["universe", "policy", "ptr", "abducibles", "normal_kb", "normal_abducibles", "update_program", "update_atoms"] {
        assert!(!v[key].is_null(), "{key}");
    }
}

#[test]
fn exit_codes() {
    let k = running("k.lp");
    let policy = running("policy.pol");
    let empty = temp("empty.pol", "% nothing secret\n");
    assert_eq!(code(&["transform", "--kb", &k, "--policy", &empty]), 5);

    let bad = temp("bad.lp", "p(X :- q.\n");
    assert_eq!(code(&["solve", "--kb", &bad]), 2);
    let err = String::from_utf8(run(&["solve", "--kb", &bad]).stderr).unwrap();
    assert!(err.contains("bad.lp:1:"), "{err}");

    let inconsistent = temp("inconsistent.lp", "ill(mary,aids). -ill(mary,aids).\n");
    assert_eq!(code(&["publish", "--kb", &inconsistent, "--policy", &policy]), 4);

    assert_eq!(code(&["publish", "--kb", &k, "--policy", &policy, "--max-ground-literals", "3"]), 3);

    assert_eq!(code(&["solve", "--kb", "/nonexistent/kb.lp"]), 5);
    assert_eq!(code(&["solve"]), 5);
    assert_eq!(code(&["publish", "--kb", &k, "--policy", &policy, "--mode", "insert-only"]), 5);
    assert_eq!(code(&["--help"]), 0);
}

#[test]
fn extra_constants_widen_the_universe() {
    let v = json(&[
        "transform",
        "--kb",
        &running("k.lp"),
        "--policy",
        &running("policy.pol"),
        "--extra-constants",
        "john,sue",
    ]);
    let u = strings(&v["universe"]);
    assert!(u.contains(&"john".to_string()) && u.contains(&"sue".to_string()), "{u:?}");
}
