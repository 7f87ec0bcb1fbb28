//! `aspconf`: answer sets, credulous queries and confidentiality-preserving
//! publishing from the command line.

mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use aspconf_core::confidentiality::{
    build_pipeline, pipeline_universe, publish, verify, Mode, Policy, PublishConfig, Setup,
};
use aspconf_core::edp::{Program, Symbol, Universe};
use aspconf_core::parser::{
    parse_policy_with, parse_program_with, parse_query, serialize, Origin,
    ParseOptions, Signature, SourceProgram,
};
use aspconf_core::solver::{Solver, SolverConfig};
use aspconf_core::Error;

use report::*;

#[derive(Parser)]
#[command(name = "aspconf", version, about = "Confidentiality-preserving publishing of logic programs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print all answer sets of a program.
    Solve {
        #[command(flatten)]
        common: Common,
    },
    /// Credulous responses of a conjunctive query.
    Query {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        prior: Option<PathBuf>,
        /// Conjunction of (NAF-)literals, e.g. `ill(X,aids)`.
        #[arg(long, allow_hyphen_values = true)]
        query: String,
    },
    /// Print the intermediate programs of the publishing pipeline.
    Transform {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        inputs: PolicyInputs,
        #[arg(long, default_value = "delete-only")]
        mode: Mode,
    },
    /// Compute subset-minimal confidentiality-preserving versions of the KB.
    Publish {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        inputs: PolicyInputs,
        #[arg(long, default_value = "delete-only")]
        mode: Mode,
        /// Print every solution instead of only the first.
        #[arg(long)]
        all_solutions: bool,
        /// Also print the intermediate programs.
        #[arg(long)]
        show_transforms: bool,
    },
    /// Check that a published KB leaks no policy element.
    Check {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        prior: Option<PathBuf>,
        #[arg(long)]
        policy: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Common {
    /// Knowledge base (the published one for `check`).
    #[arg(long)]
    kb: PathBuf,
    #[arg(long)]
    json: bool,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    max_ground_literals: Option<u64>,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    max_branches: Option<u64>,
    /// Comma-separated constants added to the Herbrand universe.
    #[arg(long, value_delimiter = ',')]
    extra_constants: Vec<String>,
}

#[derive(Args)]
struct PolicyInputs {
    #[arg(long)]
    prior: Option<PathBuf>,
    #[arg(long)]
    policy: PathBuf,
}

impl Common {
    fn solver_config(&self) -> SolverConfig {
        let mut c = SolverConfig::default();
        if let Some(n) = self.max_ground_literals {
            c.max_ground_literals = n;
        }
        if let Some(n) = self.max_branches {
            c.max_branches = n;
        }
        c
    }

    fn extra(&self) -> Vec<Symbol> {
        self.extra_constants
            .iter()
            .map(|s| s.trim())
            .filter(|s| !s.is_empty())
            .map(Symbol::new)
            .collect()
    }
}

/// Failure of a command, with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Parse(_) | Error::EmptyUniverse => EXIT_PARSE,
            Error::ResourceCap { .. } => EXIT_RESOURCE,
            Error::InconsistentInput | Error::InconsistentProgram => EXIT_INCONSISTENT,
            Error::EmptyPolicy => EXIT_USAGE,
            _ => EXIT_RESOURCE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

const EXIT_FAIL: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_RESOURCE: u8 = 3;
const EXIT_INCONSISTENT: u8 = 4;
const EXIT_USAGE: u8 = 5;

type Outcome = Result<u8, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_USAGE,
        message: format!("cannot read {}: {e}", path.display()),
    })
}

fn load_program(path: &Path, origin: Origin, sig: &mut Signature) -> Result<Program, Failure> {
    let text = read(path)?;
    parse_program_with(&SourceProgram::new(text, origin), sig, ParseOptions::default()).map_err(|e| Failure {
        code: EXIT_PARSE,
        message: format!("{}:{e}", path.display()),
    })
}

fn load_optional(path: Option<&PathBuf>, origin: Origin, sig: &mut Signature) -> Result<Program, Failure> {
    match path {
        Some(p) => load_program(p, origin, sig),
        None => Ok(Program::new()),
    }
}

fn load_policy(path: &Path, sig: &mut Signature) -> Result<Policy, Failure> {
    let text = read(path)?;
    parse_policy_with(&SourceProgram::new(text, Origin::Policy), sig).map_err(|e| Failure {
        code: EXIT_PARSE,
        message: format!("{}:{e}", path.display()),
    })
}

fn emit(json: bool, value: &impl serde::Serialize, text: String) {
    if json {
        println!("{}", serde_json::to_string_pretty(value).expect("report serializes"));
    } else {
        print!("{text}");
    }
}

fn run_solve(c: &Common) -> Outcome {
    let k = load_program(&c.kb, Origin::Kb, &mut Signature::new())?;
    let mut u = Universe::of(&k);
    u.extend(c.extra());
    let sets = Solver::new(c.solver_config()).answer_sets_in(&k, &u)?;
    let lists: Vec<Vec<String>> = sets
        .consistent()
        .map(|s| s.literals().iter().map(|l| l.to_string()).collect())
        .collect();
    let mut text = String::new();
    if lists.is_empty() {
        text.push_str("no consistent answer sets\n");
    }
    for (i, s) in lists.iter().enumerate() {
        text.push_str(&format!("Answer set {}: {{{}}}\n", i + 1, s.join(", ")));
    }
    emit(c.json, &SolveReport::new(lists), text);
    Ok(0)
}

fn run_query(c: &Common, prior: Option<&PathBuf>, query: &str) -> Outcome {
    let mut sig = Signature::new();
    let k = load_program(&c.kb, Origin::Kb, &mut sig)?;
    let prior = load_optional(prior, Origin::Prior, &mut sig)?;
    let q = parse_query(query, &mut sig).map_err(|e| Failure {
        code: EXIT_PARSE,
        message: format!("query:{e}"),
    })?;
    let p = k.union(&prior);
    let mut u = Universe::of(&p);
    u.extend(q.literals().flat_map(|l| l.atom.args.iter()).filter(|t| !t.is_var()).map(|t| t.name().clone()));
    u.extend(c.extra());
    let responses: Vec<String> = Solver::new(c.solver_config())
        .cred_in(&p, &q, &u)?
        .iter()
        .map(|r| r.to_string())
        .collect();
    let text: String = responses.iter().map(|r| format!("{r}\n")).collect();
    emit(
        c.json,
        &QueryReport::new(q.to_string(), responses),
        text,
    );
    Ok(0)
}

fn load_setup(c: &Common, inputs: &PolicyInputs) -> Result<Setup, Failure> {
    let mut sig = Signature::new();
    let k = load_program(&c.kb, Origin::Kb, &mut sig)?;
    let prior = load_optional(inputs.prior.as_ref(), Origin::Prior, &mut sig)?;
    let policy = load_policy(&inputs.policy, &mut sig)?;
    Ok(Setup::new(k, prior, policy))
}

fn publish_config(c: &Common) -> PublishConfig {
    PublishConfig {
        solver: c.solver_config(),
        extra_constants: c.extra(),
        ..Default::default()
    }
}

fn transforms_text(t: &TransformReport) -> String {
    let mut out = String::new();
    let mut section = |title: &str, body: &str| {
        out.push_str(&format!("% {title}\n{body}"));
        if !body.is_empty() && !body.ends_with('\n') {
            out.push('\n');
        }
        out.push('\n');
    };
    section("mode", &format!("{}\n", t.mode));
    section("universe", &format!("{}\n", t.universe.join(", ")));
    section("policy transformation rules", &t.ptr);
    if let Some(d) = &t.dependency {
        let levels: String = d
            .levels
            .iter()
            .enumerate()
            .map(|(i, l)| format!("P{i} = {{{}}}\n", l.join(", ")))
            .collect();
        section("dependency trace", &levels);
    }
    section("abducibles", &t.abducibles);
    section("normal form: program", &t.normal_kb);
    section("normal form: abducibles", &t.normal_abducibles);
    section("update program", &t.update_program);
    out
}

fn run_transform(c: &Common, inputs: &PolicyInputs, mode: Mode) -> Outcome {
    let setup = load_setup(c, inputs)?;
    let pl = build_pipeline(&setup, mode, &publish_config(c))?;
    let t = TransformReport::new(mode, &pl);
    let text = transforms_text(&t);
    emit(c.json, &t, text);
    Ok(0)
}

fn run_publish(c: &Common, inputs: &PolicyInputs, mode: Mode, all: bool, show: bool) -> Outcome {
    let setup = load_setup(c, inputs)?;
    let config = publish_config(c);
    let solver = Solver::new(config.solver);
    let started = Instant::now();
    let out = publish(&setup, mode, &config)?;
    log::info!(
        "publish: {} solution(s) in {:.3}s; {:?}",
        out.solutions.len(),
        started.elapsed().as_secs_f64(),
        out.stats
    );
    let shown = if all { out.solutions.len() } else { out.solutions.len().min(1) };
    let mut solutions = Vec::new();
    for s in &out.solutions[..shown] {
        let report = verify(&solver, &s.k_pub, &setup.prior, &out.pipeline.policy, &out.pipeline.universe)?;
        if !report.passed() {
            log::warn!("solution {} fails re-verification", s.display);
        }
        let update_atoms = s
            .update_atoms
            .iter()
            .map(|a| out.pipeline.describe_update_atom(a).unwrap_or_else(|| "?".into()))
            .collect();
        solutions.push(SolutionReport::new(s, serialize(&s.k_pub)?, &report, update_atoms));
    }
    let transforms = show.then(|| TransformReport::new(mode, &out.pipeline));
    let report = PublishReport::new(mode, out.solutions.len(), solutions, out.reason, transforms);

    let mut text = String::new();
    if let Some(t) = &report.transforms {
        text.push_str(&transforms_text(t));
    }
    if report.solutions.is_empty() {
        text.push_str(&format!(
            "no solution: {}\n",
            report.reason.as_deref().unwrap_or("unknown")
        ));
    }
    for (i, s) in report.solutions.iter().enumerate() {
        text.push_str(&format!("Solution {}:\n", i + 1));
        text.push_str(&format!("  delete: {{{}}}\n", s.deletions.join(", ")));
        text.push_str(&format!("  insert: {{{}}}\n", s.insertions.join(", ")));
        text.push_str(&format!("  update atoms: {{{}}}\n", s.update_atoms.join(", ")));
        text.push_str(&format!("  verified: {}\n", if s.verified { "pass" } else { "FAIL" }));
        text.push_str("  published:\n");
        for line in s.k_pub.lines() {
            text.push_str(&format!("    {line}\n"));
        }
    }
    emit(c.json, &report, text);
    Ok(if report.solutions.is_empty() { EXIT_FAIL } else { 0 })
}

fn run_check(c: &Common, prior: Option<&PathBuf>, policy: Option<&PathBuf>) -> Outcome {
    let mut sig = Signature::new();
    let k = load_program(&c.kb, Origin::Kb, &mut sig)?;
    let prior = load_optional(prior, Origin::Prior, &mut sig)?;
    let policy = match policy {
        Some(p) => load_policy(p, &mut sig)?,
        None => Policy::default(),
    };
    let setup = Setup::new(k, prior, policy);
    let u = pipeline_universe(&setup, &c.extra())?;
    let conjunctions = aspconf_core::confidentiality::normalize_policy(&setup.policy, &u)?;
    let solver = Solver::new(c.solver_config());
    let report = verify(&solver, &setup.k, &setup.prior, &conjunctions, &u)?;
    let r = CheckReport::new(&report);
    let mut text = format!("{}\n", if r.passed { "pass" } else { "fail" });
    if !r.consistent {
        text.push_str("  published program with prior knowledge is inconsistent\n");
    }
    for e in &r.elements {
        if !e.leaks.is_empty() {
            text.push_str(&format!("  {}: {}\n", e.element, e.leaks.join(", ")));
        }
    }
    emit(c.json, &r, text);
    Ok(if r.passed { 0 } else { EXIT_FAIL })
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("ASPCONF_LOG", "warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    let result = match &cli.command {
        Command::Solve { common } => run_solve(common),
        Command::Query { common, prior, query } => run_query(common, prior.as_ref(), query),
        Command::Transform { common, inputs, mode } => run_transform(common, inputs, *mode),
        Command::Publish {
            common,
            inputs,
            mode,
            all_solutions,
            show_transforms,
        } => run_publish(common, inputs, *mode, *all_solutions, *show_transforms),
        Command::Check { common, prior, policy } => run_check(common, prior.as_ref(), policy.as_ref()),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
