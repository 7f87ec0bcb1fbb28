//! Concrete syntax for programs, policies and queries.
//!
//! ```text
//! ill(X,aids) ; ill(X,flu) :- treat(X,medi1), not treat(X,medi2).
//! -ill(pete,flu).          % classical negation
//! :- not goal.             % constraint
//! ```
//!
//! Constants and predicates start with a lowercase letter (or a digit for
//! constants), variables with an uppercase letter. Predicates starting with
//! `__` are reserved for internal atoms. Policy files hold one element per
//! statement: a conjunction, or several conjunctions separated by `|`.

mod grammar;
mod lexer;
mod serialize;

use std::collections::BTreeMap;
use std::fmt;

use crate::confidentiality::Policy;
use crate::edp::{Conjunction, Literal, Program, Symbol};

pub use serialize::{serialize, serialize_internal};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Origin {
    Kb,
    Prior,
    Policy,
    Query,
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Origin::Kb => "kb",
            Origin::Prior => "prior",
            Origin::Policy => "policy",
            Origin::Query => "query",
        })
    }
}

/// Source text together with the role it plays.
#[derive(Clone, Debug)]
pub struct SourceProgram {
    pub text: String,
    pub origin: Origin,
}

impl SourceProgram {
    pub fn new(text: impl Into<String>, origin: Origin) -> Self {
        SourceProgram {
            text: text.into(),
            origin,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax,
    ReservedPredicate,
    ArityConflict,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{column}: {message} (at `{token}`)")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub token: String,
}

/// Predicate arities seen so far. Sharing one signature across several
/// sources rejects a predicate used with two arities in different files.
#[derive(Clone, Debug, Default)]
pub struct Signature {
    seen: BTreeMap<Symbol, (usize, Origin, usize, usize)>,
}

impl Signature {
    pub fn new() -> Self {
        Signature::default()
    }

    fn record(
        &mut self,
        pred: &Symbol,
        arity: usize,
        origin: Origin,
        line: usize,
        column: usize,
    ) -> Result<(), ParseError> {
        match self.seen.get(pred) {
            Some((a, o, l, c)) if *a != arity => Err(ParseError {
                kind: ParseErrorKind::ArityConflict,
                line,
                column,
                message: format!(
                    "predicate `{pred}` used with arity {arity}, but with arity {a} at {o} {l}:{c}"
                ),
                token: pred.to_string(),
            }),
            Some(_) => Ok(()),
            None => {
                self.seen.insert(pred.clone(), (arity, origin, line, column));
                Ok(())
            }
        }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ParseOptions {
    /// Accept `__`-prefixed predicates (for reading transformation output).
    pub allow_reserved: bool,
}

pub fn parse_program(src: &SourceProgram) -> Result<Program, ParseError> {
    parse_program_with(src, &mut Signature::new(), ParseOptions::default())
}

pub fn parse_program_with(
    src: &SourceProgram,
    sig: &mut Signature,
    opts: ParseOptions,
) -> Result<Program, ParseError> {
    grammar::Parser::new(&src.text, src.origin, sig, opts)?.program()
}

pub fn parse_policy(src: &SourceProgram) -> Result<Policy, ParseError> {
    parse_policy_with(src, &mut Signature::new())
}

pub fn parse_policy_with(src: &SourceProgram, sig: &mut Signature) -> Result<Policy, ParseError> {
    grammar::Parser::new(&src.text, src.origin, sig, ParseOptions::default())?.policy()
}

/// A single conjunction; the trailing `.` is optional.
pub fn parse_query(text: &str, sig: &mut Signature) -> Result<Conjunction, ParseError> {
    grammar::Parser::new(text, Origin::Query, sig, ParseOptions::default())?.query()
}

pub fn parse_program_str(text: &str) -> Result<Program, ParseError> {
    parse_program(&SourceProgram::new(text, Origin::Kb))
}

pub fn parse_internal_program_str(text: &str) -> Result<Program, ParseError> {
    parse_program_with(
        &SourceProgram::new(text, Origin::Kb),
        &mut Signature::new(),
        ParseOptions {
            allow_reserved: true,
        },
    )
}

pub fn parse_policy_str(text: &str) -> Result<Policy, ParseError> {
    parse_policy(&SourceProgram::new(text, Origin::Policy))
}

pub fn parse_query_str(text: &str) -> Result<Conjunction, ParseError> {
    parse_query(text, &mut Signature::new())
}

pub fn parse_literal_str(text: &str) -> Result<Literal, ParseError> {
    grammar::Parser::new(text, Origin::Query, &mut Signature::new(), ParseOptions { allow_reserved: true })?
        .single_literal()
}
