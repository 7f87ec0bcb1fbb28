use thiserror::Error;

use crate::parser::ParseError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("program has variables but the Herbrand universe is empty")]
    EmptyUniverse,

    #[error("rule is not ground: {0}")]
    NonGroundRule(String),

    #[error("resource cap exceeded: {what} needs {needed}, limit is {limit}")]
    ResourceCap {
        what: &'static str,
        limit: u64,
        needed: u64,
    },

    #[error("program has no consistent answer set")]
    InconsistentProgram,

    #[error("knowledge base together with prior knowledge is inconsistent")]
    InconsistentInput,

    #[error("abducible is not a literal: {0}")]
    NonLiteralAbducible(String),

    #[error("atom is not an update atom of this update program: {0}")]
    UnknownUpdateAtom(String),

    #[error("confidentiality policy is empty")]
    EmptyPolicy,

    #[error("internal atom would leak into a published program: {0}")]
    InternalAtomLeak(String),

    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub type Result<T> = std::result::Result<T, Error>;
