use crate::edp::Program;
use crate::error::{Error, Result};

/// Canonical text of a publishable program: one rule per line in canonical
/// rule order. Refuses programs that still mention internal atoms.
pub fn serialize(p: &Program) -> Result<String> {
    if let Some(r) = p.rules().find(|r| r.is_reserved()) {
        return Err(Error::InternalAtomLeak(r.to_string()));
    }
    Ok(serialize_internal(p))
}

/// Canonical text without the leak check, for displaying transformed programs.
pub fn serialize_internal(p: &Program) -> String {
    p.to_string()
}
