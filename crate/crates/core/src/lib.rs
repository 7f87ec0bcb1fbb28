//! Confidentiality-preserving publication of extended disjunctive programs.
//!
//! Given a knowledge base, a user's prior knowledge and a policy of secret
//! conjunctions, [`confidentiality::publish`] computes every subset-minimal
//! change to the knowledge base after which no policy element is credulously
//! derivable from the published program together with the prior knowledge.
//!
//! ```
//! use aspconf_core::parser::{parse_program_str, parse_policy_str};
//! use aspconf_core::confidentiality::{publish, Mode, Setup};
//!
//! let k = parse_program_str("secret(a). hint(a). secret(X) :- hint(X).").unwrap();
//! let policy = parse_policy_str("secret(X).").unwrap();
//! let setup = Setup::new(k, Default::default(), policy);
//! let outcome = publish(&setup, Mode::DeleteOnly, &Default::default()).unwrap();
//! assert_eq!(outcome.solutions.len(), 2);
//! ```

pub mod abduction;
pub mod confidentiality;
pub mod edp;
pub mod error;
pub mod parser;
pub mod solver;

pub use error::{Error, Result};
