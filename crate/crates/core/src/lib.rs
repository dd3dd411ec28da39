//! Word graphs over permutation rule sets: construction, diameters,
//! closed-path counting, sequence enumeration and automorphism checks.

pub mod acceptance;
pub mod aut;
pub mod cayley;
pub mod config;
pub mod error;
pub mod factor;
pub mod graph;
pub mod paths;
pub mod perm;
pub mod report;
pub mod rules;
pub mod seq;

pub use config::{Config, Strategy};
pub use error::{Error, Result};
pub use perm::Permutation;
pub use rules::{dg_k1, dg_k1_ordered, gomez, min_rule_count, DgOrder, Rule, RuleSet};
