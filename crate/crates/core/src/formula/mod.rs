//! Hash-consed modal formulas over the basis `⊤, atoms, ¬, ∧, □`.

mod atom;
pub mod circuit;
mod display;
mod node;
mod ops;
mod parse;

pub(crate) use atom::valid_id;
pub use atom::{parse_signature, signature, Atom, Signature};
pub use node::{Formula, Kind};
pub use parse::parse_formula;

/// Shorthand used throughout the tests: parse or panic.
pub fn f(text: &str) -> Formula {
    parse_formula(text).unwrap_or_else(|e| panic!("{text}: {e}"))
}
