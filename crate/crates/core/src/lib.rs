//! Strongest implicates, uniform interpolants and Craig interpolants for
//! tabular modal logics, computed by translation to propositional logic and
//! checked against brute-force semantic oracles.

pub mod alt1;
pub mod catalog;
pub mod cover;
pub mod error;
pub mod formula;
pub mod gen;
pub mod interpolation;
pub mod kripke;
pub mod prop;
pub mod translation;

pub use error::{Error, Result};
pub use formula::{parse_formula, Atom, Formula, Kind, Signature};
