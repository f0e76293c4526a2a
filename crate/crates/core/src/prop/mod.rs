//! Propositional backend: evaluation, tautology checking, forgetting,
//! interpolation and simplification.

mod eval;
mod forget;
mod simplify;

pub use eval::{
    eval, find_countervaluation, find_model, is_satisfiable, is_tautology, prop_equivalent,
    Valuation,
};
pub use forget::{forget, prop_craig_interpolant, prop_uniform_interpolant, Forgetter, Shannon};
pub use simplify::{restrict, simplify};
