//! Strongest implicates, uniform and Craig interpolants, the decision of
//! the interpolation property, and brute-force checks of all of them.

mod cip;
mod craig;
mod implicate;
mod verify;

pub use cip::{
    cip_witness, cip_witness_with_budget, diagram_formula, diagram_satisfiable, has_cip,
    reduce_logic, CipWitness, DEFAULT_CIP_BUDGET,
};
pub use craig::{modal_craig_interpolant, modal_craig_interpolant_single};
pub use implicate::{
    strongest_implicate, strongest_implicate_single, strongest_implicate_with, uniform_interpolant,
};
pub use verify::{
    verify_craig, verify_strongest_implicate, verify_strongest_implicate_with_budget, Verdict,
    Witness, DEFAULT_VERIFY_BUDGET,
};
