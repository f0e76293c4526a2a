//! The bridge between modal formulas over a finite frame and propositional
//! formulas over world-indexed atoms.

mod backward;
mod forward;

pub use backward::{project_xi, rt_frame, rt_frame_with, rt_logic, rt_logic_with, xi_f};
pub use forward::{
    indexed_signature, logic_signature, selector, tr_frame, tr_frame_all, tr_logic, unique,
};
