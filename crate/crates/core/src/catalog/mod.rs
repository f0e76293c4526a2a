//! Built-in frame families and logics, and formula families that witness
//! exponential lower bounds.

mod frames;
mod witness;

pub use frames::{make_frame, make_logic, FrameFamily, LogicName};
pub use witness::{
    prefix_atoms, types, witness_craig, witness_implicate, witness_nocip, WitnessCraig,
    WitnessImplicate,
};
