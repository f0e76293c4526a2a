//! Finite Kripke frames and models, satisfaction, logics given by finite
//! frame sets, bisimulation and isomorphism.

mod enumerate;
mod frame;
pub mod iso;
mod json;
mod logic;
mod model;
pub mod refine;

pub use enumerate::{
    enumerate_models, enumerate_models_with_budget, model_from_index, ModelIter,
    DEFAULT_MODEL_BUDGET,
};
pub use frame::{PointedFrame, MAX_WORLDS};
pub use json::{FrameJson, LogicJson, ModelJson};
pub use logic::{find_countermodel, member_of_logic, Logic};
pub use model::{reduct_isomorphic, satisfies, sigma_bisimulation, Model, Relation};
pub use refine::BisimKey;
