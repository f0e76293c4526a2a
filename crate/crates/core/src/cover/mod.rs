//! Covers by exhaustive, mutually exclusive formula sets, abstract models
//! and formulas identifying their bisimulation classes.

mod abstraction;
mod eme;
mod encoding;

pub use abstraction::{
    abstract_bisimilar, abstraction_of, class_identifier, eval_abstract, eval_abstract_mask,
    AbstractModel,
};
pub use eme::{
    compute_cover, cover_formula, enumerate_cover_family, enumerate_cover_family_with_budget,
    is_cover, Eme, Literals, DEFAULT_COVER_BUDGET,
};
pub use encoding::{
    sigma_encoding, sigma_encoding_with_budget, AbstractClass, CoverClasses, Encoding,
    DEFAULT_ENCODING_BUDGET,
};
