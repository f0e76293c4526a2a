use thiserror::Error;

use crate::kripke::Model;
use crate::prop::Valuation;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("invalid atom name `{0}`")]
    InvalidAtom(String),

    #[error("invalid world or frame id `{0}`")]
    InvalidId(String),

    #[error("invalid frame: {0}")]
    InvalidFrame(String),

    #[error("invalid logic: {0}")]
    InvalidLogic(String),

    #[error("unknown world `{0}`")]
    UnknownWorld(String),

    #[error("formula contains a modal operator where a propositional one is required")]
    Modal,

    #[error("budget exceeded: {what} needs {needed}, budget is {budget}")]
    Budget {
        what: &'static str,
        needed: u128,
        budget: u128,
    },

    #[error("not a cover: {0}")]
    NotCover(String),

    #[error("invalid EME: {0}")]
    InvalidEme(String),

    #[error("atom `{0}` is not allowed here")]
    UnexpectedAtom(String),

    #[error("implication is not a tautology")]
    NotTautology { countervaluation: Valuation },

    #[error("implication is not valid in the logic")]
    NotInLogic { countermodel: Box<Model> },

    #[error("logic `{0}` lacks the Craig interpolation property; the translation method is not sound for it")]
    NoCip(String),

    #[error("signature overlap: {0}")]
    SignatureOverlap(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
