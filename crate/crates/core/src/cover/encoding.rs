use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::formula::{Formula, Signature};
use crate::kripke::refine::BisimKey;
use crate::kripke::Logic;

use super::abstraction::{class_identifier, AbstractModel};
use super::eme::{cover_formula, enumerate_cover_family_with_budget, Eme, DEFAULT_COVER_BUDGET};

/// Default bound on the number of abstract models labeled per encoding.
pub const DEFAULT_ENCODING_BUDGET: u128 = 1 << 22;

/// One abstract bisimulation class: its identifier and every labeling of
/// a frame of the logic that falls into it.
#[derive(Clone, Debug)]
pub struct AbstractClass {
    pub identifier: Formula,
    /// `(frame index, labels)` pairs.
    pub models: Vec<(usize, Vec<usize>)>,
}

/// An EME of the cover family with its cover formula and classes.
#[derive(Clone, Debug)]
pub struct CoverClasses {
    pub eme: Arc<Eme>,
    pub cover: Formula,
    pub classes: Vec<AbstractClass>,
}

/// Everything the backward translation needs about a logic and a
/// signature: the cover family and, per cover, the identified classes of
/// abstract models over all frames.
#[derive(Clone, Debug)]
pub struct Encoding {
    sigma: Signature,
    bound: usize,
    covers: Vec<CoverClasses>,
}

impl Encoding {
    pub fn sigma(&self) -> &Signature {
        &self.sigma
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn covers(&self) -> &[CoverClasses] {
        &self.covers
    }

    pub fn class_count(&self) -> usize {
        self.covers.iter().map(|c| c.classes.len()).sum()
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct ClassJson {
            identifier: String,
            models: usize,
        }
        #[derive(Serialize)]
        struct CoverJson {
            members: Vec<String>,
            cover: String,
            classes: Vec<ClassJson>,
        }
        #[derive(Serialize)]
        struct EncodingJson {
            sigma: Vec<String>,
            bound: usize,
            covers: Vec<CoverJson>,
        }
        let out = EncodingJson {
            sigma: self.sigma.iter().map(|a| a.to_string()).collect(),
            bound: self.bound,
            covers: self
                .covers
                .iter()
                .map(|c| CoverJson {
                    members: c.eme.members().iter().map(|m| m.to_string()).collect(),
                    cover: c.cover.to_string(),
                    classes: c
                        .classes
                        .iter()
                        .map(|k| ClassJson {
                            identifier: k.identifier.to_string(),
                            models: k.models.len(),
                        })
                        .collect(),
                })
                .collect(),
        };
        serde_json::to_string(&out).expect("serializable")
    }
}

/// The σ-encoding of `l`.
pub fn sigma_encoding(l: &Logic, sigma: &Signature) -> Result<Encoding> {
    sigma_encoding_with_budget(l, sigma, DEFAULT_ENCODING_BUDGET)
}

pub fn sigma_encoding_with_budget(l: &Logic, sigma: &Signature, budget: u128) -> Result<Encoding> {
    if let Some(a) = sigma.iter().find(|a| !a.is_base()) {
        return Err(Error::UnexpectedAtom(a.to_string()));
    }
    let bound = l.bound();
    let mut family: BTreeMap<Vec<String>, Eme> = BTreeMap::new();
    for fr in l.frames() {
        for e in enumerate_cover_family_with_budget(fr, sigma, DEFAULT_COVER_BUDGET)? {
            family
                .entry(e.members().iter().map(|m| m.to_string()).collect())
                .or_insert(e);
        }
    }
    let needed = family.values().fold(0u128, |s, e| {
        l.frames().iter().fold(s, |s, fr| {
            s.saturating_add((e.len() as u128).saturating_pow(fr.len() as u32))
        })
    });
    if needed > budget {
        return Err(Error::Budget {
            what: "abstract models in encoding",
            needed,
            budget,
        });
    }
    let frames: Vec<_> = l.frames().iter().cloned().map(Arc::new).collect();
    let mut covers = Vec::new();
    for eme in family.into_values() {
        let eme = Arc::new(eme);
        let k = eme.len();
        let mut classes: BTreeMap<BisimKey<usize>, (Formula, Vec<(usize, Vec<usize>)>)> = BTreeMap::new();
        for (fi, fr) in frames.iter().enumerate() {
            let n = fr.len();
            let mut labels = vec![0usize; n];
            loop {
                let a = AbstractModel::new(fr.clone(), eme.clone(), labels.clone())?;
                classes
                    .entry(a.key())
                    .or_insert_with(|| (class_identifier(&a, bound), Vec::new()))
                    .1
                    .push((fi, labels.clone()));
                // next labeling, least significant world first
                let mut w = 0;
                while w < n && labels[w] + 1 == k {
                    labels[w] = 0;
                    w += 1;
                }
                if w == n {
                    break;
                }
                labels[w] += 1;
            }
        }
        covers.push(CoverClasses {
            cover: cover_formula(sigma, &eme, bound),
            eme,
            classes: classes
                .into_values()
                .map(|(identifier, models)| AbstractClass { identifier, models })
                .collect(),
        });
    }
    Ok(Encoding {
        sigma: sigma.clone(),
        bound,
        covers,
    })
}
