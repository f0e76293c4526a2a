use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::formula::{Atom, Signature};

use super::frame::PointedFrame;
use super::model::Model;

/// Default bound on `|σ|·|W|` for model enumeration.
pub const DEFAULT_MODEL_BUDGET: usize = 24;

/// All models on `fr` with valuations over `sigma`, in index order: bit
/// `a·|W| + w` of the index says whether the `a`-th atom (ascending) holds
/// at world `w`.
pub fn enumerate_models(fr: &PointedFrame, sigma: &Signature) -> Result<ModelIter> {
    enumerate_models_with_budget(fr, sigma, DEFAULT_MODEL_BUDGET)
}

pub fn enumerate_models_with_budget(
    fr: &PointedFrame,
    sigma: &Signature,
    budget: usize,
) -> Result<ModelIter> {
    let bits = sigma.len() * fr.len();
    if bits > budget || bits >= 64 {
        return Err(Error::Budget {
            what: "model enumeration bits",
            needed: bits as u128,
            budget: budget as u128,
        });
    }
    Ok(ModelIter {
        frame: Arc::new(fr.clone()),
        atoms: sigma.iter().cloned().collect(),
        next: 0,
        total: 1u64 << bits,
    })
}

pub struct ModelIter {
    frame: Arc<PointedFrame>,
    atoms: Vec<Atom>,
    next: u64,
    total: u64,
}

impl ModelIter {
    pub fn total(&self) -> u64 {
        self.total
    }
}

/// The model with the given enumeration index.
pub fn model_from_index(frame: &Arc<PointedFrame>, atoms: &[Atom], index: u64) -> Model {
    let n = frame.len();
    let valuation = (0..n)
        .map(|w| {
            atoms
                .iter()
                .enumerate()
                .filter(|(a, _)| (index >> (a * n + w)) & 1 == 1)
                .map(|(_, atom)| atom.clone())
                .collect::<BTreeSet<Atom>>()
        })
        .collect();
    Model::new(frame.clone(), valuation).expect("sizes match")
}

impl Iterator for ModelIter {
    type Item = Model;

    fn next(&mut self) -> Option<Model> {
        if self.next >= self.total {
            return None;
        }
        let m = model_from_index(&self.frame, &self.atoms, self.next);
        self.next += 1;
        Some(m)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.total - self.next) as usize;
        (left, Some(left))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::signature;

    #[test]
    fn counts() {
        let point = PointedFrame::from_succ("P", vec![vec![]], 0).unwrap();
        assert_eq!(enumerate_models(&point, &signature(["p"])).unwrap().count(), 2);
        let f13 = PointedFrame::from_succ("F", vec![vec![1, 2, 3], vec![], vec![], vec![]], 0).unwrap();
        let all: Vec<Model> = enumerate_models(&f13, &signature(["p"])).unwrap().collect();
        assert_eq!(all.len(), 16);
        assert!(all[0].signature().is_empty());
        assert!(all[1].holds(0, &Atom::base("p")));
        assert!(all[2].holds(1, &Atom::base("p")));
        let big = PointedFrame::from_succ("B", (0..10).map(|i| if i == 0 { (1..10).collect() } else { vec![] }).collect(), 0).unwrap();
        assert!(matches!(
            enumerate_models(&big, &signature(["p", "q", "r"])),
            Err(Error::Budget { needed: 30, .. })
        ));
    }
}
