use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::formula::{Atom, Formula, Kind, Signature};
use crate::prop::Valuation;

use super::frame::PointedFrame;
use super::iso::rooted_isomorphism;
use super::refine::{bisim_key, joint_coloring, BisimKey};

/// A pair of worlds `(w1, w2)` by index, first model first.
pub type Relation = BTreeSet<(usize, usize)>;

/// A frame together with the set of atoms true at each world.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Model {
    frame: Arc<PointedFrame>,
    valuation: Vec<BTreeSet<Atom>>,
}

impl Model {
    pub fn new(frame: Arc<PointedFrame>, valuation: Vec<BTreeSet<Atom>>) -> Result<Model> {
        if valuation.len() != frame.len() {
            return Err(Error::InvalidFrame(format!(
                "valuation covers {} worlds, frame has {}",
                valuation.len(),
                frame.len()
            )));
        }
        Ok(Model { frame, valuation })
    }

    /// Model where every atom is false everywhere.
    pub fn empty(frame: Arc<PointedFrame>) -> Model {
        let valuation = vec![BTreeSet::new(); frame.len()];
        Model { frame, valuation }
    }

    /// Model given by the atoms true at named worlds; unnamed worlds get
    /// the empty set.
    pub fn from_truths(frame: &PointedFrame, truths: &[(&str, &[&str])]) -> Result<Model> {
        let mut m = Model::empty(Arc::new(frame.clone()));
        for (w, atoms) in truths {
            let i = frame.world_index(w)?;
            for a in *atoms {
                m.valuation[i].insert(Atom::try_base(a)?);
            }
        }
        Ok(m)
    }

    /// The model `M_v` read off a valuation over indexed atoms `p@w`.
    /// Atoms indexed by worlds outside the frame are ignored.
    pub fn from_indexed(frame: Arc<PointedFrame>, v: &Valuation) -> Model {
        let mut m = Model::empty(frame);
        for (a, &b) in v {
            if let (true, Atom::Indexed { base, world }) = (b, a) {
                if let Ok(i) = m.frame.world_index(world) {
                    m.valuation[i].insert(Atom::Base(base.clone()));
                }
            }
        }
        m
    }

    pub fn frame(&self) -> &PointedFrame {
        &self.frame
    }

    pub fn frame_arc(&self) -> &Arc<PointedFrame> {
        &self.frame
    }

    pub fn valuation(&self, w: usize) -> &BTreeSet<Atom> {
        &self.valuation[w]
    }

    pub fn holds(&self, w: usize, a: &Atom) -> bool {
        self.valuation[w].contains(a)
    }

    /// Atoms true somewhere in the model.
    pub fn signature(&self) -> Signature {
        self.valuation.iter().flatten().cloned().collect()
    }

    /// Restriction of the valuation to `sigma`.
    pub fn reduct(&self, sigma: &Signature) -> Model {
        Model {
            frame: self.frame.clone(),
            valuation: self
                .valuation
                .iter()
                .map(|v| v.intersection(sigma).cloned().collect())
                .collect(),
        }
    }

    /// The valuation `v_M` on `sigma × W`.
    pub fn indexed_valuation(&self, sigma: &Signature) -> Valuation {
        let mut v = Valuation::new();
        for (i, w) in self.frame.worlds().iter().enumerate() {
            for a in sigma {
                if let Some(base) = a.base_name() {
                    let idx = Atom::indexed(base, w).expect("valid ids");
                    v.insert(idx, self.valuation[i].contains(a));
                }
            }
        }
        v
    }

    /// Worlds where `f` holds, as a bit set.
    pub fn truth_mask(&self, f: &Formula) -> u64 {
        let n = self.frame.len();
        let full = self.frame.full_mask();
        f.fold(|g, kids: &[u64]| match g.kind() {
            Kind::Top => full,
            Kind::Atom(a) => (0..n)
                .filter(|&w| self.valuation[w].contains(a))
                .fold(0, |m, w| m | (1 << w)),
            Kind::Not(_) => !kids[0] & full,
            Kind::And(..) => kids[0] & kids[1],
            Kind::Box(_) => (0..n)
                .filter(|&w| self.frame.succ_mask(w) & !kids[0] == 0)
                .fold(0, |m, w| m | (1 << w)),
        })
    }

    pub fn satisfies_at(&self, w: usize, f: &Formula) -> bool {
        (self.truth_mask(f) >> w) & 1 == 1
    }

    pub fn satisfies(&self, w: &str, f: &Formula) -> Result<bool> {
        Ok(self.satisfies_at(self.frame.world_index(w)?, f))
    }

    pub fn satisfies_root(&self, f: &Formula) -> bool {
        self.satisfies_at(self.frame.root(), f)
    }

    fn labels(&self, sigma: &Signature) -> Vec<Vec<Atom>> {
        self.valuation
            .iter()
            .map(|v| v.intersection(sigma).cloned().collect())
            .collect()
    }

    /// Canonical key of the σ-bisimulation class of the rooted model.
    pub fn bisim_key(&self, sigma: &Signature) -> BisimKey<Vec<Atom>> {
        bisim_key(&self.labels(sigma), self.frame.succ_lists(), self.frame.root())
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (root {}):", self.frame.name(), self.frame.root_id())?;
        for (i, w) in self.frame.worlds().iter().enumerate() {
            let atoms: Vec<String> = self.valuation[i].iter().map(|a| a.to_string()).collect();
            write!(f, " {w}{{{}}}", atoms.join(","))?;
        }
        Ok(())
    }
}

/// Truth of `f` at world `w`.
pub fn satisfies(m: &Model, w: &str, f: &Formula) -> Result<bool> {
    m.satisfies(w, f)
}

/// The coarsest σ-bisimulation between the two models, computed on their
/// disjoint union, or `None` if it does not relate the roots.
pub fn sigma_bisimulation(m1: &Model, m2: &Model, sigma: &Signature) -> Option<Relation> {
    let (c1, c2) = joint_coloring(
        &m1.labels(sigma),
        m1.frame.succ_lists(),
        &m2.labels(sigma),
        m2.frame.succ_lists(),
    );
    if c1[m1.frame.root()] != c2[m2.frame.root()] {
        return None;
    }
    let mut rel = Relation::new();
    for (w1, a) in c1.iter().enumerate() {
        for (w2, b) in c2.iter().enumerate() {
            if a == b {
                rel.insert((w1, w2));
            }
        }
    }
    Some(rel)
}

/// Whether the σ-reducts are isomorphic by a root-preserving frame
/// isomorphism.
pub fn reduct_isomorphic(m1: &Model, m2: &Model, sigma: &Signature) -> bool {
    rooted_isomorphism(
        &m1.labels(sigma),
        m1.frame.succ_lists(),
        m1.frame.root(),
        &m2.labels(sigma),
        m2.frame.succ_lists(),
        m2.frame.root(),
    )
    .is_some()
}
