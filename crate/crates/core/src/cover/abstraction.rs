use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::formula::{Formula, Kind};
use crate::kripke::refine::{bisim_key, joint_coloring, BisimKey};
use crate::kripke::{Model, PointedFrame, Relation};

use super::eme::{is_cover, Eme};

/// A frame whose worlds are labeled by members of an EME.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbstractModel {
    frame: Arc<PointedFrame>,
    eme: Arc<Eme>,
    labels: Vec<usize>,
}

impl AbstractModel {
    /// `labels[w]` is the index of the member labeling world `w`.
    pub fn new(frame: Arc<PointedFrame>, eme: Arc<Eme>, labels: Vec<usize>) -> Result<AbstractModel> {
        if labels.len() != frame.len() {
            return Err(Error::InvalidFrame(format!(
                "labeling covers {} worlds, frame has {}",
                labels.len(),
                frame.len()
            )));
        }
        if let Some(&bad) = labels.iter().find(|&&l| l >= eme.len()) {
            return Err(Error::InvalidEme(format!("no member with index {bad}")));
        }
        Ok(AbstractModel { frame, eme, labels })
    }

    pub fn frame(&self) -> &PointedFrame {
        &self.frame
    }

    pub fn eme(&self) -> &Arc<Eme> {
        &self.eme
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn label(&self, w: usize) -> &Formula {
        &self.eme.members()[self.labels[w]]
    }

    /// Canonical key of the abstract bisimulation class.
    pub fn key(&self) -> BisimKey<usize> {
        bisim_key(&self.labels, self.frame.succ_lists(), self.frame.root())
    }

    /// Worlds labeled with member `i`, as a bit set.
    fn member_mask(&self, i: usize) -> u64 {
        self.labels
            .iter()
            .enumerate()
            .filter(|(_, &l)| l == i)
            .fold(0, |m, (w, _)| m | (1 << w))
    }
}

impl fmt::Display for AbstractModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (root {}):", self.frame.name(), self.frame.root_id())?;
        for (i, w) in self.frame.worlds().iter().enumerate() {
            write!(f, " {w}:{}", self.label(i))?;
        }
        Ok(())
    }
}

/// The abstraction of `m` by `phi`; fails if `phi` does not cover `m`.
pub fn abstraction_of(m: &Model, phi: &Arc<Eme>) -> Result<AbstractModel> {
    if !is_cover(phi, m) {
        return Err(Error::NotCover(format!("{phi} does not cover {m}")));
    }
    AbstractModel::new(m.frame_arc().clone(), phi.clone(), phi.labels_of(m))
}

/// The coarsest label-respecting bisimulation between two abstract models
/// over the same EME, or `None` if it does not relate the roots.
pub fn abstract_bisimilar(a1: &AbstractModel, a2: &AbstractModel) -> Result<Option<Relation>> {
    if !Arc::ptr_eq(&a1.eme, &a2.eme) && a1.eme != a2.eme {
        return Err(Error::InvalidEme("abstract models use different EMEs".into()));
    }
    let (c1, c2) = joint_coloring(
        &a1.labels,
        a1.frame.succ_lists(),
        &a2.labels,
        a2.frame.succ_lists(),
    );
    if c1[a1.frame.root()] != c2[a2.frame.root()] {
        return Ok(None);
    }
    let mut rel = Relation::new();
    for (w1, x) in c1.iter().enumerate() {
        for (w2, y) in c2.iter().enumerate() {
            if x == y {
                rel.insert((w1, w2));
            }
        }
    }
    Ok(Some(rel))
}

/// Worlds of `a` where `f` holds, with members of the EME read as atoms:
/// a subformula equal to a member is true exactly at the worlds it labels.
/// Since `¬¬` folds on construction, a subformula whose negation is a
/// member is read as that member's complement.
pub fn eval_abstract_mask(a: &AbstractModel, f: &Formula) -> Result<u64> {
    fn go(a: &AbstractModel, g: &Formula, memo: &mut HashMap<u64, u64>) -> Result<u64> {
        if let Some(&m) = memo.get(&g.id()) {
            return Ok(m);
        }
        let full = a.frame.full_mask();
        let v = if let Some(i) = a.eme.index_of(g) {
            a.member_mask(i)
        } else if let Some(i) = a.eme.index_of(&g.not()) {
            !a.member_mask(i) & full
        } else {
            match g.kind() {
                Kind::Top => full,
                Kind::Atom(x) => return Err(Error::UnexpectedAtom(x.to_string())),
                Kind::Not(x) => !go(a, x, memo)? & full,
                Kind::And(x, y) => go(a, x, memo)? & go(a, y, memo)?,
                Kind::Box(x) => {
                    let inner = go(a, x, memo)?;
                    (0..a.frame.len())
                        .filter(|&w| a.frame.succ_mask(w) & !inner == 0)
                        .fold(0, |m, w| m | (1 << w))
                }
            }
        };
        memo.insert(g.id(), v);
        Ok(v)
    }
    go(a, f, &mut HashMap::new())
}

/// Truth of `f` at world `w` of `a`.
pub fn eval_abstract(a: &AbstractModel, w: &str, f: &Formula) -> Result<bool> {
    let i = a.frame.world_index(w)?;
    Ok((eval_abstract_mask(a, f)? >> i) & 1 == 1)
}

/// Blocks of the coarsest stable partition refining the labeling, each
/// with a formula over the members that defines it: blocks start as the
/// nonempty member classes, and a block is split by the first block (in
/// order) that some but not all of its worlds see.
fn identified_blocks(a: &AbstractModel) -> Vec<(u64, Formula)> {
    let fr = &a.frame;
    let mut blocks: Vec<(u64, Formula)> = (0..a.eme.len())
        .map(|i| (a.member_mask(i), a.eme.members()[i].clone()))
        .filter(|(m, _)| *m != 0)
        .collect();
    'scan: loop {
        for i in 0..blocks.len() {
            for j in 0..blocks.len() {
                let target = blocks[j].0;
                let (mut sees, mut blind) = (0u64, 0u64);
                for w in 0..fr.len() {
                    if (blocks[i].0 >> w) & 1 == 1 {
                        if fr.succ_mask(w) & target != 0 {
                            sees |= 1 << w;
                        } else {
                            blind |= 1 << w;
                        }
                    }
                }
                if sees != 0 && blind != 0 {
                    let dia = blocks[j].1.diamond();
                    let psi = blocks[i].1.clone();
                    blocks[i] = (sees, psi.and(&dia));
                    blocks.insert(i + 1, (blind, psi.and(&dia.not())));
                    continue 'scan;
                }
            }
        }
        return blocks;
    }
}

/// A formula over the members of `a`'s EME that holds at the root of an
/// abstract model of size at most `n` iff it is abstractly bisimilar to
/// `a`.
pub fn class_identifier(a: &AbstractModel, n: usize) -> Formula {
    let fr = &a.frame;
    let blocks = identified_blocks(a);
    let root_block = blocks
        .iter()
        .find(|(m, _)| (m >> fr.root()) & 1 == 1)
        .expect("blocks partition the worlds");
    let mut parts = vec![
        root_block.1.clone(),
        Formula::box_upto(&Formula::disj(blocks.iter().map(|(_, f)| f.clone())), n),
    ];
    for (mi, fi) in &blocks {
        for (mj, fj) in &blocks {
            // the partition is stable, so one world of the block decides
            let w = mi.trailing_zeros() as usize;
            let dia = fj.diamond();
            let rel = if fr.succ_mask(w) & mj != 0 { dia } else { dia.not() };
            parts.push(Formula::box_upto(&fi.implies(&rel), n));
        }
    }
    Formula::conj(parts)
}
