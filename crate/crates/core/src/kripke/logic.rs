use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::prop::find_countervaluation;
use crate::translation::tr_frame;

use super::frame::PointedFrame;
use super::model::Model;

/// A tabular logic given by a finite set of finite pointed frames.
///
/// Frame names are distinct and world ids are disjoint across frames; if
/// the given frames share world ids, every world `w` of frame `F` is
/// renamed to `F_w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Logic {
    name: Arc<str>,
    frames: Vec<PointedFrame>,
    normal: bool,
}

impl Logic {
    /// Builds a logic. With `normal` set, the frames must be closed under
    /// generated subframes up to isomorphism.
    pub fn new(name: &str, frames: Vec<PointedFrame>, normal: bool) -> Result<Logic> {
        if frames.is_empty() {
            return Err(Error::InvalidLogic(format!("`{name}` has no frames")));
        }
        let mut names = HashSet::new();
        for fr in &frames {
            if !names.insert(fr.name().to_string()) {
                return Err(Error::InvalidLogic(format!(
                    "duplicate frame name `{}` in `{name}`",
                    fr.name()
                )));
            }
        }
        let mut seen = HashSet::new();
        let clash = frames
            .iter()
            .flat_map(|fr| fr.worlds().iter())
            .any(|w| !seen.insert(w.clone()));
        let frames = if clash {
            frames
                .iter()
                .map(|fr| fr.with_world_prefix(&format!("{}_", fr.name())))
                .collect::<Result<Vec<_>>>()?
        } else {
            frames
        };
        if normal {
            for fr in &frames {
                for w in fr.worlds() {
                    let sub = fr.generated_subframe(w)?;
                    if !frames.iter().any(|g| g.isomorphic(&sub)) {
                        return Err(Error::InvalidLogic(format!(
                            "`{name}` is marked normal but the subframe of `{}` generated by `{w}` is missing",
                            fr.name()
                        )));
                    }
                }
            }
        }
        Ok(Logic {
            name: name.into(),
            frames,
            normal,
        })
    }

    /// Normal logic of the given frames: generated subframes that are not
    /// already present up to isomorphism are added, named `F_w`.
    pub fn normal_closure(name: &str, frames: Vec<PointedFrame>) -> Result<Logic> {
        let mut all: Vec<PointedFrame> = Vec::new();
        let mut queue = frames;
        queue.reverse();
        while let Some(fr) = queue.pop() {
            if all.iter().any(|g| g.isomorphic(&fr)) {
                continue;
            }
            for w in fr.worlds() {
                if w.as_ref() != fr.root_id() {
                    let sub = fr.generated_subframe(w)?.renamed(&format!("{}_{w}", fr.name()))?;
                    queue.insert(0, sub);
                }
            }
            all.push(fr);
        }
        Logic::new(name, all, true)
    }

    /// Quasi-normal logic of one pointed frame.
    pub fn singleton(frame: PointedFrame) -> Logic {
        Logic {
            name: frame.name().into(),
            frames: vec![frame],
            normal: false,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn frames(&self) -> &[PointedFrame] {
        &self.frames
    }

    pub fn frame(&self, name: &str) -> Option<&PointedFrame> {
        self.frames.iter().find(|f| f.name() == name)
    }

    pub fn is_normal(&self) -> bool {
        self.normal
    }

    /// `N`, the size of the largest frame.
    pub fn bound(&self) -> usize {
        self.frames.iter().map(PointedFrame::len).max().unwrap_or(0)
    }

    /// Same frames under a different logic name.
    pub fn renamed(&self, name: &str) -> Logic {
        Logic {
            name: name.into(),
            ..self.clone()
        }
    }
}

/// A model on one of the logic's frames refuting `f` at its root.
pub fn find_countermodel(l: &Logic, f: &Formula) -> Result<Option<Model>> {
    for fr in l.frames() {
        let tr = tr_frame(fr, fr.root_id(), f)?;
        if let Some(v) = find_countervaluation(&tr)? {
            return Ok(Some(Model::from_indexed(Arc::new(fr.clone()), &v)));
        }
    }
    Ok(None)
}

/// `f ∈ L`: the translation of `f` at every frame's root is a tautology.
pub fn member_of_logic(l: &Logic, f: &Formula) -> Result<bool> {
    Ok(find_countermodel(l, f)?.is_none())
}
