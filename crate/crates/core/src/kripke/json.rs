use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::formula::Atom;

use super::frame::PointedFrame;
use super::logic::Logic;
use super::model::Model;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct FrameJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub worlds: Vec<String>,
    pub edges: Vec<(String, String)>,
    pub root: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct LogicJson {
    pub name: String,
    #[serde(default)]
    pub normal: bool,
    pub frames: Vec<FrameJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ModelJson {
    #[serde(flatten)]
    pub frame: FrameJson,
    pub valuation: BTreeMap<String, Vec<String>>,
}

impl FrameJson {
    pub fn from_frame(fr: &PointedFrame) -> FrameJson {
        FrameJson {
            name: Some(fr.name().to_string()),
            worlds: fr.worlds().iter().map(|w| w.to_string()).collect(),
            edges: fr
                .edges()
                .into_iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect(),
            root: fr.root_id().to_string(),
        }
    }

    /// Builds the frame; `default_name` is used when the JSON has none.
    pub fn to_frame(&self, default_name: &str) -> Result<PointedFrame> {
        let name = self.name.as_deref().unwrap_or(default_name);
        PointedFrame::new(name, &self.worlds, &self.edges, &self.root)
    }
}

impl LogicJson {
    pub fn from_logic(l: &Logic) -> LogicJson {
        LogicJson {
            name: l.name().to_string(),
            normal: l.is_normal(),
            frames: l.frames().iter().map(FrameJson::from_frame).collect(),
        }
    }

    pub fn to_logic(&self) -> Result<Logic> {
        let frames = self
            .frames
            .iter()
            .enumerate()
            .map(|(i, f)| f.to_frame(&format!("F{i}")))
            .collect::<Result<Vec<_>>>()?;
        Logic::new(&self.name, frames, self.normal)
    }
}

impl ModelJson {
    pub fn from_model(m: &Model) -> ModelJson {
        let fr = m.frame();
        ModelJson {
            frame: FrameJson::from_frame(fr),
            valuation: fr
                .worlds()
                .iter()
                .enumerate()
                .map(|(i, w)| {
                    (
                        w.to_string(),
                        m.valuation(i).iter().map(|a| a.to_string()).collect(),
                    )
                })
                .collect(),
        }
    }

    pub fn to_model(&self) -> Result<Model> {
        let fr = Arc::new(self.frame.to_frame("M")?);
        let mut val = vec![BTreeSet::new(); fr.len()];
        for (w, atoms) in &self.valuation {
            let i = fr.world_index(w)?;
            for a in atoms {
                val[i].insert(Atom::try_base(a)?);
            }
        }
        Model::new(fr, val)
    }
}

impl PointedFrame {
    pub fn from_json(text: &str) -> Result<PointedFrame> {
        serde_json::from_str::<FrameJson>(text)?.to_frame("F")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&FrameJson::from_frame(self)).expect("serializable")
    }
}

impl Logic {
    pub fn from_json(text: &str) -> Result<Logic> {
        serde_json::from_str::<LogicJson>(text)?.to_logic()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&LogicJson::from_logic(self)).expect("serializable")
    }
}

impl Model {
    pub fn from_json(text: &str) -> Result<Model> {
        serde_json::from_str::<ModelJson>(text)?.to_model()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&ModelJson::from_model(self)).expect("serializable")
    }
}
