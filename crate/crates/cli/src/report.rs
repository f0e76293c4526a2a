//! Command output: an ordered list of named fields rendered as text or
//! JSON.

use serde_json::{json, Map, Value};
use tabint::interpolation::Verdict;
use tabint::kripke::{Model, ModelJson};
use tabint::Formula;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Default)]
pub struct Report {
    fields: Vec<(String, Value, String)>,
}

pub fn formula_value(f: &Formula) -> Value {
    json!({ "formula": f.to_string(), "dag_size": f.dag_size(), "tree_size": f.tree_size() })
}

pub fn model_value(m: &Model) -> Value {
    serde_json::to_value(ModelJson::from_model(m)).expect("serializable")
}

pub fn verdict_value(v: &Verdict) -> Value {
    match &v.witness {
        None => json!({ "holds": true }),
        Some(w) => json!({
            "holds": false,
            "reason": w.reason,
            "model": w.model.as_ref().map(model_value),
            "formula": w.formula.as_ref().map(formula_value),
        }),
    }
}

impl Report {
    pub fn new() -> Report {
        Report::default()
    }

    /// A field with a plain text rendering.
    pub fn field(&mut self, key: &str, value: Value, text: impl Into<String>) -> &mut Report {
        self.fields.push((key.to_string(), value, text.into()));
        self
    }

    pub fn str(&mut self, key: &str, s: impl Into<String>) -> &mut Report {
        let s = s.into();
        self.field(key, Value::String(s.clone()), s)
    }

    pub fn formula(&mut self, key: &str, f: &Formula) -> &mut Report {
        let text = format!("{f}\n  (dag size {}, tree size {})", f.dag_size(), f.tree_size());
        self.field(key, formula_value(f), text)
    }

    pub fn model(&mut self, key: &str, m: &Model) -> &mut Report {
        self.field(key, model_value(m), m.to_string())
    }

    pub fn verdict(&mut self, key: &str, v: &Verdict) -> &mut Report {
        let text = match &v.witness {
            None => "holds".to_string(),
            Some(w) => {
                let mut t = format!("FAILS: {}", w.reason);
                if let Some(m) = &w.model {
                    t.push_str(&format!("\n  model: {m}"));
                }
                if let Some(f) = &w.formula {
                    t.push_str(&format!("\n  formula: {f}"));
                }
                t
            }
        };
        self.field(key, verdict_value(v), text)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let map: Map<String, Value> = self.fields.iter().map(|(k, v, _)| (k.clone(), v.clone())).collect();
                let mut s = serde_json::to_string_pretty(&Value::Object(map)).expect("serializable");
                s.push('\n');
                s
            }
            Format::Text => self.fields.iter().map(|(k, _, t)| format!("{k}: {t}\n")).collect(),
        }
    }
}
