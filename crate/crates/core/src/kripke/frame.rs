use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::formula::valid_id;

use super::iso::rooted_isomorphism;

/// Largest frame the library handles; world sets are packed into `u64`.
pub const MAX_WORLDS: usize = 64;

/// A finite frame with a root from which every world is reachable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointedFrame {
    name: Arc<str>,
    worlds: Vec<Arc<str>>,
    index: HashMap<Arc<str>, usize>,
    succ: Vec<Vec<usize>>,
    succ_bits: Vec<u64>,
    root: usize,
}

impl PointedFrame {
    /// Builds a frame from world ids, edges and a root. Worlds keep the
    /// given order; successor lists are sorted.
    pub fn new<S: AsRef<str>>(name: &str, worlds: &[S], edges: &[(S, S)], root: &str) -> Result<Self> {
        if !valid_id(name) {
            return Err(Error::InvalidId(name.to_string()));
        }
        if worlds.is_empty() || worlds.len() > MAX_WORLDS {
            return Err(Error::InvalidFrame(format!(
                "a frame needs between 1 and {MAX_WORLDS} worlds, got {}",
                worlds.len()
            )));
        }
        let mut index = HashMap::new();
        let mut ids = Vec::with_capacity(worlds.len());
        for w in worlds {
            let w = w.as_ref();
            if !valid_id(w) {
                return Err(Error::InvalidId(w.to_string()));
            }
            let id: Arc<str> = w.into();
            if index.insert(id.clone(), ids.len()).is_some() {
                return Err(Error::InvalidFrame(format!("duplicate world `{w}`")));
            }
            ids.push(id);
        }
        let lookup = |w: &str| {
            index
                .get(w)
                .copied()
                .ok_or_else(|| Error::UnknownWorld(w.to_string()))
        };
        let mut succ: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); ids.len()];
        for (a, b) in edges {
            succ[lookup(a.as_ref())?].insert(lookup(b.as_ref())?);
        }
        let root = lookup(root)?;
        let succ_bits = succ
            .iter()
            .map(|s| s.iter().fold(0u64, |m, &v| m | (1 << v)))
            .collect();
        let frame = PointedFrame {
            name: name.into(),
            worlds: ids,
            index,
            succ: succ.into_iter().map(|s| s.into_iter().collect()).collect(),
            succ_bits,
            root,
        };
        let reach = frame.reachable(root);
        if let Some(w) = (0..frame.len()).find(|w| !reach[*w]) {
            return Err(Error::InvalidFrame(format!(
                "world `{}` is not reachable from the root",
                frame.worlds[w]
            )));
        }
        Ok(frame)
    }

    /// Frame on worlds `0..n` given by successor lists over indices.
    pub fn from_succ(name: &str, succ: Vec<Vec<usize>>, root: usize) -> Result<Self> {
        let worlds: Vec<String> = (0..succ.len()).map(|i| i.to_string()).collect();
        let mut edges = Vec::new();
        for (a, ss) in succ.iter().enumerate() {
            for &b in ss {
                if b >= succ.len() {
                    return Err(Error::UnknownWorld(b.to_string()));
                }
                edges.push((worlds[a].clone(), worlds[b].clone()));
            }
        }
        let root = worlds
            .get(root)
            .ok_or_else(|| Error::UnknownWorld(root.to_string()))?
            .clone();
        PointedFrame::new(name, &worlds, &edges, &root)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.worlds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.worlds.is_empty()
    }

    pub fn worlds(&self) -> &[Arc<str>] {
        &self.worlds
    }

    pub fn world(&self, i: usize) -> &str {
        &self.worlds[i]
    }

    pub fn world_index(&self, w: &str) -> Result<usize> {
        self.index
            .get(w)
            .copied()
            .ok_or_else(|| Error::UnknownWorld(w.to_string()))
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn root_id(&self) -> &str {
        &self.worlds[self.root]
    }

    pub fn succ(&self, i: usize) -> &[usize] {
        &self.succ[i]
    }

    pub fn succ_lists(&self) -> &[Vec<usize>] {
        &self.succ
    }

    /// Successors of `i` as a bit set.
    pub fn succ_mask(&self, i: usize) -> u64 {
        self.succ_bits[i]
    }

    /// Bit set of all worlds.
    pub fn full_mask(&self) -> u64 {
        if self.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.len()) - 1
        }
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        (self.succ_bits[a] >> b) & 1 == 1
    }

    /// Edges as world-id pairs in index order.
    pub fn edges(&self) -> Vec<(Arc<str>, Arc<str>)> {
        self.succ
            .iter()
            .enumerate()
            .flat_map(|(a, ss)| {
                ss.iter()
                    .map(move |&b| (self.worlds[a].clone(), self.worlds[b].clone()))
            })
            .collect()
    }

    fn reachable(&self, from: usize) -> Vec<bool> {
        let mut seen = vec![false; self.len()];
        let mut stack = vec![from];
        seen[from] = true;
        while let Some(w) = stack.pop() {
            for &s in &self.succ[w] {
                if !seen[s] {
                    seen[s] = true;
                    stack.push(s);
                }
            }
        }
        seen
    }

    /// Restriction to the worlds reachable from `v`, rooted at `v`.
    pub fn generated_subframe(&self, v: &str) -> Result<PointedFrame> {
        let v = self.world_index(v)?;
        let reach = self.reachable(v);
        let keep: Vec<usize> = (0..self.len()).filter(|w| reach[*w]).collect();
        let worlds: Vec<&str> = keep.iter().map(|&w| self.world(w)).collect();
        let edges: Vec<(&str, &str)> = keep
            .iter()
            .flat_map(|&a| self.succ[a].iter().map(move |&b| (self.world(a), self.world(b))))
            .collect();
        PointedFrame::new(&self.name, &worlds, &edges, self.world(v))
    }

    /// Same frame under another name.
    pub fn renamed(&self, name: &str) -> Result<PointedFrame> {
        if !valid_id(name) {
            return Err(Error::InvalidId(name.to_string()));
        }
        Ok(PointedFrame {
            name: name.into(),
            ..self.clone()
        })
    }

    /// Same frame with every world id prefixed.
    pub fn with_world_prefix(&self, prefix: &str) -> Result<PointedFrame> {
        let worlds: Vec<String> = self.worlds.iter().map(|w| format!("{prefix}{w}")).collect();
        let edges: Vec<(String, String)> = self
            .edges()
            .iter()
            .map(|(a, b)| (format!("{prefix}{a}"), format!("{prefix}{b}")))
            .collect();
        let root = format!("{prefix}{}", self.root_id());
        PointedFrame::new(&self.name, &worlds, &edges, &root)
    }

    /// Root-preserving isomorphism of the underlying frames.
    pub fn isomorphic(&self, other: &PointedFrame) -> bool {
        let l1 = vec![0u8; self.len()];
        let l2 = vec![0u8; other.len()];
        rooted_isomorphism(&l1, &self.succ, self.root, &l2, &other.succ, other.root).is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fork3() -> PointedFrame {
        PointedFrame::new(
            "F13",
            &["0", "1", "2", "3"],
            &[("0", "1"), ("0", "2"), ("0", "3")],
            "0",
        )
        .unwrap()
    }

    fn chain2() -> PointedFrame {
        PointedFrame::new("C", &["0", "1", "2"], &[("0", "1"), ("0", "2"), ("1", "2")], "0").unwrap()
    }

    #[test]
    fn validation() {
        assert!(PointedFrame::new("F", &["0", "1"], &[("0", "1")], "1").is_err());
        assert!(PointedFrame::new("F", &["0"], &[("0", "1")], "0").is_err());
        assert!(PointedFrame::new("F", &["0", "0"], &[], "0").is_err());
        assert!(PointedFrame::new("F", &["0"], &[], "x").is_err());
        assert!(PointedFrame::new("bad-name", &["0"], &[], "0").is_err());
    }

    #[test]
    fn generated_subframes() {
        let f = fork3();
        assert_eq!(f.generated_subframe("0").unwrap(), f);
        let leaf = f.generated_subframe("1").unwrap();
        assert_eq!(leaf.len(), 1);
        assert!(leaf.succ(0).is_empty());
        let mid = chain2().generated_subframe("1").unwrap();
        assert_eq!(mid.len(), 2);
        assert_eq!(mid.root_id(), "1");
        let one_edge = PointedFrame::new("C", &["0", "1"], &[("0", "1")], "0").unwrap();
        assert!(mid.isomorphic(&one_edge));
    }

    #[test]
    fn isomorphism_ignores_names() {
        let a = PointedFrame::new("A", &["x", "y"], &[("x", "y")], "x").unwrap();
        let b = PointedFrame::new("B", &["0", "1"], &[("0", "1")], "0").unwrap();
        let c = PointedFrame::new("B", &["0", "1"], &[("0", "1"), ("1", "1")], "0").unwrap();
        assert!(a.isomorphic(&b));
        assert!(!a.isomorphic(&c));
    }
}
