use std::collections::{BTreeMap, HashMap, HashSet};

use super::atom::{Atom, Signature};
use super::node::{Formula, Kind};

impl Formula {
    /// Distinct reachable nodes, children before parents.
    pub fn postorder(&self) -> Vec<Formula> {
        let mut out = Vec::new();
        let mut seen = HashSet::new();
        let mut stack = vec![(self.clone(), false)];
        while let Some((f, expanded)) = stack.pop() {
            if expanded {
                out.push(f);
                continue;
            }
            if !seen.insert(f.id()) {
                continue;
            }
            stack.push((f.clone(), true));
            for c in f.children().into_iter().rev() {
                if !seen.contains(&c.id()) {
                    stack.push((c.clone(), false));
                }
            }
        }
        out
    }

    /// Number of distinct nodes.
    pub fn dag_size(&self) -> usize {
        self.postorder().len()
    }

    /// Number of nodes counted per occurrence (saturating).
    pub fn tree_size(&self) -> u64 {
        let mut size: HashMap<u64, u64> = HashMap::new();
        for f in self.postorder() {
            let s = f
                .children()
                .iter()
                .fold(1u64, |acc, c| acc.saturating_add(size[&c.id()]));
            size.insert(f.id(), s);
        }
        size[&self.id()]
    }

    pub fn signature(&self) -> Signature {
        self.postorder()
            .iter()
            .filter_map(|f| f.as_atom().cloned())
            .collect()
    }

    /// Maximal nesting of boxes.
    pub fn modal_depth(&self) -> usize {
        let mut depth: HashMap<u64, usize> = HashMap::new();
        for f in self.postorder() {
            let d = match f.kind() {
                Kind::Top | Kind::Atom(_) => 0,
                Kind::Not(a) => depth[&a.id()],
                Kind::And(a, b) => depth[&a.id()].max(depth[&b.id()]),
                Kind::Box(a) => depth[&a.id()] + 1,
            };
            depth.insert(f.id(), d);
        }
        depth[&self.id()]
    }

    /// Rebuilds the formula bottom-up, replacing each atom by `leaf(atom)`.
    /// Connectives are rebuilt with the folding constructors.
    pub fn map_atoms<F>(&self, mut leaf: F) -> Formula
    where
        F: FnMut(&Atom) -> Formula,
    {
        self.fold(|f, kids: &[Formula]| match f.kind() {
            Kind::Top => Formula::top(),
            Kind::Atom(a) => leaf(a),
            Kind::Not(_) => kids[0].not(),
            Kind::And(..) => kids[0].and(&kids[1]),
            Kind::Box(_) => kids[0].boxed(),
        })
    }

    /// Generic memoized bottom-up fold over the DAG.
    pub fn fold<T: Clone, F>(&self, mut step: F) -> T
    where
        F: FnMut(&Formula, &[T]) -> T,
    {
        let mut memo: HashMap<u64, T> = HashMap::new();
        let mut kids = Vec::with_capacity(2);
        for f in self.postorder() {
            kids.clear();
            kids.extend(f.children().iter().map(|c| memo[&c.id()].clone()));
            let v = step(&f, &kids);
            memo.insert(f.id(), v);
        }
        memo.remove(&self.id()).expect("root is visited")
    }

    /// Simultaneous substitution of atoms.
    pub fn substitute(&self, s: &BTreeMap<Atom, Formula>) -> Formula {
        if s.is_empty() {
            return self.clone();
        }
        self.map_atoms(|a| s.get(a).cloned().unwrap_or_else(|| Formula::atom(a.clone())))
    }
}
