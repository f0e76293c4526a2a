//! Partition refinement on labeled graphs.
//!
//! Colors are computed canonically: at every round a world's color is the
//! rank of `(old color, set of successor colors)` among all such pairs in
//! the graph, so isomorphic (and, for rooted graphs, bisimilar) inputs get
//! identical numberings.

/// Ranks of `items` among their sorted distinct values.
fn ranks<T: Ord>(items: &[T]) -> Vec<usize> {
    let mut sorted: Vec<&T> = items.iter().collect();
    sorted.sort();
    sorted.dedup();
    items
        .iter()
        .map(|x| sorted.binary_search(&x).expect("present"))
        .collect()
}

/// Coarsest partition that refines `labels` and is stable under the
/// successor relation: two worlds share a color iff they are bisimilar with
/// respect to the labels.
pub fn stable_coloring<T: Ord>(labels: &[T], succ: &[Vec<usize>]) -> Vec<usize> {
    let mut color = ranks(labels);
    let mut classes = color.iter().max().map_or(0, |m| m + 1);
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..color.len())
            .map(|w| {
                let mut s: Vec<usize> = succ[w].iter().map(|&v| color[v]).collect();
                s.sort_unstable();
                s.dedup();
                (color[w], s)
            })
            .collect();
        let next = ranks(&sigs);
        let count = next.iter().max().map_or(0, |m| m + 1);
        color = next;
        if count == classes {
            return color;
        }
        classes = count;
    }
}

/// Successor lists of the disjoint union; the second graph's worlds are
/// shifted by `a.len()`.
pub fn union_succ(a: &[Vec<usize>], b: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let off = a.len();
    a.iter()
        .cloned()
        .chain(b.iter().map(|s| s.iter().map(|v| v + off).collect()))
        .collect()
}

/// Stable coloring of the disjoint union of two labeled graphs, split back
/// into the two halves.
pub fn joint_coloring<T: Ord + Clone>(
    l1: &[T],
    s1: &[Vec<usize>],
    l2: &[T],
    s2: &[Vec<usize>],
) -> (Vec<usize>, Vec<usize>) {
    let labels: Vec<T> = l1.iter().chain(l2).cloned().collect();
    let mut color = stable_coloring(&labels, &union_succ(s1, s2));
    let second = color.split_off(l1.len());
    (color, second)
}

/// Canonical form of the bisimulation quotient of a rooted labeled graph.
/// Two rooted graphs (every world reachable from the root) are bisimilar
/// iff their keys are equal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BisimKey<T> {
    classes: Vec<(T, Vec<usize>)>,
    root: usize,
}

impl<T> BisimKey<T> {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }
}

pub fn bisim_key<T: Ord + Clone>(labels: &[T], succ: &[Vec<usize>], root: usize) -> BisimKey<T> {
    let color = stable_coloring(labels, succ);
    let k = color.iter().max().map_or(0, |m| m + 1);
    let mut classes: Vec<Option<(T, Vec<usize>)>> = vec![None; k];
    for (w, &c) in color.iter().enumerate() {
        if classes[c].is_none() {
            let mut s: Vec<usize> = succ[w].iter().map(|&v| color[v]).collect();
            s.sort_unstable();
            s.dedup();
            classes[c] = Some((labels[w].clone(), s));
        }
    }
    BisimKey {
        classes: classes.into_iter().map(|c| c.expect("every color used")).collect(),
        root: color[root],
    }
}
