use super::refine::joint_coloring;

fn adjacency(succ: &[Vec<usize>]) -> Vec<u64> {
    succ.iter()
        .map(|s| s.iter().fold(0u64, |m, &v| m | (1 << v)))
        .collect()
}

fn bfs_order(succ: &[Vec<usize>], root: usize) -> Vec<usize> {
    let mut seen = vec![false; succ.len()];
    let mut order = vec![root];
    seen[root] = true;
    let mut i = 0;
    while i < order.len() {
        for &v in &succ[order[i]] {
            if !seen[v] {
                seen[v] = true;
                order.push(v);
            }
        }
        i += 1;
    }
    // worlds not reachable from the root still need an image
    order.extend((0..succ.len()).filter(|w| !seen[*w]));
    order
}

/// A label- and root-preserving isomorphism between two labeled graphs of
/// at most 64 worlds, as a map from the first graph's worlds to the
/// second's. Candidates are pruned by a joint stable coloring, then matched
/// by backtracking in breadth-first order.
pub fn rooted_isomorphism<T: Ord + Clone>(
    l1: &[T],
    s1: &[Vec<usize>],
    r1: usize,
    l2: &[T],
    s2: &[Vec<usize>],
    r2: usize,
) -> Option<Vec<usize>> {
    let n = l1.len();
    if n != l2.len() {
        return None;
    }
    let (c1, c2) = joint_coloring(l1, s1, l2, s2);
    if c1[r1] != c2[r2] {
        return None;
    }
    let mut h1 = c1.clone();
    let mut h2 = c2.clone();
    h1.sort_unstable();
    h2.sort_unstable();
    if h1 != h2 {
        return None;
    }
    let a1 = adjacency(s1);
    let a2 = adjacency(s2);
    let order = bfs_order(s1, r1);
    let mut map = vec![usize::MAX; n];
    let mut used = 0u64;
    map[r1] = r2;
    used |= 1 << r2;
    if !consistent(&a1, &a2, &order[..1], &map, r1, r2) {
        return None;
    }
    let search = Search {
        a1: &a1,
        a2: &a2,
        c1: &c1,
        c2: &c2,
        order: &order,
    };
    if search.extend(1, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

fn bit(m: u64, i: usize) -> bool {
    (m >> i) & 1 == 1
}

/// Edges between `w` and the already placed worlds (and its loop) agree
/// with those between their images.
fn consistent(a1: &[u64], a2: &[u64], placed: &[usize], map: &[usize], w: usize, v: usize) -> bool {
    if bit(a1[w], w) != bit(a2[v], v) {
        return false;
    }
    placed.iter().all(|&u| {
        let hu = map[u];
        bit(a1[u], w) == bit(a2[hu], v) && bit(a1[w], u) == bit(a2[v], hu)
    })
}

struct Search<'a> {
    a1: &'a [u64],
    a2: &'a [u64],
    c1: &'a [usize],
    c2: &'a [usize],
    order: &'a [usize],
}

impl Search<'_> {
    fn extend(&self, depth: usize, map: &mut [usize], used: &mut u64) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let w = self.order[depth];
        for v in 0..self.c2.len() {
            if bit(*used, v) || self.c2[v] != self.c1[w] {
                continue;
            }
            if !consistent(self.a1, self.a2, &self.order[..depth], map, w, v) {
                continue;
            }
            map[w] = v;
            *used |= 1 << v;
            if self.extend(depth + 1, map, used) {
                return true;
            }
            *used &= !(1 << v);
            map[w] = usize::MAX;
        }
        false
    }
}
