use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::formula::{Atom, Formula};
use crate::kripke::iso::rooted_isomorphism;
use crate::kripke::refine::joint_coloring;
use crate::kripke::{member_of_logic, Logic, Model, PointedFrame};

/// Default bound on the number of joint colorings examined per frame pair.
pub const DEFAULT_CIP_BUDGET: u128 = 1 << 24;

fn diagram_atom(w: &str) -> Formula {
    Formula::atom(Atom::base(&format!("q_{w}")))
}

/// `diag_N` of a pointed frame over fresh atoms `q_w`: the root is `q_root`,
/// and within `N` steps every world satisfies exactly one `q_v` and sees
/// `q_v'` iff `v R v'`.
pub fn diagram_formula(pf: &PointedFrame, n: usize) -> Formula {
    let q: Vec<Formula> = pf.worlds().iter().map(|w| diagram_atom(w)).collect();
    let mut parts = vec![
        q[pf.root()].clone(),
        Formula::box_upto(&Formula::disj(q.iter().cloned()), n),
    ];
    for v in 0..q.len() {
        for u in 0..q.len() {
            if u != v {
                parts.push(Formula::box_upto(&q[v].implies(&q[u].not()), n));
            }
        }
    }
    for v in 0..q.len() {
        for u in 0..q.len() {
            if pf.has_edge(v, u) {
                parts.push(Formula::box_upto(&q[v].implies(&q[u].diamond()), n));
            }
        }
    }
    for v in 0..q.len() {
        for u in 0..q.len() {
            if !pf.has_edge(v, u) {
                parts.push(Formula::box_upto(&q[v].implies(&q[u].diamond().not()), n));
            }
        }
    }
    Formula::conj(parts)
}

/// Whether `diag_N(sub)` is satisfiable at the root of some model on
/// `host`, i.e. the logic of `host` is contained in that of `sub`.
pub fn diagram_satisfiable(sub: &PointedFrame, host: &PointedFrame, n: usize) -> Result<bool> {
    let host = Logic::singleton(host.clone());
    Ok(!member_of_logic(&host, &diagram_formula(sub, n).not())?)
}

/// The same logic on a reduced frame set: a frame is dropped when the
/// logic of another remaining frame is contained in its own.
pub fn reduce_logic(l: &Logic) -> Result<Logic> {
    let n = l.bound();
    let frames = l.frames();
    let mut keep = vec![true; frames.len()];
    for i in 0..frames.len() {
        for j in 0..frames.len() {
            if i != j && keep[j] && diagram_satisfiable(&frames[i], &frames[j], n)? {
                keep[i] = false;
                break;
            }
        }
    }
    let kept: Vec<PointedFrame> = frames
        .iter()
        .zip(&keep)
        .filter(|(_, &k)| k)
        .map(|(f, _)| f.clone())
        .collect();
    Logic::new(l.name(), kept, false)
}

/// Two models on frames of the logic whose roots are bisimilar but whose
/// reducts are not isomorphic. Worlds are colored by atoms `c0, c1, …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CipWitness {
    pub left: Model,
    pub right: Model,
}

fn bell_bound(k: usize) -> u128 {
    // Bell numbers via the triangle
    let mut row = vec![1u128];
    for _ in 0..k {
        let mut next = vec![*row.last().expect("nonempty")];
        for x in &row {
            let v = next.last().expect("nonempty").saturating_add(*x);
            next.push(v);
        }
        row = next;
    }
    row[0]
}

/// Advances a restricted growth string to the next set partition.
fn next_partition(r: &mut [usize]) -> bool {
    let mut prefix_max = vec![0; r.len()];
    for k in 1..r.len() {
        prefix_max[k] = prefix_max[k - 1].max(r[k - 1]);
    }
    for k in (1..r.len()).rev() {
        if r[k] <= prefix_max[k] {
            r[k] += 1;
            r[k + 1..].fill(0);
            return true;
        }
    }
    false
}

fn colored_model(fr: &PointedFrame, colors: &[usize]) -> Model {
    let val = colors
        .iter()
        .map(|c| BTreeSet::from([Atom::base(&format!("c{c}"))]))
        .collect();
    Model::new(Arc::new(fr.clone()), val).expect("sizes match")
}

/// Searches for a violation of the interpolation criterion on a reduced
/// frame set: over every pair of frames and every partition of their
/// disjoint union into color classes, bisimilar roots must come with
/// isomorphic colored frames.
pub fn cip_witness(l: &Logic) -> Result<Option<CipWitness>> {
    cip_witness_with_budget(l, DEFAULT_CIP_BUDGET)
}

pub fn cip_witness_with_budget(l: &Logic, budget: u128) -> Result<Option<CipWitness>> {
    let reduced = reduce_logic(l)?;
    let frames = reduced.frames();
    let needed = (0..frames.len())
        .flat_map(|i| (i..frames.len()).map(move |j| (i, j)))
        .fold(0u128, |s, (i, j)| s.saturating_add(bell_bound(frames[i].len() + frames[j].len())));
    if needed > budget {
        return Err(Error::Budget {
            what: "colorings for the interpolation criterion",
            needed,
            budget,
        });
    }
    for i in 0..frames.len() {
        for j in i..frames.len() {
            let (a, b) = (&frames[i], &frames[j]);
            let total = a.len() + b.len();
            // restricted growth strings enumerate set partitions
            let mut rgs = vec![0usize; total];
            loop {
                let (ca, cb) = rgs.split_at(a.len());
                let (ka, kb) = joint_coloring(ca, a.succ_lists(), cb, b.succ_lists());
                if ka[a.root()] == kb[b.root()]
                    && rooted_isomorphism(ca, a.succ_lists(), a.root(), cb, b.succ_lists(), b.root()).is_none()
                {
                    return Ok(Some(CipWitness {
                        left: colored_model(a, ca),
                        right: colored_model(b, cb),
                    }));
                }
                if !next_partition(&mut rgs) {
                    break;
                }
            }
        }
    }
    Ok(None)
}

/// Whether the logic has the Craig interpolation property.
pub fn has_cip(l: &Logic) -> Result<bool> {
    Ok(cip_witness(l)?.is_none())
}
