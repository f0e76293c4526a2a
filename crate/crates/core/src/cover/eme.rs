use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::formula::{Atom, Formula, Signature};
use crate::kripke::{Model, PointedFrame};
use crate::prop::{eval, is_satisfiable, is_tautology, Valuation};

/// A literal conjunction as a map from atoms to polarities.
pub type Literals = BTreeMap<Atom, bool>;

fn literal_formula(lits: &Literals) -> Formula {
    Formula::conj(lits.iter().map(|(a, &b)| {
        let x = Formula::atom(a.clone());
        if b {
            x
        } else {
            x.not()
        }
    }))
}

/// Sort key putting positive literals first.
fn literal_key(lits: &Literals) -> Vec<(Atom, bool)> {
    lits.iter().map(|(a, &b)| (a.clone(), !b)).collect()
}

/// An exhaustive, mutually exclusive set of propositional formulas over a
/// signature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Eme {
    sigma: Signature,
    members: Vec<Formula>,
}

impl Eme {
    /// Checks exhaustiveness and pairwise exclusion.
    pub fn new(sigma: Signature, members: Vec<Formula>) -> Result<Eme> {
        if members.is_empty() {
            return Err(Error::InvalidEme("no members".into()));
        }
        for m in &members {
            if !m.is_propositional() {
                return Err(Error::InvalidEme(format!("`{m}` is modal")));
            }
            if let Some(a) = m.signature().difference(&sigma).next() {
                return Err(Error::InvalidEme(format!("`{m}` uses `{a}` outside the signature")));
            }
        }
        if !is_tautology(&Formula::disj(members.iter().cloned()))? {
            return Err(Error::InvalidEme("members are not exhaustive".into()));
        }
        for (i, a) in members.iter().enumerate() {
            for b in &members[i + 1..] {
                if is_satisfiable(&a.and(b))? {
                    return Err(Error::InvalidEme(format!("`{a}` and `{b}` overlap")));
                }
            }
        }
        Ok(Eme { sigma, members })
    }

    /// `{⊤}`.
    pub fn trivial(sigma: Signature) -> Eme {
        Eme {
            sigma,
            members: vec![Formula::top()],
        }
    }

    /// Members given as literal conjunctions that form the leaves of a
    /// refinement tree, so validity holds by construction.
    pub(crate) fn from_leaves(sigma: Signature, leaves: &[Literals]) -> Eme {
        Eme {
            sigma,
            members: leaves.iter().map(literal_formula).collect(),
        }
    }

    pub fn sigma(&self) -> &Signature {
        &self.sigma
    }

    pub fn members(&self) -> &[Formula] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn index_of(&self, f: &Formula) -> Option<usize> {
        self.members.iter().position(|m| m == f)
    }

    /// Index of the member satisfied by a world with the given true atoms.
    pub fn classify(&self, atoms: &BTreeSet<Atom>) -> usize {
        let v: Valuation = self.sigma.iter().map(|a| (a.clone(), atoms.contains(a))).collect();
        self.members
            .iter()
            .position(|m| eval(m, &v).expect("members are propositional"))
            .expect("members are exhaustive")
    }

    /// Member index of every world of `m`.
    pub fn labels_of(&self, m: &Model) -> Vec<usize> {
        (0..m.frame().len()).map(|w| self.classify(m.valuation(w))).collect()
    }
}

impl fmt::Display for Eme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.members.iter().map(|m| m.to_string()).collect();
        write!(f, "{{{}}}", items.join(", "))
    }
}

/// Worlds that satisfy the same member agree on every atom of σ.
pub fn is_cover(phi: &Eme, m: &Model) -> bool {
    let labels = phi.labels_of(m);
    let sigma = phi.sigma();
    let vals: Vec<BTreeSet<&Atom>> = (0..labels.len())
        .map(|w| m.valuation(w).iter().filter(|a| sigma.contains(*a)).collect())
        .collect();
    (0..labels.len()).all(|a| (a + 1..labels.len()).all(|b| labels[a] != labels[b] || vals[a] == vals[b]))
}

/// `⋀_{φ∈Φ} ⋀_{p∈σ} (◇^{≤N}(φ∧p) → □^{≤N}(φ→p))`: true at the root of a
/// model of size at most `N` iff Φ covers it.
pub fn cover_formula(sigma: &Signature, phi: &Eme, n: usize) -> Formula {
    let mut parts = Vec::new();
    for m in phi.members() {
        for p in sigma {
            let p = Formula::atom(p.clone());
            let some = Formula::diamond_upto(&m.and(&p), n);
            let all = Formula::box_upto(&m.implies(&p), n);
            parts.push(some.implies(&all));
        }
    }
    Formula::conj(parts)
}

/// A cover of `m` by refinement from `{⊤}`: the first member (in order)
/// that some atom (ascending) splits is replaced by its two halves, and the
/// scan restarts.
pub fn compute_cover(m: &Model, sigma: &Signature) -> Eme {
    let n = m.frame().len();
    let mut blocks: Vec<(Literals, Vec<usize>)> = vec![(Literals::new(), (0..n).collect())];
    'scan: loop {
        for i in 0..blocks.len() {
            for p in sigma {
                let (yes, no): (Vec<usize>, Vec<usize>) =
                    blocks[i].1.iter().partition(|&&w| m.holds(w, p));
                if !yes.is_empty() && !no.is_empty() {
                    let mut lits = blocks[i].0.clone();
                    lits.insert(p.clone(), true);
                    let mut neg = lits.clone();
                    neg.insert(p.clone(), false);
                    blocks[i] = (lits, yes);
                    blocks.insert(i + 1, (neg, no));
                    continue 'scan;
                }
            }
        }
        break;
    }
    let leaves: Vec<Literals> = blocks.into_iter().map(|(l, _)| l).collect();
    Eme::from_leaves(sigma.clone(), &leaves)
}

/// Leaf sets of refinement trees with at most `max_leaves` leaves whose
/// split atoms increase along every branch, starting from `path`.
fn trees(atoms: &[Atom], from: usize, path: &Literals, max_leaves: usize) -> Vec<Vec<Literals>> {
    let mut out = vec![vec![path.clone()]];
    if max_leaves < 2 {
        return out;
    }
    for i in from..atoms.len() {
        let mut pos = path.clone();
        pos.insert(atoms[i].clone(), true);
        let mut neg = path.clone();
        neg.insert(atoms[i].clone(), false);
        let lefts = trees(atoms, i + 1, &pos, max_leaves - 1);
        for l in &lefts {
            for r in trees(atoms, i + 1, &neg, max_leaves - l.len()) {
                let mut leaves = l.clone();
                leaves.extend(r);
                out.push(leaves);
            }
        }
    }
    out
}

/// Number of trees `trees` would produce, without building them.
fn count_trees(k: usize, from: usize, max_leaves: usize, memo: &mut BTreeMap<(usize, usize), Vec<u128>>) -> Vec<u128> {
    // result[l] = number of trees with exactly l leaves (l ≤ max_leaves)
    if let Some(v) = memo.get(&(from, max_leaves)) {
        return v.clone();
    }
    let mut out = vec![0u128; max_leaves + 1];
    if max_leaves >= 1 {
        out[1] = 1;
    }
    if max_leaves >= 2 {
        for i in from..k {
            let sub = count_trees(k, i + 1, max_leaves - 1, memo);
            for (a, &ca) in sub.iter().enumerate().skip(1) {
                for (b, &cb) in sub.iter().enumerate().skip(1) {
                    if a + b <= max_leaves {
                        out[a + b] = out[a + b].saturating_add(ca.saturating_mul(cb));
                    }
                }
            }
        }
    }
    memo.insert((from, max_leaves), out.clone());
    out
}

/// Default bound on the number of refinement trees enumerated per frame.
pub const DEFAULT_COVER_BUDGET: u128 = 1 << 20;

/// `Γ_𝔉`: EMEs from refinement trees with at most `|W|` leaves, enough to
/// cover every model on `fr`. Duplicate member sets are dropped; the
/// result is sorted canonically.
pub fn enumerate_cover_family(fr: &PointedFrame, sigma: &Signature) -> Result<Vec<Eme>> {
    enumerate_cover_family_with_budget(fr, sigma, DEFAULT_COVER_BUDGET)
}

pub fn enumerate_cover_family_with_budget(
    fr: &PointedFrame,
    sigma: &Signature,
    budget: u128,
) -> Result<Vec<Eme>> {
    let atoms: Vec<Atom> = sigma.iter().cloned().collect();
    let needed: u128 = count_trees(atoms.len(), 0, fr.len(), &mut BTreeMap::new())
        .iter()
        .fold(0u128, |s, &c| s.saturating_add(c));
    if needed > budget {
        return Err(Error::Budget {
            what: "cover family trees",
            needed,
            budget,
        });
    }
    let mut keyed: BTreeMap<Vec<Vec<(Atom, bool)>>, Vec<Literals>> = BTreeMap::new();
    for mut leaves in trees(&atoms, 0, &Literals::new(), fr.len()) {
        leaves.sort_by_key(literal_key);
        keyed
            .entry(leaves.iter().map(literal_key).collect())
            .or_insert(leaves);
    }
    Ok(keyed
        .values()
        .map(|leaves| Eme::from_leaves(sigma.clone(), leaves))
        .collect())
}
