use std::collections::{BTreeMap, HashMap, HashSet};

use crate::formula::{Atom, Formula, Kind};

/// Conjunction with constant folding and idempotence.
pub(crate) fn and_fold(a: &Formula, b: &Formula) -> Formula {
    if a.is_bot() || b.is_bot() {
        Formula::bot()
    } else if a == b {
        a.clone()
    } else {
        a.and(b)
    }
}

pub(crate) fn box_fold(a: &Formula) -> Formula {
    if a.is_top() {
        Formula::top()
    } else {
        a.boxed()
    }
}

/// Replaces atoms by truth values and folds constants. Boxed subformulas
/// are left untouched, so this is sound for modal formulas too (an atom's
/// value at one world says nothing about successors).
pub fn restrict(f: &Formula, values: &BTreeMap<Atom, bool>) -> Formula {
    let mut memo: HashMap<u64, Formula> = HashMap::new();
    for g in f.postorder() {
        let get = |c: &Formula| memo[&c.id()].clone();
        let out = match g.kind() {
            Kind::Top => g.clone(),
            Kind::Atom(a) => match values.get(a) {
                Some(true) => Formula::top(),
                Some(false) => Formula::bot(),
                None => g.clone(),
            },
            Kind::Not(a) => get(a).not(),
            Kind::And(a, b) => and_fold(&get(a), &get(b)),
            Kind::Box(_) => g.clone(),
        };
        memo.insert(g.id(), out);
    }
    memo.remove(&f.id()).expect("root visited")
}

/// Conjuncts of an `And`-tree, duplicates removed, in left-to-right order.
pub(crate) fn conjuncts(f: &Formula) -> Vec<Formula> {
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    let mut stack = vec![f.clone()];
    while let Some(g) = stack.pop() {
        match g.kind() {
            Kind::And(a, b) => {
                stack.push(b.clone());
                stack.push(a.clone());
            }
            _ => {
                if seen.insert(g.id()) {
                    out.push(g);
                }
            }
        }
    }
    out
}

fn literal(f: &Formula) -> Option<(Atom, bool)> {
    match f.kind() {
        Kind::Atom(a) => Some((a.clone(), true)),
        Kind::Not(x) => x.as_atom().map(|a| (a.clone(), false)),
        _ => None,
    }
}

fn simplify_and(a: &Formula, b: &Formula) -> Formula {
    if a.is_bot() || b.is_bot() {
        return Formula::bot();
    }
    if a == b {
        return a.clone();
    }
    let base = a.and(b);
    let items = conjuncts(&base);
    let ids: HashSet<u64> = items.iter().map(Formula::id).collect();
    let mut negated: HashSet<u64> = HashSet::new();
    for c in &items {
        if let Kind::Not(x) = c.kind() {
            if ids.contains(&x.id()) || x.is_top() {
                return Formula::bot();
            }
            negated.insert(x.id());
        }
    }
    // `e`'s negation is itself a conjunct
    let refuted = |e: &Formula| match e.kind() {
        Kind::Not(x) => ids.contains(&x.id()),
        _ => negated.contains(&e.id()),
    };
    let units: BTreeMap<Atom, bool> = items.iter().filter_map(literal).collect();

    let mut changed = items.len() != 2;
    let mut out = Vec::with_capacity(items.len());
    for c in &items {
        let mut c = c.clone();
        if let Kind::Not(inner) = c.kind() {
            if matches!(inner.kind(), Kind::And(..)) {
                let disjuncts = conjuncts(inner);
                // absorption: some disjunct already holds
                if disjuncts.iter().any(refuted) {
                    changed = true;
                    continue;
                }
                // resolution against conjuncts
                if disjuncts.iter().any(|e| ids.contains(&e.id())) {
                    let rest: Vec<Formula> = disjuncts
                        .into_iter()
                        .filter(|e| !ids.contains(&e.id()))
                        .collect();
                    c = Formula::conj(rest).not();
                    changed = true;
                }
            }
        }
        if !units.is_empty() && literal(&c).is_none() {
            let r = restrict(&c, &units);
            if r != c {
                changed = true;
                c = r;
            }
        }
        if c.is_bot() {
            return Formula::bot();
        }
        if !c.is_top() {
            out.push(c);
        }
    }
    if changed {
        Formula::conj(out)
    } else {
        base
    }
}

fn pass(f: &Formula) -> Formula {
    f.fold(|g, kids: &[Formula]| match g.kind() {
        Kind::Top | Kind::Atom(_) => g.clone(),
        Kind::Not(_) => kids[0].not(),
        Kind::Box(_) => box_fold(&kids[0]),
        Kind::And(..) => simplify_and(&kids[0], &kids[1]),
    })
}

/// Equivalence-preserving cleanup: constant folding, idempotence,
/// absorption, resolution against sibling conjuncts and unit propagation.
///
/// Passes are repeated to a fixpoint. A pass that would grow the DAG is
/// discarded, so the result is never larger than the input, and the result
/// is a fixpoint of `simplify` itself.
pub fn simplify(f: &Formula) -> Formula {
    let mut cur = f.clone();
    let mut cur_size = cur.dag_size();
    let mut seen: Vec<Formula> = vec![cur.clone()];
    loop {
        let next = pass(&cur);
        if next == cur {
            return cur;
        }
        let next_size = next.dag_size();
        if next_size > cur_size {
            return cur;
        }
        if let Some(pos) = seen.iter().position(|g| *g == next) {
            return seen[pos..]
                .iter()
                .min_by_key(|g| g.to_string())
                .expect("cycle is non-empty")
                .clone();
        }
        seen.push(next.clone());
        cur = next;
        cur_size = next_size;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::f;

    #[test]
    fn examples() {
        assert_eq!(simplify(&Formula::top().and(&f("p"))), f("p"));
        assert_eq!(simplify(&f("p | (p & q)")), f("p"));
        assert_eq!(simplify(&f("(p & ~p) | q")), f("q"));
    }

    #[test]
    fn folding() {
        assert_eq!(simplify(&f("p & p")), f("p"));
        assert_eq!(simplify(&f("p & ~p")), Formula::bot());
        assert_eq!(simplify(&f("p & (~p | q)")), f("p & q"));
        assert_eq!(simplify(&f("p & (q -> ~p)")), f("p & ~q"));
        assert_eq!(simplify(&f("[](p | ~p)")), Formula::top());
        assert_eq!(simplify(&f("p & []p")), f("p & []p"));
    }

    #[test]
    fn restrict_stops_at_boxes() {
        let g = f("p & []p");
        let r = restrict(&g, &BTreeMap::from([(Atom::base("p"), true)]));
        assert_eq!(r, f("[]p"));
    }

    #[test]
    fn conjunct_flattening() {
        let g = f("(p & q) & (p & r)");
        let names: Vec<String> = conjuncts(&g).iter().map(|c| c.to_string()).collect();
        assert_eq!(names, ["p", "q", "r"]);
    }
}
