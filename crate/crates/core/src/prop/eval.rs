use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::formula::circuit::{index_bit_word, lane_mask, Circuit};
use crate::formula::{Atom, Formula, Kind};

use super::simplify::restrict;

/// Truth assignment on a declared set of atoms.
pub type Valuation = BTreeMap<Atom, bool>;

fn require_propositional(f: &Formula) -> Result<()> {
    if f.is_propositional() {
        Ok(())
    } else {
        Err(Error::Modal)
    }
}

/// Truth value of a propositional formula; atoms missing from `v` are false.
pub fn eval(f: &Formula, v: &Valuation) -> Result<bool> {
    require_propositional(f)?;
    Ok(f.fold(|g, kids: &[bool]| match g.kind() {
        Kind::Top => true,
        Kind::Atom(a) => v.get(a).copied().unwrap_or(false),
        Kind::Not(_) => !kids[0],
        Kind::And(..) => kids[0] && kids[1],
        Kind::Box(_) => unreachable!(),
    }))
}

/// Work bound (chunk evaluations times circuit length) below which
/// enumeration is used directly instead of case splitting.
const DIRECT_WORK: u128 = 1 << 28;

/// First valuation (in index order over the ascending atom list, after case
/// splits) that falsifies `f`, total on `sig(f)`.
pub fn find_countervaluation(f: &Formula) -> Result<Option<Valuation>> {
    require_propositional(f)?;
    let atoms = f.signature();
    let mut fixed = Valuation::new();
    let found = search(f, &mut fixed);
    Ok(found.map(|mut v| {
        for a in atoms {
            v.entry(a).or_insert(false);
        }
        v
    }))
}

pub fn is_tautology(f: &Formula) -> Result<bool> {
    Ok(find_countervaluation(f)?.is_none())
}

pub fn is_satisfiable(f: &Formula) -> Result<bool> {
    is_tautology(&f.not()).map(|t| !t)
}

/// A satisfying valuation, if any.
pub fn find_model(f: &Formula) -> Result<Option<Valuation>> {
    find_countervaluation(&f.not())
}

pub fn prop_equivalent(f: &Formula, g: &Formula) -> Result<bool> {
    is_tautology(&f.iff(g))
}

fn search(f: &Formula, fixed: &mut Valuation) -> Option<Valuation> {
    if f.is_top() {
        return None;
    }
    if f.is_bot() {
        return Some(fixed.clone());
    }
    let circuit = Circuit::compile(f);
    let k = circuit.atoms.len();
    let chunks: u128 = if k >= 6 { 1u128 << (k - 6) } else { 1 };
    if k <= 6 || (k < 64 && chunks * circuit.ops.len() as u128 <= DIRECT_WORK) {
        return enumerate(&circuit).map(|mut v| {
            v.extend(fixed.iter().map(|(a, b)| (a.clone(), *b)));
            v
        });
    }
    let x = split_atom(f, &circuit);
    for value in [true, false] {
        let g = restrict(f, &BTreeMap::from([(x.clone(), value)]));
        fixed.insert(x.clone(), value);
        if let Some(v) = search(&g, fixed) {
            fixed.remove(&x);
            return Some(v);
        }
        fixed.remove(&x);
    }
    None
}

/// Selectors first (they collapse a logic-level translation to one frame),
/// then the most frequent atom.
fn split_atom(f: &Formula, circuit: &Circuit) -> Atom {
    if let Some(s) = circuit.atoms.iter().find(|a| matches!(a, Atom::Selector { .. })) {
        return s.clone();
    }
    let mut count: HashMap<&Atom, usize> = HashMap::new();
    let order = f.postorder();
    for g in &order {
        for c in g.children() {
            if let Some(a) = c.as_atom() {
                *count.entry(a).or_default() += 1;
            }
        }
    }
    circuit
        .atoms
        .iter()
        .max_by_key(|a| (count.get(a).copied().unwrap_or(0), std::cmp::Reverse(*a)))
        .expect("non-constant formula has atoms")
        .clone()
}

fn enumerate(circuit: &Circuit) -> Option<Valuation> {
    let k = circuit.atoms.len();
    let total: u64 = 1u64 << k;
    let mut scratch = Vec::new();
    let mut inputs = vec![0u64; k];
    let mut base = 0u64;
    while base < total {
        for (i, w) in inputs.iter_mut().enumerate() {
            *w = index_bit_word(i, base);
        }
        let v = circuit.eval_words(&inputs, &mut scratch);
        let bad = !v & lane_mask(total, base);
        if bad != 0 {
            let idx = base + bad.trailing_zeros() as u64;
            return Some(
                circuit
                    .atoms
                    .iter()
                    .enumerate()
                    .map(|(i, a)| (a.clone(), (idx >> i) & 1 == 1))
                    .collect(),
            );
        }
        base += 64;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::f;

    #[test]
    fn tautologies() {
        assert!(is_tautology(&f("p | ~p")).unwrap());
        assert!(!is_tautology(&f("p")).unwrap());
        assert!(is_tautology(&f("true")).unwrap());
        assert!(matches!(is_tautology(&f("[]p")), Err(Error::Modal)));
    }

    #[test]
    fn countervaluation_falsifies() {
        let g = f("(p -> q) -> (q -> p)");
        let v = find_countervaluation(&g).unwrap().unwrap();
        assert!(!eval(&g, &v).unwrap());
        assert_eq!(v.len(), 2);
    }

    #[test]
    fn equivalence() {
        assert!(prop_equivalent(&f("p & q"), &f("q & p")).unwrap());
        assert!(!prop_equivalent(&f("p"), &f("q")).unwrap());
    }

    #[test]
    fn case_splitting_agrees_with_enumeration() {
        // 30 atoms forces the splitting path.
        let atoms: Vec<Formula> = (0..30).map(|i| Formula::var(&format!("x{i}"))).collect();
        let chain = Formula::conj(atoms.windows(2).map(|w| w[0].implies(&w[1])));
        let claim = chain.implies(&atoms[0].implies(&atoms[29]));
        assert!(is_tautology(&claim).unwrap());
        let wrong = chain.implies(&atoms[29].implies(&atoms[0]));
        let v = find_countervaluation(&wrong).unwrap().unwrap();
        assert!(!eval(&wrong, &v).unwrap());
        assert_eq!(v.len(), 30);
    }
}
