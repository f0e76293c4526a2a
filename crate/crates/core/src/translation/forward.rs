use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::formula::{Atom, Formula, Kind, Signature};
use crate::kripke::{Logic, PointedFrame};

/// Translations of `f` at every world of `fr`, indexed like the worlds.
/// Each (subformula, world) pair is translated once.
pub fn tr_frame_all(fr: &PointedFrame, f: &Formula) -> Result<Vec<Formula>> {
    let n = fr.len();
    let mut memo: HashMap<u64, Vec<Formula>> = HashMap::new();
    for g in f.postorder() {
        let out: Vec<Formula> = match g.kind() {
            Kind::Top => vec![g.clone(); n],
            Kind::Atom(Atom::Base(p)) => fr
                .worlds()
                .iter()
                .map(|w| Formula::atom(Atom::indexed(p, w).expect("valid ids")))
                .collect(),
            Kind::Atom(a) => return Err(Error::UnexpectedAtom(a.to_string())),
            Kind::Not(a) => memo[&a.id()].iter().map(Formula::not).collect(),
            Kind::And(a, b) => {
                let (x, y) = (&memo[&a.id()], &memo[&b.id()]);
                x.iter().zip(y).map(|(x, y)| x.and(y)).collect()
            }
            Kind::Box(a) => {
                let x = &memo[&a.id()];
                (0..n)
                    .map(|w| Formula::conj(fr.succ(w).iter().map(|&v| x[v].clone())))
                    .collect()
            }
        };
        memo.insert(g.id(), out);
    }
    Ok(memo.remove(&f.id()).expect("root visited"))
}

/// Propositional translation of `f` at world `w` over the indexed atoms
/// `p@v`: a model satisfies `f` at `w` iff its indexed valuation satisfies
/// the translation.
pub fn tr_frame(fr: &PointedFrame, w: &str, f: &Formula) -> Result<Formula> {
    let i = fr.world_index(w)?;
    Ok(tr_frame_all(fr, f)?.swap_remove(i))
}

/// `σ × W` as indexed atoms.
pub fn indexed_signature(fr: &PointedFrame, sigma: &Signature) -> Signature {
    let mut out = Signature::new();
    for a in sigma {
        if let Some(p) = a.base_name() {
            for w in fr.worlds() {
                out.insert(Atom::indexed(p, w).expect("valid ids"));
            }
        }
    }
    out
}

/// Selector atom `r@F:root` naming a pointed frame.
pub fn selector(fr: &PointedFrame) -> Atom {
    Atom::selector(fr.name(), fr.root_id()).expect("valid ids")
}

/// Exactly one selector of the logic is true.
pub fn unique(l: &Logic) -> Formula {
    let sel: Vec<Formula> = l.frames().iter().map(|f| Formula::atom(selector(f))).collect();
    Formula::disj((0..sel.len()).map(|i| {
        let others = sel.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, s)| s.not());
        Formula::conj(std::iter::once(sel[i].clone()).chain(others))
    }))
}

/// `Unique ∧ ⋀_F (r_F → tr_F(f))`.
pub fn tr_logic(l: &Logic, f: &Formula) -> Result<Formula> {
    let mut parts = vec![unique(l)];
    for fr in l.frames() {
        let tr = tr_frame(fr, fr.root_id(), f)?;
        parts.push(Formula::atom(selector(fr)).implies(&tr));
    }
    Ok(Formula::conj(parts))
}

/// `σ̂`: the indexed atoms of every frame plus all selectors.
pub fn logic_signature(l: &Logic, sigma: &Signature) -> Signature {
    let mut out = Signature::new();
    for fr in l.frames() {
        out.extend(indexed_signature(fr, sigma));
        out.insert(selector(fr));
    }
    out
}
