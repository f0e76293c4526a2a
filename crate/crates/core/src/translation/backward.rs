use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::sync::Arc;

use crate::cover::{sigma_encoding, AbstractModel, Encoding};
use crate::error::{Error, Result};
use crate::formula::{Atom, Formula, Signature};
use crate::kripke::{Logic, PointedFrame};
use crate::prop::restrict;

use super::forward::selector;

/// `ξ^f`: every indexed atom `p@w` of `ξ` becomes `◇^{≤N}(f(w) ∧ p)`, where
/// `f(w)` is the member labeling `w` in `a`.
pub fn xi_f(xi: &Formula, a: &AbstractModel, n: usize) -> Result<Formula> {
    let fr = a.frame();
    let mut subst = BTreeMap::new();
    for atom in xi.signature() {
        let Atom::Indexed { base, world } = &atom else {
            return Err(Error::UnexpectedAtom(atom.to_string()));
        };
        let w = fr
            .world_index(world)
            .map_err(|_| Error::UnexpectedAtom(atom.to_string()))?;
        let p = Formula::atom(Atom::Base(base.clone()));
        subst.insert(atom.clone(), Formula::diamond_upto(&a.label(w).and(&p), n));
    }
    Ok(xi.substitute(&subst))
}

/// Checks that `xi` only uses atoms `p@w` with `p ∈ σ` and `w` a world of
/// `fr`.
fn check_over_frame(xi: &Formula, fr: &PointedFrame, sigma: &Signature) -> Result<()> {
    for atom in xi.signature() {
        let ok = match &atom {
            Atom::Indexed { base, world } => {
                sigma.contains(&Atom::Base(base.clone())) && fr.world_index(world).is_ok()
            }
            _ => false,
        };
        if !ok {
            return Err(Error::UnexpectedAtom(atom.to_string()));
        }
    }
    Ok(())
}

fn frame_index(l: &Logic, fr: &PointedFrame) -> Result<usize> {
    l.frames()
        .iter()
        .position(|g| g == fr)
        .ok_or_else(|| Error::InvalidParams(format!("frame `{}` is not a frame of `{}`", fr.name(), l.name())))
}

/// Backward translation of `xi` (over the indexed atoms of frame `fi` of
/// the encoded logic) into a modal formula over the encoding's signature:
/// a model on a frame of the logic satisfies it at the root iff some
/// σ-bisimilar model on frame `fi` has an indexed valuation satisfying
/// `xi`.
pub fn rt_frame_with(enc: &Encoding, l: &Logic, fi: usize, xi: &Formula) -> Result<Formula> {
    let fr = l
        .frames()
        .get(fi)
        .ok_or_else(|| Error::InvalidParams(format!("no frame with index {fi}")))?;
    check_over_frame(xi, fr, enc.sigma())?;
    if xi.is_bot() {
        return Ok(Formula::bot());
    }
    let frame = Arc::new(fr.clone());
    let n = enc.bound();
    let mut parts = Vec::new();
    for c in enc.covers() {
        for class in &c.classes {
            let mut seen = HashSet::new();
            let mut disjuncts = Vec::new();
            for (_, labels) in class.models.iter().filter(|(i, _)| *i == fi) {
                let a = AbstractModel::new(frame.clone(), c.eme.clone(), labels.clone())?;
                let g = xi_f(xi, &a, n)?;
                if seen.insert(g.id()) {
                    disjuncts.push(g);
                }
            }
            let guard = c.cover.and(&class.identifier);
            parts.push(guard.implies(&Formula::disj(disjuncts)));
        }
    }
    Ok(Formula::conj(parts))
}

/// [`rt_frame_with`] on a freshly computed σ-encoding of `l`.
pub fn rt_frame(l: &Logic, fr: &PointedFrame, sigma: &Signature, xi: &Formula) -> Result<Formula> {
    let fi = frame_index(l, fr)?;
    let enc = sigma_encoding(l, sigma)?;
    rt_frame_with(&enc, l, fi, xi)
}

/// `ξ^{↑F}`: the selector of `target` becomes `⊤`, the other selectors
/// `⊥`, and indexed atoms of worlds outside `target` become `⊥`.
pub fn project_xi(xi: &Formula, l: &Logic, target: &PointedFrame) -> Formula {
    let own = selector(target);
    let others: BTreeSet<Atom> = l.frames().iter().map(selector).collect();
    let mut values = BTreeMap::new();
    for atom in xi.signature() {
        let v = match &atom {
            Atom::Selector { .. } if atom == own => Some(true),
            Atom::Selector { .. } if others.contains(&atom) => Some(false),
            Atom::Indexed { world, .. } if target.world_index(world).is_err() => Some(false),
            _ => None,
        };
        if let Some(v) = v {
            values.insert(atom, v);
        }
    }
    restrict(xi, &values)
}

/// `⋁_F rt_F(ξ^{↑F})` for `ξ` over the logic-level signature.
pub fn rt_logic_with(enc: &Encoding, l: &Logic, xi: &Formula) -> Result<Formula> {
    let parts = l
        .frames()
        .iter()
        .enumerate()
        .map(|(fi, fr)| rt_frame_with(enc, l, fi, &project_xi(xi, l, fr)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Formula::disj(parts))
}

pub fn rt_logic(l: &Logic, sigma: &Signature, xi: &Formula) -> Result<Formula> {
    rt_logic_with(&sigma_encoding(l, sigma)?, l, xi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::Eme;
    use crate::formula::{f, signature};
    use crate::kripke::{enumerate_models, member_of_logic};
    use crate::prop::prop_uniform_interpolant;
    use crate::translation::{indexed_signature, tr_frame};

    fn fork3() -> PointedFrame {
        PointedFrame::from_succ("F13", vec![vec![1, 2, 3], vec![], vec![], vec![]], 0).unwrap()
    }

    #[test]
    fn substitution_examples() {
        let fr = Arc::new(fork3());
        let phi = Arc::new(Eme::new(signature(["p"]), vec![f("p"), f("~p")]).unwrap());
        let a = AbstractModel::new(fr, phi, vec![1, 0, 0, 1]).unwrap();
        assert_eq!(xi_f(&f("p@1"), &a, 4).unwrap(), Formula::diamond_upto(&f("p & p"), 4));
        assert_eq!(xi_f(&f("p@3"), &a, 2).unwrap(), Formula::diamond_upto(&f("~p & p"), 2));
        assert!(xi_f(&f("true"), &a, 4).unwrap().is_top());
        assert!(matches!(xi_f(&f("p@9"), &a, 4), Err(Error::UnexpectedAtom(_))));
        assert!(matches!(xi_f(&f("p"), &a, 4), Err(Error::UnexpectedAtom(_))));
    }

    #[test]
    fn example_three_backward() {
        let fr = fork3();
        let l = Logic::singleton(fr.clone());
        let phi = f("<>(p & q) & <>(p & ~q)");
        let sigma = signature(["p"]);
        let tr = tr_frame(&fr, "0", &phi).unwrap();
        let xi = prop_uniform_interpolant(&tr, &indexed_signature(&fr, &sigma)).unwrap();
        let rt = rt_frame(&l, &fr, &sigma, &xi).unwrap();
        assert!(rt.signature().is_subset(&sigma));
        assert!(member_of_logic(&l, &rt.iff(&f("<>p"))).unwrap());
    }

    #[test]
    fn bottom_and_foreign_atoms() {
        let fr = fork3();
        let l = Logic::singleton(fr.clone());
        let sigma = signature(["p"]);
        assert!(rt_frame(&l, &fr, &sigma, &Formula::bot()).unwrap().is_bot());
        assert!(rt_frame(&l, &fr, &sigma, &f("q@1")).is_err());
        let other = PointedFrame::from_succ("G", vec![vec![]], 0).unwrap();
        assert!(rt_frame(&l, &other, &sigma, &f("p@0")).is_err());
    }

    #[test]
    fn projection_examples() {
        let a = PointedFrame::new("A", &["a0"], &[], "a0").unwrap();
        let b = PointedFrame::new("B", &["b0", "b1"], &[("b0", "b1")], "b0").unwrap();
        let l = Logic::new("T", vec![a.clone(), b.clone()], false).unwrap();
        let ra = Formula::atom(selector(&a));
        let rb = Formula::atom(selector(&b));
        let xi = ra.and(&f("p@a0")).or(&rb.and(&f("p@b1")));
        assert_eq!(project_xi(&xi, &l, &a), f("p@a0"));
        assert_eq!(project_xi(&xi, &l, &b), f("p@b1"));
        assert!(project_xi(&f("p@b1"), &l, &a).is_bot());
        let single = Logic::singleton(fork3());
        let r = Formula::atom(selector(&fork3()));
        assert_eq!(project_xi(&r.and(&f("p@1")), &single, &fork3()), f("p@1"));
    }

    #[test]
    fn reflexive_point_end_to_end() {
        let pt = PointedFrame::new("R", &["0"], &[("0", "0")], "0").unwrap();
        let l = Logic::singleton(pt);
        let sigma = signature(["p"]);
        let tr = crate::translation::tr_logic(&l, &f("p")).unwrap();
        let xi = prop_uniform_interpolant(&tr, &crate::translation::logic_signature(&l, &sigma)).unwrap();
        let rt = rt_logic(&l, &sigma, &xi).unwrap();
        assert!(member_of_logic(&l, &rt.iff(&f("p"))).unwrap());
        for m in enumerate_models(&l.frames()[0], &sigma).unwrap() {
            assert_eq!(m.satisfies_root(&rt), m.satisfies_root(&f("p")));
        }
    }
}
