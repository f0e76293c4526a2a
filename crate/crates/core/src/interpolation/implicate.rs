use crate::cover::{sigma_encoding, Encoding};
use crate::error::{Error, Result};
use crate::formula::{Formula, Signature};
use crate::kripke::Logic;
use crate::prop::prop_uniform_interpolant;
use crate::translation::{
    indexed_signature, logic_signature, rt_frame_with, rt_logic_with, tr_frame, tr_logic,
};

use super::cip::{cip_witness, reduce_logic};

fn check_inputs(f: &Formula, sigma: &Signature) -> Result<()> {
    if let Some(a) = f.signature().iter().chain(sigma).find(|a| !a.is_base()) {
        return Err(Error::UnexpectedAtom(a.to_string()));
    }
    Ok(())
}

/// Strongest L(σ)-implicate of `f`, one frame at a time: the propositional
/// uniform interpolant of each frame's translation is translated back and
/// the results are joined.
pub fn strongest_implicate(l: &Logic, f: &Formula, sigma: &Signature) -> Result<Formula> {
    check_inputs(f, sigma)?;
    strongest_implicate_with(&sigma_encoding(l, sigma)?, l, f)
}

/// [`strongest_implicate`] with a precomputed encoding of `l`.
pub fn strongest_implicate_with(enc: &Encoding, l: &Logic, f: &Formula) -> Result<Formula> {
    let mut parts = Vec::new();
    for (fi, fr) in l.frames().iter().enumerate() {
        let tr = tr_frame(fr, fr.root_id(), f)?;
        let xi = prop_uniform_interpolant(&tr, &indexed_signature(fr, enc.sigma()))?;
        parts.push(rt_frame_with(enc, l, fi, &xi)?);
    }
    Ok(Formula::disj(parts))
}

/// Strongest L(σ)-implicate through a single propositional call on the
/// logic-level translation.
pub fn strongest_implicate_single(l: &Logic, f: &Formula, sigma: &Signature) -> Result<Formula> {
    check_inputs(f, sigma)?;
    let enc = sigma_encoding(l, sigma)?;
    let xi = prop_uniform_interpolant(&tr_logic(l, f)?, &logic_signature(l, sigma))?;
    rt_logic_with(&enc, l, &xi)
}

/// Uniform L(σ)-interpolant of `f`. Only logics with the Craig
/// interpolation property are accepted; for them the strongest implicate
/// is a uniform interpolant.
pub fn uniform_interpolant(l: &Logic, f: &Formula, sigma: &Signature) -> Result<Formula> {
    check_inputs(f, sigma)?;
    if cip_witness(l)?.is_some() {
        return Err(Error::NoCip(l.name().to_string()));
    }
    strongest_implicate(&reduce_logic(l)?, f, sigma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{f, signature};
    use crate::interpolation::verify_strongest_implicate;
    use crate::kripke::{member_of_logic, PointedFrame};

    fn fork(k: usize) -> PointedFrame {
        let mut succ = vec![(1..=k).collect::<Vec<_>>()];
        succ.extend((0..k).map(|_| vec![]));
        PointedFrame::from_succ(&format!("F1{k}"), succ, 0).unwrap()
    }

    fn cluster(n: usize) -> PointedFrame {
        PointedFrame::from_succ(&format!("C{n}"), (0..n).map(|_| (0..n).collect()).collect(), 0).unwrap()
    }

    #[test]
    fn example_three() {
        let l = Logic::singleton(fork(3));
        let phi = f("<>(p & q) & <>(p & ~q)");
        let sigma = signature(["p"]);
        let chi = strongest_implicate(&l, &phi, &sigma).unwrap();
        assert!(member_of_logic(&l, &chi.iff(&f("<>p"))).unwrap());
        assert!(verify_strongest_implicate(&l, &phi, &sigma, &chi).unwrap().holds);
        let single = strongest_implicate_single(&l, &phi, &sigma).unwrap();
        assert!(member_of_logic(&l, &single.iff(&f("<>p"))).unwrap());
    }

    #[test]
    fn appendix_forks() {
        let phi = f("<>(p & q) & <>(p & ~q) & <>s");
        let sigma = signature(["p", "r", "s"]);
        let l3 = Logic::singleton(fork(3));
        let chi = strongest_implicate(&l3, &phi, &sigma).unwrap();
        assert!(verify_strongest_implicate(&l3, &phi, &sigma, &chi).unwrap().holds);
        // ◇p ∧ ◇s is weaker: three leaves of distinct σ-types leave room for
        // only one p-leaf
        let sep = f("~(<>(p & ~s) & <>(s & ~p) & <>(~p & ~s))");
        assert!(member_of_logic(&l3, &phi.implies(&sep)).unwrap());
        assert!(member_of_logic(&l3, &chi.implies(&sep)).unwrap());
        assert!(!member_of_logic(&l3, &f("<>p & <>s").implies(&sep)).unwrap());
        let l2 = Logic::singleton(fork(2));
        let chi = strongest_implicate(&l2, &phi, &sigma).unwrap();
        assert!(member_of_logic(&l2, &chi.iff(&f("[]p & <>s"))).unwrap());
        assert!(verify_strongest_implicate(&l2, &phi, &sigma, &chi).unwrap().holds);
        let ui = uniform_interpolant(&l2, &phi, &sigma).unwrap();
        assert!(member_of_logic(&l2, &ui.iff(&f("[]p & <>s"))).unwrap());
    }

    #[test]
    fn uniform_interpolation_refuses_without_cip() {
        let l = Logic::singleton(fork(3));
        assert!(matches!(
            uniform_interpolant(&l, &f("<>p"), &signature(["p"])),
            Err(Error::NoCip(_))
        ));
    }

    #[test]
    fn cluster_logic_implicates() {
        let eq2 = Logic::normal_closure("EQ2", vec![cluster(2)]).unwrap();
        let sigma = signature(["p"]);
        let chi = strongest_implicate(&eq2, &f("<>p"), &sigma).unwrap();
        assert!(verify_strongest_implicate(&eq2, &f("<>p"), &sigma, &chi).unwrap().holds);
        let eq1 = Logic::normal_closure("EQ1", vec![cluster(1)]).unwrap();
        let ui = uniform_interpolant(&eq1, &f("p & q"), &sigma).unwrap();
        assert!(member_of_logic(&eq1, &ui.iff(&f("p"))).unwrap());
    }

    #[test]
    fn rejects_indexed_atoms() {
        let l = Logic::singleton(fork(1));
        assert!(strongest_implicate(&l, &f("p@0"), &signature(["p"])).is_err());
    }
}
