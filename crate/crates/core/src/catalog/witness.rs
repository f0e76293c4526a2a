use crate::error::{Error, Result};
use crate::formula::{Atom, Formula, Signature};

fn var(prefix: &str, i: usize) -> Formula {
    Formula::var(&format!("{prefix}{i}"))
}

/// All `2^n` conjunctions of literals over `p0 … p(n-1)`; bit `i` of the
/// position set means `¬p_i`, so the all-positive type comes first.
pub fn types(n: usize) -> Vec<Formula> {
    (0..1usize << n)
        .map(|b| {
            Formula::conj((0..n).map(|i| {
                let p = var("p", i);
                if (b >> i) & 1 == 0 {
                    p
                } else {
                    p.not()
                }
            }))
        })
        .collect()
}

fn persists(q: &Formula) -> Formula {
    q.implies(&q.boxed()).and(&q.not().implies(&q.not().boxed()))
}

/// A formula whose strongest implicate over `sigma` needs exponentially
/// many type disjuncts.
#[derive(Clone, Debug)]
pub struct WitnessImplicate {
    pub n: usize,
    pub k: usize,
    /// Values `f(0), f(1), …` of the growth function.
    pub growth: Vec<usize>,
    /// Box depth used in `chi`.
    pub depth: usize,
    pub phi: Formula,
    pub sigma: Signature,
    /// The disjuncts of `chi`, one per type.
    pub chi_disjuncts: Vec<Formula>,
    pub chi: Formula,
}

/// With `m = f(kn)`:
/// `φ = □^{≤m} ⋁ ¬(p_i ↔ q_i) ∧ □^{≤m-1} ⋀ ((q_i → □q_i) ∧ (¬q_i → □¬q_i))`
/// over `i < kn`, `σ = {p_i}`, and `χ = ⋁_t □^{≤depth} ¬t` over all types
/// `t`. `depth` defaults to `m`.
pub fn witness_implicate(n: usize, k: usize, growth: &[usize], depth: Option<usize>) -> Result<WitnessImplicate> {
    if n < 1 || k < 1 {
        return Err(Error::InvalidParams("witness needs n, k ≥ 1".into()));
    }
    let kn = k * n;
    let m = *growth
        .get(kn)
        .ok_or_else(|| Error::InvalidParams(format!("growth table has no value at {kn}")))?;
    if m < 1 {
        return Err(Error::InvalidParams(format!("growth value f({kn}) must be ≥ 1")));
    }
    let differ = Formula::disj((0..kn).map(|i| var("p", i).iff(&var("q", i)).not()));
    let keep = Formula::conj((0..kn).map(|i| persists(&var("q", i))));
    let phi = Formula::box_upto(&differ, m).and(&Formula::box_upto(&keep, m - 1));
    let depth = depth.unwrap_or(m);
    let chi_disjuncts: Vec<Formula> = types(kn).iter().map(|t| Formula::box_upto(&t.not(), depth)).collect();
    Ok(WitnessImplicate {
        n,
        k,
        growth: growth.to_vec(),
        depth,
        phi,
        sigma: (0..kn).map(|i| Atom::base(&format!("p{i}"))).collect(),
        chi: Formula::disj(chi_disjuncts.iter().cloned()),
        chi_disjuncts,
    })
}

/// An implication all of whose Craig interpolants are equivalent to an
/// exponentially large formula.
#[derive(Clone, Debug)]
pub struct WitnessCraig {
    pub n: usize,
    pub phi: Formula,
    pub psi: Formula,
    pub interpolant: Formula,
    pub sigma: Signature,
}

/// `⋀ ((p_i ↔ x_i) ∧ (x_i → □x_i) ∧ (¬x_i → □¬x_i))` for `x` = `q` or
/// `qq`.
fn tie(n: usize, x: &str) -> Formula {
    Formula::conj((0..n).map(|i| var("p", i).iff(&var(x, i)).and(&persists(&var(x, i)))))
}

fn agree(n: usize, x: &str) -> Formula {
    Formula::conj((0..n).map(|i| var("p", i).iff(&var(x, i))))
}

/// `φ = r ∧ χ(q,p) ∧ ◇(¬r ∧ ⋀(p_i ↔ q_i))`,
/// `ψ = r ∧ (χ(qq,p) → ◇(¬r ∧ ⋀(p_i ↔ qq_i)))` and
/// `I = ⋁_t (r ∧ t ∧ ◇(¬r ∧ t))`, with `qq_i` playing the primed atoms.
pub fn witness_craig(n: usize) -> Result<WitnessCraig> {
    if n < 1 {
        return Err(Error::InvalidParams("witness needs n ≥ 1".into()));
    }
    let r = Formula::var("r");
    let phi = Formula::conj([r.clone(), tie(n, "q"), r.not().and(&agree(n, "q")).diamond()]);
    let psi = r.and(&tie(n, "qq").implies(&r.not().and(&agree(n, "qq")).diamond()));
    let interpolant = Formula::disj(
        types(n)
            .into_iter()
            .map(|t| Formula::conj([r.clone(), t.clone(), r.not().and(&t).diamond()])),
    );
    let mut sigma: Signature = (0..n).map(|i| Atom::base(&format!("p{i}"))).collect();
    sigma.insert(Atom::base("r"));
    Ok(WitnessCraig {
        n,
        phi,
        psi,
        interpolant,
        sigma,
    })
}

/// `φ' = ◇(p∧q) ∧ ◇(p∧¬q) ∧ □φ` and `ψ' = (◇(¬p∧r) → □(¬p→r)) ∨ □ψ`.
pub fn witness_nocip(base_phi: &Formula, base_psi: &Formula) -> Result<(Formula, Formula)> {
    let reserved = crate::formula::signature(["p", "q", "r"]);
    let used: Signature = base_phi.signature().union(&base_psi.signature()).cloned().collect();
    if let Some(a) = used.intersection(&reserved).next() {
        return Err(Error::SignatureOverlap(format!("`{a}` is reserved for the wrapper")));
    }
    let (p, q, r) = (Formula::var("p"), Formula::var("q"), Formula::var("r"));
    let phi = Formula::conj([p.and(&q).diamond(), p.and(&q.not()).diamond(), base_phi.boxed()]);
    let psi = p
        .not()
        .and(&r)
        .diamond()
        .implies(&p.not().implies(&r).boxed())
        .or(&base_psi.boxed());
    Ok((phi, psi))
}

/// Renames every atom `a` to `{prefix}{a}`.
pub fn prefix_atoms(f: &Formula, prefix: &str) -> Result<Formula> {
    let mut err = None;
    let out = f.map_atoms(|a| match Atom::try_base(&format!("{prefix}{a}")) {
        Ok(b) => Formula::atom(b),
        Err(e) => {
            err.get_or_insert(e);
            Formula::atom(a.clone())
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{make_logic, LogicName};
    use crate::formula::{f, signature};
    use crate::interpolation::{verify_craig, verify_strongest_implicate};
    use crate::kripke::{member_of_logic, Logic};

    fn identity(n: usize) -> Vec<usize> {
        (0..=n).collect()
    }

    #[test]
    fn first_implicate_witness() {
        let w = witness_implicate(1, 1, &identity(4), None).unwrap();
        assert_eq!(
            w.phi,
            Formula::box_upto(&f("~(p0 <-> q0)"), 1).and(&f("(q0 -> []q0) & (~q0 -> []~q0)"))
        );
        assert_eq!(w.chi, Formula::box_upto(&f("~p0"), 1).or(&Formula::box_upto(&f("p0"), 1)));
        assert_eq!(w.sigma, signature(["p0"]));
        for name in [LogicName::Eq(2), LogicName::Lo(2)] {
            let l = make_logic(name).unwrap();
            assert!(verify_strongest_implicate(&l, &w.phi, &w.sigma, &w.chi).unwrap().holds, "{name:?}");
        }
    }

    #[test]
    fn implicate_sizes() {
        for n in 1..=6 {
            let w = witness_implicate(n, 1, &identity(8), None).unwrap();
            assert_eq!(w.chi_disjuncts.len(), 1 << n);
            assert_eq!(w.chi, Formula::disj(w.chi_disjuncts.iter().cloned()));
            assert!(w.chi.dag_size() >= 1 << n);
        }
        assert!(witness_implicate(0, 1, &identity(3), None).is_err());
        assert!(witness_implicate(3, 1, &identity(2), None).is_err());
        assert!(witness_implicate(1, 1, &[0, 0], None).is_err());
    }

    #[test]
    fn first_craig_witness() {
        let w = witness_craig(1).unwrap();
        assert_eq!(w.interpolant, f("(r & p0 & <>(~r & p0)) | (r & ~p0 & <>(~r & ~p0))"));
        assert_eq!(w.sigma, signature(["r", "p0"]));
        let shared: Signature = w.phi.signature().intersection(&w.psi.signature()).cloned().collect();
        assert_eq!(shared, w.sigma);
        for name in [LogicName::Eq(3), LogicName::L13] {
            let l = make_logic(name).unwrap();
            assert!(member_of_logic(&l, &w.phi.implies(&w.psi)).unwrap());
            assert!(verify_craig(&l, &w.phi, &w.psi, &w.interpolant).unwrap().holds, "{name:?}");
        }
    }

    #[test]
    fn nocip_wrapper() {
        let (phi, psi) = witness_nocip(&f("a & b"), &f("a | c")).unwrap();
        assert_eq!(phi, f("<>(p & q) & <>(p & ~q) & [](a & b)"));
        let l13: Logic = make_logic(LogicName::L13).unwrap();
        assert!(member_of_logic(&l13, &phi.implies(&psi)).unwrap());
        assert!(matches!(witness_nocip(&f("p"), &f("a")), Err(Error::SignatureOverlap(_))));
        assert_eq!(prefix_atoms(&f("r & p0"), "b_").unwrap(), f("b_r & b_p0"));
    }
}
