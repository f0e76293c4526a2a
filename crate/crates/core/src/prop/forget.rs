use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::formula::{Atom, Formula, Signature};

use super::eval::find_countervaluation;
use super::simplify::{conjuncts, restrict, simplify};

/// A propositional forgetting engine. Everything downstream only needs
/// `forget`; the default is Shannon expansion.
pub trait Forgetter {
    fn forget(&self, f: &Formula, xs: &Signature) -> Result<Formula>;
}

/// Iterated Shannon expansion `f[x↦⊤] ∨ f[x↦⊥]` in ascending atom order,
/// simplifying after every step. Conjuncts that do not mention `x` are kept
/// outside the expansion.
#[derive(Clone, Copy, Debug, Default)]
pub struct Shannon;

impl Forgetter for Shannon {
    fn forget(&self, f: &Formula, xs: &Signature) -> Result<Formula> {
        if !f.is_propositional() {
            return Err(Error::Modal);
        }
        let mut cur = simplify(f);
        for x in xs {
            cur = eliminate(&cur, x);
        }
        Ok(cur)
    }
}

fn mentions(f: &Formula, x: &Atom) -> bool {
    f.postorder().iter().any(|g| g.as_atom() == Some(x))
}

fn eliminate(f: &Formula, x: &Atom) -> Formula {
    let (with, without): (Vec<Formula>, Vec<Formula>) =
        conjuncts(f).into_iter().partition(|c| mentions(c, x));
    if with.is_empty() {
        return f.clone();
    }
    let g = Formula::conj(with);
    let pos = restrict(&g, &BTreeMap::from([(x.clone(), true)]));
    let neg = restrict(&g, &BTreeMap::from([(x.clone(), false)]));
    let expanded = simplify(&pos.or(&neg));
    let mut rest = without;
    rest.push(expanded);
    simplify(&Formula::conj(rest))
}

/// `∃xs.f`: a formula over `sig(f) \ xs` satisfied exactly by the
/// restrictions of models of `f`.
pub fn forget(f: &Formula, xs: &Signature) -> Result<Formula> {
    Shannon.forget(f, xs)
}

/// Strongest consequence of `f` over `sigma`.
pub fn prop_uniform_interpolant(f: &Formula, sigma: &Signature) -> Result<Formula> {
    let drop: Signature = f.signature().difference(sigma).cloned().collect();
    forget(f, &drop)
}

/// Interpolant for a valid implication `f → g` over the shared atoms.
pub fn prop_craig_interpolant(f: &Formula, g: &Formula) -> Result<Formula> {
    if let Some(v) = find_countervaluation(&f.implies(g))? {
        return Err(Error::NotTautology { countervaluation: v });
    }
    let shared: Signature = f.signature().intersection(&g.signature()).cloned().collect();
    prop_uniform_interpolant(f, &shared)
}
