//! Uniform interpolation for the logic of frames with at most one
//! successor per world, by translation over descending chains.

use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use crate::catalog::{make_frame, FrameFamily};
use crate::error::{Error, Result};
use crate::formula::circuit::{index_bit_word, lane_mask, Circuit};
use crate::formula::{Atom, Formula, Signature};
use crate::interpolation::Verdict;
use crate::kripke::{model_from_index, PointedFrame};
use crate::prop::prop_uniform_interpolant;
use crate::translation::tr_frame;

/// Default bound on enumerated chain models per verification.
pub const DEFAULT_ALT1_BUDGET: u128 = 1 << 22;

/// The chain `i → i-1 → … → 0` rooted at `i`.
pub fn chain(i: usize) -> PointedFrame {
    make_frame(FrameFamily::AltChain(i)).expect("chains are valid frames")
}

/// Propositional translation of `f` at the top of the chain of length `i`,
/// over atoms `p@j` for `j ≤ i`.
pub fn tr_alt_i(f: &Formula, i: usize) -> Result<Formula> {
    tr_frame(&chain(i), &i.to_string(), f)
}

/// `{p@j : p ∈ τ, j ≤ i}`.
fn chain_signature(tau: &Signature, i: usize) -> Result<Signature> {
    let mut out = Signature::new();
    for a in tau {
        let p = a.base_name().ok_or_else(|| Error::UnexpectedAtom(a.to_string()))?;
        for j in 0..=i {
            out.insert(Atom::indexed(p, &j.to_string())?);
        }
    }
    Ok(out)
}

/// Replaces `p@j` by `◇^{i-j} p`.
fn back_to_modal(g: &Formula, i: usize) -> Result<Formula> {
    let mut s = BTreeMap::new();
    for a in g.signature() {
        let (p, w) = match (&a, a.base_name(), a.world()) {
            (Atom::Indexed { .. }, Some(p), Some(w)) => (p.to_string(), w.to_string()),
            _ => return Err(Error::UnexpectedAtom(a.to_string())),
        };
        let j: usize = w.parse().map_err(|_| Error::UnexpectedAtom(a.to_string()))?;
        s.insert(a.clone(), Formula::var(&p).diamond_n(i - j));
    }
    Ok(g.substitute(&s))
}

/// Uniform τ-interpolant of `f`: with `n` the modal depth of `f` and `ψ_i`
/// the propositional τ-interpolant of the translation at chain length `i`,
/// `⋀_{i<n} (◇^i □⊥ → ψ_i') ∧ (◇^n ⊤ → ψ_n')`, where `'` maps `p@j` to
/// `◇^{i-j} p`.
pub fn alt1_uniform_interpolant(f: &Formula, tau: &Signature) -> Result<Formula> {
    if let Some(a) = f.signature().into_iter().chain(tau.iter().cloned()).find(|a| !a.is_base()) {
        return Err(Error::UnexpectedAtom(a.to_string()));
    }
    let n = f.modal_depth();
    let mut parts = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let psi = prop_uniform_interpolant(&tr_alt_i(f, i)?, &chain_signature(tau, i)?)?;
        let psi = back_to_modal(&psi, i)?;
        let guard = if i < n {
            Formula::bot().boxed().diamond_n(i)
        } else {
            Formula::top().diamond_n(n)
        };
        parts.push(guard.implies(&psi));
    }
    Ok(Formula::conj(parts))
}

/// What a formula of modal depth `d` over τ can see of a chain model:
/// the visible length `min(L, d)` and the τ-labels from the root down.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct ChainType {
    seen: usize,
    labels: Vec<u64>,
}

impl ChainType {
    /// Characteristic formula over τ, of modal depth at most `d`.
    fn formula(&self, tau: &[Atom], d: usize) -> Formula {
        let mut parts: Vec<Formula> = self
            .labels
            .iter()
            .enumerate()
            .map(|(j, &l)| {
                let lits = tau.iter().enumerate().map(|(k, a)| {
                    let x = Formula::atom(a.clone());
                    if (l >> k) & 1 == 1 {
                        x
                    } else {
                        x.not()
                    }
                });
                Formula::conj(lits).diamond_n(j)
            })
            .collect();
        if self.seen < d {
            parts.push(Formula::bot().boxed().diamond_n(self.seen));
        }
        Formula::conj(parts)
    }
}

/// Brute-force check of the uniform-interpolant contract over chain models
/// of lengths `0..=bound`: `sig(ψ) ⊆ τ`, `f → ψ` holds on every chain
/// model, and every chain model of `ψ` agrees on all formulas over τ (and
/// fresh atoms) of depth at most `depth(f)` with some chain model of `f`.
pub fn verify_alt1_interpolant(f: &Formula, tau: &Signature, psi: &Formula, bound: usize) -> Result<Verdict> {
    verify_alt1_interpolant_with_budget(f, tau, psi, bound, DEFAULT_ALT1_BUDGET)
}

pub fn verify_alt1_interpolant_with_budget(
    f: &Formula,
    tau: &Signature,
    psi: &Formula,
    bound: usize,
    budget: u128,
) -> Result<Verdict> {
    let d = f.modal_depth();
    if bound < d + 2 {
        return Err(Error::InvalidParams(format!("bound {bound} is below depth + 2 = {}", d + 2)));
    }
    if let Some(a) = psi.signature().difference(tau).next() {
        return Ok(Verdict::fail(format!("interpolant uses `{a}` outside τ"), None, None));
    }
    let atoms: Vec<Atom> = f.signature().union(tau).cloned().collect();
    let needed = (0..=bound).fold(0u128, |s, l| {
        let bits = atoms.len() * (l + 1);
        if bits >= 64 {
            u128::MAX
        } else {
            s.saturating_add(1u128 << bits)
        }
    });
    if needed > budget {
        return Err(Error::Budget {
            what: "chain models",
            needed,
            budget,
        });
    }
    let tau_pos: Vec<usize> = tau.iter().map(|a| atoms.iter().position(|x| x == a).expect("τ ⊆ atoms")).collect();
    let (cf, cp) = (Circuit::compile(f), Circuit::compile(psi));
    let mut f_types: HashSet<ChainType> = HashSet::new();
    let mut psi_types: Vec<(ChainType, usize, u64)> = Vec::new();
    let mut seen_psi: HashSet<ChainType> = HashSet::new();
    let mut scratch = Vec::new();
    for len in 0..=bound {
        let fr = Arc::new(chain(len));
        let w = len + 1;
        let total = 1u64 << (atoms.len() * w);
        let values = |c: &Circuit, base: u64, scratch: &mut Vec<u64>| {
            let bits: Vec<usize> = c.atoms.iter().map(|a| atoms.iter().position(|x| x == a).expect("atom in layout")).collect();
            let out = c.eval_frame_words(fr.succ_lists(), |i, v| index_bit_word(bits[i] * w + v, base), scratch);
            out[fr.root()] & lane_mask(total, base)
        };
        let type_of = |index: u64| {
            let seen = len.min(d);
            let labels = (0..=seen)
                .map(|j| {
                    let world = len - j;
                    tau_pos.iter().enumerate().fold(0u64, |m, (k, &a)| m | (((index >> (a * w + world)) & 1) << k))
                })
                .collect();
            ChainType { seen, labels }
        };
        let mut base = 0u64;
        while base < total {
            let vf = values(&cf, base, &mut scratch);
            let vp = values(&cp, base, &mut scratch);
            let bad = vf & !vp;
            if bad != 0 {
                let m = model_from_index(&fr, &atoms, base + bad.trailing_zeros() as u64);
                return Ok(Verdict::fail("premise does not imply the interpolant", Some(m), None));
            }
            let mut lanes = vf | vp;
            while lanes != 0 {
                let lane = lanes.trailing_zeros() as u64;
                lanes &= lanes - 1;
                let t = type_of(base + lane);
                if (vf >> lane) & 1 == 1 {
                    f_types.insert(t.clone());
                }
                if (vp >> lane) & 1 == 1 && seen_psi.insert(t.clone()) {
                    psi_types.push((t, len, base + lane));
                }
            }
            base += 64;
        }
    }
    let tau_atoms: Vec<Atom> = tau.iter().cloned().collect();
    for (t, len, index) in psi_types {
        if !f_types.contains(&t) {
            let m = model_from_index(&Arc::new(chain(len)), &atoms, index);
            let consequent = t.formula(&tau_atoms, d).not();
            return Ok(Verdict::fail(
                "interpolant is not strongest: a consequent of the premise over τ fails on this model",
                Some(m),
                Some(consequent),
            ));
        }
    }
    Ok(Verdict::pass())
}
