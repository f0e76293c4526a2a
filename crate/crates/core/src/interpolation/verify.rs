use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::formula::circuit::{index_bit_word, lane_mask, Circuit};
use crate::formula::{Atom, Formula, Signature};
use crate::kripke::refine::{bisim_key, BisimKey};
use crate::kripke::{find_countermodel, Logic, Model, PointedFrame};

/// Default bound on enumerated valuations per check.
pub const DEFAULT_VERIFY_BUDGET: u128 = 1 << 20;

/// Why a check failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub reason: String,
    pub model: Option<Model>,
    pub formula: Option<Formula>,
}

/// Outcome of a semantic check; `witness` is present iff `holds` is false.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl Verdict {
    pub fn pass() -> Verdict {
        Verdict {
            holds: true,
            witness: None,
        }
    }

    pub fn fail(reason: impl Into<String>, model: Option<Model>, formula: Option<Formula>) -> Verdict {
        Verdict {
            holds: false,
            witness: Some(Witness {
                reason: reason.into(),
                model,
                formula,
            }),
        }
    }
}

/// Index layout for models on one frame: the low bits hold the atoms
/// outside σ, the high bits the σ atoms, `atom·|W| + w` within each half.
struct Layout {
    n: usize,
    low: Vec<Atom>,
    high: Vec<Atom>,
}

impl Layout {
    fn low_bits(&self) -> usize {
        self.low.len() * self.n
    }

    fn high_bits(&self) -> usize {
        self.high.len() * self.n
    }

    fn bit_of(&self, a: &Atom, w: usize) -> usize {
        if let Some(i) = self.high.iter().position(|x| x == a) {
            self.low_bits() + i * self.n + w
        } else {
            let i = self.low.iter().position(|x| x == a).expect("atom in layout");
            i * self.n + w
        }
    }

    /// σ-labels of the worlds under σ-valuation `s`, as bit sets.
    fn labels(&self, s: u64) -> Vec<u64> {
        (0..self.n)
            .map(|w| {
                (0..self.high.len()).fold(0u64, |m, i| m | (((s >> (i * self.n + w)) & 1) << i))
            })
            .collect()
    }

    fn model(&self, fr: &Arc<PointedFrame>, s: u64) -> Model {
        let val = (0..self.n)
            .map(|w| {
                self.high
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| (s >> (i * self.n + w)) & 1 == 1)
                    .map(|(_, a)| a.clone())
                    .collect::<BTreeSet<Atom>>()
            })
            .collect();
        Model::new(fr.clone(), val).expect("sizes match")
    }
}

/// For every valuation index in `0..2^bits`, the root value of `c` on
/// `fr`, handed to `visit` 64 lanes at a time.
fn for_each_root_word(
    c: &Circuit,
    fr: &PointedFrame,
    layout: &Layout,
    bits: usize,
    mut visit: impl FnMut(u64, u64),
) {
    let bit_of: Vec<Vec<usize>> = c
        .atoms
        .iter()
        .map(|a| (0..layout.n).map(|w| layout.bit_of(a, w)).collect())
        .collect();
    let total = 1u64 << bits;
    let mut scratch = Vec::new();
    let mut base = 0u64;
    while base < total {
        let vals = c.eval_frame_words(fr.succ_lists(), |i, w| index_bit_word(bit_of[i][w], base), &mut scratch);
        visit(base, vals[fr.root()] & lane_mask(total, base));
        base += 64;
    }
}

fn check_budget(frames: &[PointedFrame], atoms: usize, budget: u128) -> Result<()> {
    let needed = frames.iter().fold(0u128, |s, fr| {
        let bits = atoms * fr.len();
        if bits >= 127 {
            u128::MAX
        } else {
            s.saturating_add(1u128 << bits)
        }
    });
    if needed > budget || frames.iter().any(|fr| atoms * fr.len() >= 64) {
        return Err(Error::Budget {
            what: "verification valuations",
            needed,
            budget,
        });
    }
    Ok(())
}

/// Brute-force check that `chi` is a strongest L(σ)-implicate of `f`: a
/// model on a frame of `l` satisfies `chi` at the root iff it is
/// σ-bisimilar to a model of `f` on some frame of `l`.
pub fn verify_strongest_implicate(l: &Logic, f: &Formula, sigma: &Signature, chi: &Formula) -> Result<Verdict> {
    verify_strongest_implicate_with_budget(l, f, sigma, chi, DEFAULT_VERIFY_BUDGET)
}

pub fn verify_strongest_implicate_with_budget(
    l: &Logic,
    f: &Formula,
    sigma: &Signature,
    chi: &Formula,
    budget: u128,
) -> Result<Verdict> {
    for g in [f, chi] {
        if let Some(a) = g.signature().iter().find(|a| !a.is_base()) {
            return Err(Error::UnexpectedAtom(a.to_string()));
        }
    }
    if let Some(a) = chi.signature().difference(sigma).next() {
        return Ok(Verdict::fail(
            format!("`{a}` occurs in the candidate but not in the signature"),
            None,
            Some(chi.clone()),
        ));
    }
    let all: Signature = f.signature().union(sigma).cloned().collect();
    check_budget(l.frames(), all.len(), budget)?;
    let fc = Circuit::compile(f);
    let cc = Circuit::compile(chi);

    let layouts: Vec<Layout> = l
        .frames()
        .iter()
        .map(|fr| Layout {
            n: fr.len(),
            low: all.difference(sigma).cloned().collect(),
            high: sigma.iter().cloned().collect(),
        })
        .collect();

    // σ-classes of models of f
    let mut good: HashSet<BisimKey<u64>> = HashSet::new();
    for (fr, lay) in l.frames().iter().zip(&layouts) {
        let low = lay.low_bits();
        let mut sat = vec![false; 1usize << lay.high_bits()];
        for_each_root_word(&fc, fr, lay, low + lay.high_bits(), |base, word| {
            let mut w = word;
            while w != 0 {
                let lane = w.trailing_zeros() as u64;
                sat[((base + lane) >> low) as usize] = true;
                w &= w - 1;
            }
        });
        for (s, _) in sat.iter().enumerate().filter(|(_, &b)| b) {
            good.insert(bisim_key(&lay.labels(s as u64), fr.succ_lists(), fr.root()));
        }
    }

    for (fr, lay) in l.frames().iter().zip(&layouts) {
        let sigma_only = Layout {
            n: lay.n,
            low: Vec::new(),
            high: lay.high.clone(),
        };
        let mut chi_true = vec![false; 1usize << lay.high_bits()];
        for_each_root_word(&cc, fr, &sigma_only, lay.high_bits(), |base, word| {
            for lane in 0..64u64 {
                if let Some(slot) = chi_true.get_mut((base + lane) as usize) {
                    *slot = (word >> lane) & 1 == 1;
                }
            }
        });
        let frame = Arc::new(fr.clone());
        for (s, &holds) in chi_true.iter().enumerate() {
            let reachable = good.contains(&bisim_key(&lay.labels(s as u64), fr.succ_lists(), fr.root()));
            if holds != reachable {
                let reason = if holds {
                    "the candidate holds at a model with no σ-bisimilar model of the formula"
                } else {
                    "the candidate fails at a model σ-bisimilar to a model of the formula"
                };
                return Ok(Verdict::fail(reason, Some(sigma_only.model(&frame, s as u64)), None));
            }
        }
    }
    Ok(Verdict::pass())
}

/// Checks that `chi` is a Craig interpolant for `f → g` in `l`: the
/// signature condition and both implications.
pub fn verify_craig(l: &Logic, f: &Formula, g: &Formula, chi: &Formula) -> Result<Verdict> {
    let shared: Signature = f.signature().intersection(&g.signature()).cloned().collect();
    if let Some(a) = chi.signature().difference(&shared).next() {
        return Ok(Verdict::fail(
            format!("`{a}` occurs in the interpolant but not in both formulas"),
            None,
            Some(chi.clone()),
        ));
    }
    let left = f.implies(chi);
    if let Some(m) = find_countermodel(l, &left)? {
        return Ok(Verdict::fail("the formula does not imply the interpolant", Some(m), Some(left)));
    }
    let right = chi.implies(g);
    if let Some(m) = find_countermodel(l, &right)? {
        return Ok(Verdict::fail("the interpolant does not imply the conclusion", Some(m), Some(right)));
    }
    Ok(Verdict::pass())
}
