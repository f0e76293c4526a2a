//! Seeded random formulas for tests and benchmarks.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::formula::{Atom, Formula, Signature};

/// A reproducible generator for the given seed.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random formula over `atoms` with modal depth at most `depth` and
/// roughly `size` connectives. Uses `¬ ∧ ∨ □ ◇` and the constants.
pub fn random_formula<R: Rng>(rng: &mut R, atoms: &[Atom], depth: usize, size: usize) -> Formula {
    if size == 0 || atoms.is_empty() {
        return leaf(rng, atoms);
    }
    let choices = if depth > 0 { 5 } else { 3 };
    match rng.gen_range(0..choices) {
        0 => random_formula(rng, atoms, depth, size - 1).not(),
        1 | 2 => {
            let left = rng.gen_range(0..size);
            let a = random_formula(rng, atoms, depth, left);
            let b = random_formula(rng, atoms, depth, size - 1 - left);
            if rng.gen_bool(0.5) {
                a.and(&b)
            } else {
                a.or(&b)
            }
        }
        3 => random_formula(rng, atoms, depth - 1, size - 1).boxed(),
        _ => random_formula(rng, atoms, depth - 1, size - 1).diamond(),
    }
}

fn leaf<R: Rng>(rng: &mut R, atoms: &[Atom]) -> Formula {
    if atoms.is_empty() || rng.gen_ratio(1, 12) {
        if rng.gen_bool(0.5) {
            Formula::top()
        } else {
            Formula::bot()
        }
    } else {
        Formula::atom(atoms[rng.gen_range(0..atoms.len())].clone())
    }
}

/// A random subset of `sig`.
pub fn random_subset<R: Rng>(rng: &mut R, sig: &Signature) -> Signature {
    sig.iter().filter(|_| rng.gen_bool(0.5)).cloned().collect()
}

/// Base atoms `p, q, r, s, …` (the first `n`).
pub fn atoms(n: usize) -> Vec<Atom> {
    const NAMES: [&str; 8] = ["p", "q", "r", "s", "t", "u", "v", "w"];
    (0..n)
        .map(|i| match NAMES.get(i) {
            Some(s) => Atom::base(s),
            None => Atom::base(&format!("x{i}")),
        })
        .collect()
}
