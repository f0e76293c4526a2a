//! Formulas compiled to a flat instruction list for fast repeated
//! evaluation, 64 valuations (or models) at a time.

use std::collections::HashMap;

use super::atom::Atom;
use super::node::{Formula, Kind};

#[derive(Clone, Copy, Debug)]
pub enum Op {
    Top,
    Atom(usize),
    Not(usize),
    And(usize, usize),
    Box(usize),
}

/// A formula as a topologically ordered list of operations; the last one
/// is the root.
#[derive(Clone, Debug)]
pub struct Circuit {
    pub ops: Vec<Op>,
    /// Atoms in ascending order; `Op::Atom(i)` refers to `atoms[i]`.
    pub atoms: Vec<Atom>,
}

impl Circuit {
    pub fn compile(f: &Formula) -> Circuit {
        let order = f.postorder();
        let atoms: Vec<Atom> = f.signature().into_iter().collect();
        let atom_idx: HashMap<&Atom, usize> = atoms.iter().enumerate().map(|(i, a)| (a, i)).collect();
        let mut pos: HashMap<u64, usize> = HashMap::with_capacity(order.len());
        let mut ops = Vec::with_capacity(order.len());
        for (i, g) in order.iter().enumerate() {
            let op = match g.kind() {
                Kind::Top => Op::Top,
                Kind::Atom(a) => Op::Atom(atom_idx[a]),
                Kind::Not(a) => Op::Not(pos[&a.id()]),
                Kind::And(a, b) => Op::And(pos[&a.id()], pos[&b.id()]),
                Kind::Box(a) => Op::Box(pos[&a.id()]),
            };
            ops.push(op);
            pos.insert(g.id(), i);
        }
        Circuit { ops, atoms }
    }

    pub fn has_box(&self) -> bool {
        self.ops.iter().any(|o| matches!(o, Op::Box(_)))
    }

    /// Propositional evaluation of 64 valuations at once: bit `j` of
    /// `inputs[i]` is the value of atom `i` in valuation `j`.
    pub fn eval_words(&self, inputs: &[u64], scratch: &mut Vec<u64>) -> u64 {
        scratch.clear();
        scratch.reserve(self.ops.len());
        for op in &self.ops {
            let v = match *op {
                Op::Top => !0,
                Op::Atom(i) => inputs[i],
                Op::Not(a) => !scratch[a],
                Op::And(a, b) => scratch[a] & scratch[b],
                Op::Box(_) => panic!("eval_words on a modal circuit"),
            };
            scratch.push(v);
        }
        *scratch.last().expect("circuit is non-empty")
    }

    /// Modal evaluation of 64 models over one frame at once. `succ[w]`
    /// lists the successors of world `w`; `input(i, w)` gives, for atom `i`
    /// at world `w`, the 64 model bits. Returns the value at every world.
    pub fn eval_frame_words(
        &self,
        succ: &[Vec<usize>],
        input: impl Fn(usize, usize) -> u64,
        scratch: &mut Vec<u64>,
    ) -> Vec<u64> {
        let n = succ.len();
        scratch.clear();
        scratch.resize(self.ops.len() * n, 0);
        for (k, op) in self.ops.iter().enumerate() {
            let base = k * n;
            match *op {
                Op::Top => scratch[base..base + n].fill(!0),
                Op::Atom(i) => {
                    for w in 0..n {
                        scratch[base + w] = input(i, w);
                    }
                }
                Op::Not(a) => {
                    for w in 0..n {
                        scratch[base + w] = !scratch[a * n + w];
                    }
                }
                Op::And(a, b) => {
                    for w in 0..n {
                        scratch[base + w] = scratch[a * n + w] & scratch[b * n + w];
                    }
                }
                Op::Box(a) => {
                    for w in 0..n {
                        let mut v = !0u64;
                        for &s in &succ[w] {
                            v &= scratch[a * n + s];
                        }
                        scratch[base + w] = v;
                    }
                }
            }
        }
        let last = (self.ops.len() - 1) * n;
        scratch[last..last + n].to_vec()
    }
}

/// Bit pattern of valuation-index bit `bit` across a 64-wide chunk whose
/// first index is `chunk_base` (a multiple of 64).
pub fn index_bit_word(bit: usize, chunk_base: u64) -> u64 {
    const PATTERNS: [u64; 6] = [
        0xAAAA_AAAA_AAAA_AAAA,
        0xCCCC_CCCC_CCCC_CCCC,
        0xF0F0_F0F0_F0F0_F0F0,
        0xFF00_FF00_FF00_FF00,
        0xFFFF_0000_FFFF_0000,
        0xFFFF_FFFF_0000_0000,
    ];
    if bit < 6 {
        PATTERNS[bit]
    } else if bit < 64 && (chunk_base >> bit) & 1 == 1 {
        !0
    } else {
        0
    }
}

/// Mask of the valid lanes in a chunk when fewer than 64 indices exist.
pub fn lane_mask(total: u64, chunk_base: u64) -> u64 {
    let left = total - chunk_base;
    if left >= 64 {
        !0
    } else {
        (1u64 << left) - 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_formula;

    #[test]
    fn index_patterns_match_bits() {
        for base in [0u64, 64, 128, 64 * 5] {
            for bit in 0..9 {
                let w = index_bit_word(bit, base);
                for lane in 0..64u64 {
                    let idx = base + lane;
                    assert_eq!((w >> lane) & 1, (idx >> bit) & 1);
                }
            }
        }
    }

    #[test]
    fn words_evaluate_truth_table() {
        let f = parse_formula("p -> q").unwrap();
        let c = Circuit::compile(&f);
        let inputs: Vec<u64> = (0..2).map(|i| index_bit_word(i, 0)).collect();
        let mut s = Vec::new();
        let v = c.eval_words(&inputs, &mut s) & lane_mask(4, 0);
        // valuations (p,q): 00 01 10 11 by index bits, p = bit 0
        assert_eq!(v, 0b1101);
    }
}
