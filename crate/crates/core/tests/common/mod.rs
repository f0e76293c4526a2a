//! Shared helpers for integration tests: corpora and brute-force oracles
//! written independently of the library's own checks.

#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::Rng;
use tabint::catalog::{make_logic, LogicName};
use tabint::formula::{Atom, Formula, Signature};
use tabint::gen;
use tabint::kripke::{enumerate_models, member_of_logic, sigma_bisimulation, Logic, Model};

/// Catalog logics whose frames have at most `worlds` worlds.
pub fn catalog_logics(worlds: usize) -> Vec<Logic> {
    let names = [
        LogicName::Eq(1),
        LogicName::Eq(2),
        LogicName::Eq(3),
        LogicName::Eq(4),
        LogicName::Lo(1),
        LogicName::Lo(2),
        LogicName::Lo(3),
        LogicName::Fork(1),
        LogicName::Fork(2),
        LogicName::L13,
    ];
    names
        .into_iter()
        .map(|n| make_logic(n).unwrap())
        .filter(|l| l.bound() <= worlds)
        .collect()
}

/// Random `(f, σ)` with `depth(f) ≤ 2`, `|sig(f)| ≤ 3` and `σ ⊆ sig(f)`.
pub fn random_instance<R: Rng>(rng: &mut R) -> (Formula, Signature) {
    let atoms = gen::atoms(3);
    let size = rng.gen_range(1..=7);
    let f = gen::random_formula(rng, &atoms, 2, size);
    let sigma = gen::random_subset(rng, &f.signature());
    (f, sigma)
}

/// Random implication `f → g` valid in `l`, with `f` over `{p,q,r}`, `g`
/// over `{q,r,s}`, `f` satisfiable and `g` not valid. Found by rejection.
pub fn random_valid_implication<R: Rng>(rng: &mut R, l: &Logic) -> (Formula, Formula) {
    let left = [Atom::base("p"), Atom::base("q"), Atom::base("r")];
    let right = [Atom::base("q"), Atom::base("r"), Atom::base("s")];
    loop {
        let (fs, gs) = (rng.gen_range(2..=6), rng.gen_range(1..=6));
        let f = gen::random_formula(rng, &left, 2, fs);
        let g = gen::random_formula(rng, &right, 2, gs);
        let g = if rng.gen_bool(0.5) { g.or(&weaken(rng, &f)) } else { g };
        if member_of_logic(l, &f.implies(&g)).unwrap()
            && !member_of_logic(l, &f.not()).unwrap()
            && !member_of_logic(l, &g).unwrap()
        {
            return (f, g);
        }
    }
}

/// `f` with `p` replaced by a random constant or atom of the right side,
/// which often yields a consequence of `f` over the shared atoms.
fn weaken<R: Rng>(rng: &mut R, f: &Formula) -> Formula {
    let to = match rng.gen_range(0..4) {
        0 => Formula::top(),
        1 => Formula::bot(),
        2 => Formula::var("q"),
        _ => Formula::var("s"),
    };
    f.substitute(&BTreeMap::from([(Atom::base("p"), to)]))
}

/// Pairwise oracle for strongest implicates: a model on a frame of `l`
/// satisfies `chi` iff some model of `f` on a frame of `l` is
/// σ-bisimilar to it. Uses explicit bisimulation search, not keys.
pub fn naive_strongest_implicate_check(l: &Logic, f: &Formula, sigma: &Signature, chi: &Formula) -> bool {
    let all: Signature = f.signature().union(sigma).cloned().collect();
    let f_models: Vec<Model> = l
        .frames()
        .iter()
        .flat_map(|fr| enumerate_models(fr, &all).unwrap().filter(|m| m.satisfies_root(f)).collect::<Vec<_>>())
        .map(|m| m.reduct(sigma))
        .collect();
    l.frames().iter().all(|fr| {
        enumerate_models(fr, sigma).unwrap().all(|m| {
            let realized = f_models.iter().any(|m2| sigma_bisimulation(&m, m2, sigma).is_some());
            m.satisfies_root(chi) == realized
        })
    })
}

/// Every assignment to `atoms`, as valuations.
pub fn all_valuations(atoms: &[Atom]) -> Vec<BTreeMap<Atom, bool>> {
    (0..1u32 << atoms.len())
        .map(|b| atoms.iter().enumerate().map(|(i, a)| (a.clone(), (b >> i) & 1 == 1)).collect())
        .collect()
}

/// Existential projection by enumeration: true at `v` iff some assignment
/// to `xs` extends `v` to a model of `f`.
pub fn exists_projection(f: &Formula, xs: &[Atom], v: &BTreeMap<Atom, bool>) -> bool {
    all_valuations(xs).into_iter().any(|ext| {
        let mut w = v.clone();
        w.extend(ext);
        tabint::prop::eval(f, &w).unwrap()
    })
}

/// Formula syntax with the derived connectives kept, for checking the
/// parser and the primitive encoding against a direct semantics.
#[derive(Clone, Debug)]
pub enum Syn {
    Top,
    Bot,
    Var(usize),
    Not(Box<Syn>),
    And(Box<Syn>, Box<Syn>),
    Or(Box<Syn>, Box<Syn>),
    Imp(Box<Syn>, Box<Syn>),
    Iff(Box<Syn>, Box<Syn>),
    Box(Box<Syn>),
    Dia(Box<Syn>),
}

pub const VARS: [&str; 6] = ["p", "q", "r", "s", "t", "u"];

impl Syn {
    pub fn text(&self) -> String {
        match self {
            Syn::Top => "true".into(),
            Syn::Bot => "false".into(),
            Syn::Var(i) => VARS[*i].into(),
            Syn::Not(a) => format!("~({})", a.text()),
            Syn::And(a, b) => format!("({}) & ({})", a.text(), b.text()),
            Syn::Or(a, b) => format!("({}) | ({})", a.text(), b.text()),
            Syn::Imp(a, b) => format!("({}) -> ({})", a.text(), b.text()),
            Syn::Iff(a, b) => format!("({}) <-> ({})", a.text(), b.text()),
            Syn::Box(a) => format!("[]({})", a.text()),
            Syn::Dia(a) => format!("<>({})", a.text()),
        }
    }

    pub fn formula(&self) -> Formula {
        match self {
            Syn::Top => Formula::top(),
            Syn::Bot => Formula::bot(),
            Syn::Var(i) => Formula::var(VARS[*i]),
            Syn::Not(a) => a.formula().not(),
            Syn::And(a, b) => a.formula().and(&b.formula()),
            Syn::Or(a, b) => a.formula().or(&b.formula()),
            Syn::Imp(a, b) => a.formula().implies(&b.formula()),
            Syn::Iff(a, b) => a.formula().iff(&b.formula()),
            Syn::Box(a) => a.formula().boxed(),
            Syn::Dia(a) => a.formula().diamond(),
        }
    }

    /// Truth at world `w` of `m`, by the textbook clauses.
    pub fn holds(&self, m: &Model, w: usize) -> bool {
        let succ = m.frame().succ(w);
        match self {
            Syn::Top => true,
            Syn::Bot => false,
            Syn::Var(i) => m.holds(w, &Atom::base(VARS[*i])),
            Syn::Not(a) => !a.holds(m, w),
            Syn::And(a, b) => a.holds(m, w) && b.holds(m, w),
            Syn::Or(a, b) => a.holds(m, w) || b.holds(m, w),
            Syn::Imp(a, b) => !a.holds(m, w) || b.holds(m, w),
            Syn::Iff(a, b) => a.holds(m, w) == b.holds(m, w),
            Syn::Box(a) => succ.iter().all(|&v| a.holds(m, v)),
            Syn::Dia(a) => succ.iter().any(|&v| a.holds(m, v)),
        }
    }

    pub fn is_propositional(&self) -> bool {
        match self {
            Syn::Top | Syn::Bot | Syn::Var(_) => true,
            Syn::Not(a) => a.is_propositional(),
            Syn::And(a, b) | Syn::Or(a, b) | Syn::Imp(a, b) | Syn::Iff(a, b) => {
                a.is_propositional() && b.is_propositional()
            }
            Syn::Box(_) | Syn::Dia(_) => false,
        }
    }
}

/// Syntax trees over the first `atoms` variables with nesting depth at
/// most `depth`; `modal` allows boxes and diamonds.
pub fn syn_strategy(atoms: usize, depth: u32, modal: bool) -> impl proptest::strategy::Strategy<Value = Syn> {
    use proptest::prelude::*;
    let leaf = prop_oneof![
        1 => Just(Syn::Top),
        1 => Just(Syn::Bot),
        8 => (0..atoms).prop_map(Syn::Var),
    ];
    leaf.prop_recursive(depth, 48, 2, move |inner| {
        let b = |f: fn(Box<Syn>, Box<Syn>) -> Syn| {
            (inner.clone(), inner.clone()).prop_map(move |(a, c)| f(Box::new(a), Box::new(c)))
        };
        let u = |f: fn(Box<Syn>) -> Syn| inner.clone().prop_map(move |a| f(Box::new(a)));
        if modal {
            prop_oneof![
                u(Syn::Not),
                b(Syn::And),
                b(Syn::Or),
                b(Syn::Imp),
                b(Syn::Iff),
                u(Syn::Box),
                u(Syn::Dia)
            ]
            .boxed()
        } else {
            prop_oneof![u(Syn::Not), b(Syn::And), b(Syn::Or), b(Syn::Imp), b(Syn::Iff)].boxed()
        }
    })
}

/// A random rooted frame with at most `max` worlds: random edges, then
/// the part generated by world 0.
pub fn random_frame<R: Rng>(rng: &mut R, max: usize) -> tabint::kripke::PointedFrame {
    let n = rng.gen_range(1..=max);
    let succ: Vec<Vec<usize>> = (0..n).map(|_| (0..n).filter(|_| rng.gen_bool(0.4)).collect()).collect();
    let mut reach = vec![false; n];
    let mut stack = vec![0];
    reach[0] = true;
    while let Some(w) = stack.pop() {
        for &v in &succ[w] {
            if !reach[v] {
                reach[v] = true;
                stack.push(v);
            }
        }
    }
    let keep: Vec<usize> = (0..n).filter(|&w| reach[w]).collect();
    let pos = |w: usize| keep.iter().position(|&k| k == w).unwrap();
    let succ = keep.iter().map(|&w| succ[w].iter().map(|&v| pos(v)).collect()).collect();
    tabint::kripke::PointedFrame::from_succ("R", succ, 0).unwrap()
}

/// A random valuation over `sigma` on `fr`.
pub fn random_model<R: Rng>(rng: &mut R, fr: &tabint::kripke::PointedFrame, sigma: &Signature) -> Model {
    let val = (0..fr.len())
        .map(|_| sigma.iter().filter(|_| rng.gen_bool(0.5)).cloned().collect())
        .collect();
    Model::new(std::sync::Arc::new(fr.clone()), val).unwrap()
}

/// Depth-`d` characteristic formula of world `w` over `sigma`: a model
/// satisfies it at `v` iff `v` and `w` agree on every σ-formula of modal
/// depth at most `d`.
pub fn hintikka(m: &Model, w: usize, sigma: &Signature, d: usize) -> Formula {
    let lits = Formula::conj(sigma.iter().map(|a| {
        let x = Formula::atom(a.clone());
        if m.holds(w, a) {
            x
        } else {
            x.not()
        }
    }));
    if d == 0 {
        return lits;
    }
    let next: Vec<Formula> = m.frame().succ(w).iter().map(|&v| hintikka(m, v, sigma, d - 1)).collect();
    let forth = Formula::conj(next.iter().map(Formula::diamond));
    let back = Formula::disj(next.iter().cloned()).boxed();
    Formula::conj([lits, forth, back])
}
