//! Rendering in the text syntax. Derived connectives are recovered where
//! the primitive shape allows it; the output always re-parses to the same
//! node.

use std::fmt;

use super::node::{Formula, Kind};

const IMP: u8 = 1;
const OR: u8 = 2;
const AND: u8 = 3;
const UNARY: u8 = 4;

fn open(out: &mut String, level: u8, min: u8) {
    if level < min {
        out.push('(');
    }
}

fn close(out: &mut String, level: u8, min: u8) {
    if level < min {
        out.push(')');
    }
}

/// True for conjunctions whose flattened conjuncts are all negations, i.e.
/// negated disjunctions.
fn negated_disjunction(f: &Formula) -> bool {
    match f.kind() {
        Kind::And(a, b) => [a, b]
            .iter()
            .all(|c| matches!(c.kind(), Kind::Not(_)) || negated_disjunction(c)),
        _ => false,
    }
}

fn implication_shaped(f: &Formula) -> bool {
    matches!(f.kind(), Kind::And(_, y) if matches!(y.kind(), Kind::Not(_)))
}

/// `¬(a ∧ b)` with `a` negated reads best as a disjunction, unless it is
/// `(x -> y) -> z` or `(x | y) -> z`.
fn disjunct_like(a: &Formula, b: &Formula) -> bool {
    match a.kind() {
        Kind::Not(x) => !(implication_shaped(x) && matches!(b.kind(), Kind::Not(_))),
        _ => false,
    }
}

fn render(f: &Formula, min: u8, out: &mut String) {
    match f.kind() {
        Kind::Top => out.push_str("true"),
        Kind::Atom(a) => out.push_str(&a.to_string()),
        Kind::Not(inner) => render_not(inner, min, out),
        Kind::And(a, b) => {
            open(out, AND, min);
            render(a, AND, out);
            out.push_str(" & ");
            render(b, UNARY, out);
            close(out, AND, min);
        }
        Kind::Box(a) => {
            open(out, UNARY, min);
            out.push_str("[]");
            render(a, UNARY, out);
            close(out, UNARY, min);
        }
    }
}

/// Renders the negation of `f` without building the node.
fn render_neg(f: &Formula, min: u8, out: &mut String) {
    match f.kind() {
        Kind::Not(inner) => render(inner, min, out),
        _ => render_not(f, min, out),
    }
}

/// Renders `¬inner`.
fn render_not(inner: &Formula, min: u8, out: &mut String) {
    match inner.kind() {
        Kind::Top => out.push_str("false"),
        Kind::Box(b) if matches!(b.kind(), Kind::Not(_)) => {
            let Kind::Not(x) = b.kind() else { unreachable!() };
            open(out, UNARY, min);
            out.push_str("<>");
            render(x, UNARY, out);
            close(out, UNARY, min);
        }
        Kind::And(a, b) if negated_disjunction(a) || disjunct_like(a, b) => {
            open(out, OR, min);
            render_neg(a, OR, out);
            out.push_str(" | ");
            render_neg(b, AND, out);
            close(out, OR, min);
        }
        Kind::And(a, b) if matches!(b.kind(), Kind::Not(_)) => {
            let Kind::Not(y) = b.kind() else { unreachable!() };
            open(out, IMP, min);
            render(a, OR, out);
            out.push_str(" -> ");
            render(y, IMP, out);
            close(out, IMP, min);
        }
        _ => {
            open(out, UNARY, min);
            out.push('~');
            render(inner, UNARY, out);
            close(out, UNARY, min);
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        render(self, 0, &mut out);
        f.write_str(&out)
    }
}
