//! Text syntax.
//!
//! ```text
//! iff   := imp ("<->" imp)*          left associative
//! imp   := or ("->" imp)?            right associative
//! or    := and ("|" and)*
//! and   := unary ("&" unary)*
//! unary := ("~" | "[]" | "<>") unary | atom | "true" | "false" | "(" iff ")"
//! atom  := base ("@" id (":" id)?)?
//! ```
//!
//! `p@w` is the atom `p` indexed by world `w`; `r@F:w` is the selector of
//! frame `F` rooted at `w`.

use super::atom::Atom;
use super::node::Formula;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    At,
    Colon,
    Not,
    Box,
    Dia,
    And,
    Or,
    Imp,
    Iff,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'~' => {
                i += 1;
                Tok::Not
            }
            b'&' => {
                i += 1;
                Tok::And
            }
            b'|' => {
                i += 1;
                Tok::Or
            }
            b'(' => {
                i += 1;
                Tok::LParen
            }
            b')' => {
                i += 1;
                Tok::RParen
            }
            b'@' => {
                i += 1;
                Tok::At
            }
            b':' => {
                i += 1;
                Tok::Colon
            }
            b'[' if bytes.get(i + 1) == Some(&b']') => {
                i += 2;
                Tok::Box
            }
            b'<' if text[i..].starts_with("<->") => {
                i += 3;
                Tok::Iff
            }
            b'<' if bytes.get(i + 1) == Some(&b'>') => {
                i += 2;
                Tok::Dia
            }
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 2;
                Tok::Imp
            }
            c if c.is_ascii_alphanumeric() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                Tok::Ident(text[start..i].to_string())
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(Error::Parse {
                    offset: i,
                    message: format!("unknown token `{ch}`"),
                });
            }
        };
        out.push((tok, start));
    }
    Ok(out)
}

const MAX_NESTING: usize = 10_000;

struct Parser<'a> {
    toks: &'a [(Tok, usize)],
    pos: usize,
    end: usize,
    depth: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.1)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            offset: self.offset(),
            message: message.into(),
        })
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn iff(&mut self) -> Result<Formula> {
        let mut f = self.imp()?;
        while self.eat(&Tok::Iff) {
            let g = self.imp()?;
            f = f.iff(&g);
        }
        Ok(f)
    }

    fn imp(&mut self) -> Result<Formula> {
        let f = self.or()?;
        if self.eat(&Tok::Imp) {
            let g = self.imp()?;
            return Ok(f.implies(&g));
        }
        Ok(f)
    }

    fn or(&mut self) -> Result<Formula> {
        let mut f = self.and()?;
        while self.eat(&Tok::Or) {
            let g = self.and()?;
            f = f.or(&g);
        }
        Ok(f)
    }

    fn and(&mut self) -> Result<Formula> {
        let mut f = self.unary()?;
        while self.eat(&Tok::And) {
            let g = self.unary()?;
            f = f.and(&g);
        }
        Ok(f)
    }

    fn unary(&mut self) -> Result<Formula> {
        self.depth += 1;
        if self.depth > MAX_NESTING {
            return self.err("nesting too deep");
        }
        let f = self.unary_inner();
        self.depth -= 1;
        f
    }

    fn unary_inner(&mut self) -> Result<Formula> {
        let Some(tok) = self.peek().cloned() else {
            return self.err("unexpected end of input");
        };
        self.pos += 1;
        match tok {
            Tok::Not => Ok(self.unary()?.not()),
            Tok::Box => Ok(self.unary()?.boxed()),
            Tok::Dia => Ok(self.unary()?.diamond()),
            Tok::LParen => {
                let f = self.iff()?;
                if !self.eat(&Tok::RParen) {
                    return self.err("expected `)`");
                }
                Ok(f)
            }
            Tok::Ident(name) => self.atom(name),
            _ => {
                self.pos -= 1;
                self.err("expected a formula")
            }
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek().cloned() {
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok(s)
            }
            _ => self.err("expected an identifier"),
        }
    }

    fn atom(&mut self, name: String) -> Result<Formula> {
        let at = self.toks[self.pos - 1].1;
        let bad = |message: String| Err(Error::Parse { offset: at, message });
        if !self.eat(&Tok::At) {
            return match name.as_str() {
                "true" => Ok(Formula::top()),
                "false" => Ok(Formula::bot()),
                _ => match Atom::try_base(&name) {
                    Ok(a) => Ok(Formula::atom(a)),
                    Err(_) => bad(format!("invalid atom name `{name}`")),
                },
            };
        }
        let first = self.ident()?;
        if self.eat(&Tok::Colon) {
            let world = self.ident()?;
            if name != "r" {
                return bad(format!("frame selectors are written `r@F:w`, found `{name}@`"));
            }
            return Atom::selector(&first, &world)
                .map(Formula::atom)
                .or_else(|e| bad(e.to_string()));
        }
        Atom::indexed(&name, &first)
            .map(Formula::atom)
            .or_else(|e| bad(e.to_string()))
    }
}

/// Parses a formula in the text syntax.
pub fn parse_formula(text: &str) -> Result<Formula> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        end: text.len(),
        depth: 0,
    };
    let f = p.iff()?;
    if p.pos != toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: &str) -> Formula {
        Formula::var(n)
    }

    #[test]
    fn grammar_examples() {
        assert_eq!(parse_formula("p & ~q").unwrap(), v("p").and(&v("q").not()));
        assert_eq!(
            parse_formula("[](p -> <>q)").unwrap(),
            v("p").implies(&v("q").diamond()).boxed()
        );
    }

    #[test]
    fn truncated_input_reports_offset() {
        match parse_formula("p &") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unknown_token() {
        match parse_formula("p # q") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn precedence_and_associativity() {
        let (p, q, r) = (v("p"), v("q"), v("r"));
        assert_eq!(parse_formula("p -> q -> r").unwrap(), p.implies(&q.implies(&r)));
        assert_eq!(parse_formula("p | q & r").unwrap(), p.or(&q.and(&r)));
        assert_eq!(parse_formula("p & q | r").unwrap(), p.and(&q).or(&r));
        assert_eq!(parse_formula("p -> q | r").unwrap(), p.implies(&q.or(&r)));
        assert_eq!(parse_formula("p <-> q -> r").unwrap(), p.iff(&q.implies(&r)));
        assert_eq!(parse_formula("~p & q").unwrap(), p.not().and(&q));
        assert_eq!(parse_formula("[]p & q").unwrap(), p.boxed().and(&q));
        assert_eq!(parse_formula("false").unwrap(), Formula::bot());
    }

    #[test]
    fn indexed_atoms_and_selectors() {
        let f = parse_formula("p@w1 & r@F1:0").unwrap();
        let expect = Formula::atom(Atom::indexed("p", "w1").unwrap())
            .and(&Formula::atom(Atom::selector("F1", "0").unwrap()));
        assert_eq!(f, expect);
        assert!(parse_formula("q@F:0").is_err());
        assert!(parse_formula("p@").is_err());
    }

    #[test]
    fn errors() {
        assert!(parse_formula("").is_err());
        assert!(parse_formula("(p").is_err());
        assert!(parse_formula("p q").is_err());
        assert!(parse_formula("P").is_err());
        assert!(parse_formula("p ->").is_err());
    }
}
