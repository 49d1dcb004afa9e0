//! Expression parser.
//!
//! ```text
//! expr   := [sign] term (sign term)*          sign := '+' | '-' | '−'
//! term   := factor (['*'] factor)*            a spaced '*' is a product
//! factor := atom postfix*
//! atom   := integer ['/' integer] | name | '(' expr ')'
//! postfix:= '*' (attached) | '^*' | '^' integer
//! ```
//!
//! A `*` written directly after a factor is the involution; with whitespace
//! before it, it is multiplication. `t` names the central indeterminate when
//! the coefficient ring has one.

use std::sync::Arc;

use num_bigint::BigInt;

use super::{AlgebraExt, Element, LeavittAlgebra};
use crate::error::{Error, Result};
use crate::ring::Ring;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Name(String),
    Plus,
    Minus,
    Star { attached: bool },
    Caret,
    Slash,
    LParen,
    RParen,
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((start, Tok::Int(s.parse().expect("digits"))));
            continue;
        } else if c.is_ascii_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((start, Tok::Name(chars[start..i].iter().collect())));
            continue;
        } else {
            match c {
                '+' => Tok::Plus,
                '-' | '−' => Tok::Minus,
                '*' => Tok::Star { attached: i > 0 && !chars[i - 1].is_whitespace() },
                '^' => Tok::Caret,
                '/' => Tok::Slash,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                other => {
                    return Err(Error::Syntax { position: i, message: format!("unexpected character `{other}`") })
                }
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a, R: Ring> {
    algebra: &'a Arc<LeavittAlgebra<R>>,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    reduce: bool,
}

impl<R: Ring> Parser<'_, R> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn error<T>(&self, message: &str) -> Result<T> {
        Err(Error::Syntax { position: self.here(), message: message.to_string() })
    }

    fn expr(&mut self) -> Result<Element<R>> {
        let mut negate = false;
        match self.peek() {
            Some(Tok::Plus) => self.pos += 1,
            Some(Tok::Minus) => {
                negate = true;
                self.pos += 1;
            }
            _ => {}
        }
        let first = self.term()?;
        let mut acc = if negate { -first } else { first };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = acc.checked_add(&self.term()?)?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = acc.checked_sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Some(Tok::Int(_) | Tok::Name(_) | Tok::LParen))
    }

    fn term(&mut self) -> Result<Element<R>> {
        if !self.starts_factor() {
            return self.error("expected a term");
        }
        let mut acc = self.factor()?;
        loop {
            if let Some(Tok::Star { attached: false }) = self.peek() {
                self.pos += 1;
                if !self.starts_factor() {
                    return self.error("expected a factor after `*`");
                }
            } else if !self.starts_factor() {
                return Ok(acc);
            }
            let rhs = self.factor()?;
            acc = if self.reduce { acc.checked_mul(&rhs)? } else { acc.cohn_mul(&rhs)? };
        }
    }

    fn factor(&mut self) -> Result<Element<R>> {
        let mut x = self.atom()?;
        loop {
            match self.peek() {
                Some(Tok::Star { attached: true }) => {
                    self.pos += 1;
                    x = x.star();
                }
                Some(Tok::Caret) => {
                    self.pos += 1;
                    match self.peek().cloned() {
                        Some(Tok::Star { .. }) => {
                            self.pos += 1;
                            x = x.star();
                        }
                        Some(Tok::Int(n)) => {
                            let k: u32 = match u32::try_from(&n) {
                                Ok(k) if k <= 4096 => k,
                                _ => return self.error("exponent too large"),
                            };
                            self.pos += 1;
                            x = if self.reduce {
                                x.pow(k)
                            } else {
                                (0..k).try_fold(self.algebra.one(), |acc, _| acc.cohn_mul(&x))?
                            };
                        }
                        _ => return self.error("expected `*` or an exponent after `^`"),
                    }
                }
                _ => return Ok(x),
            }
        }
    }

    fn atom(&mut self) -> Result<Element<R>> {
        let ring = self.algebra.ring();
        match self.peek().cloned() {
            Some(Tok::Int(num)) => {
                self.pos += 1;
                let mut den = BigInt::from(1);
                if let Some(Tok::Slash) = self.peek() {
                    self.pos += 1;
                    match self.peek().cloned() {
                        Some(Tok::Int(d)) => {
                            self.pos += 1;
                            den = d;
                        }
                        _ => return self.error("expected a denominator"),
                    }
                }
                match ring.from_ratio(&num, &den) {
                    Some(c) => Ok(self.algebra.scalar(c)),
                    None => self.error("denominator is not invertible"),
                }
            }
            Some(Tok::Name(name)) => {
                self.pos += 1;
                let g = self.algebra.graph();
                if let Some(v) = g.vertex(&name) {
                    Ok(self.algebra.vertex(v))
                } else if let Some(e) = g.edge(&name) {
                    Ok(self.algebra.edge(e))
                } else if name == "t" {
                    match ring.indeterminate() {
                        Some(t) => Ok(self.algebra.scalar(t)),
                        None => Err(Error::UnknownGenerator(name)),
                    }
                } else {
                    Err(Error::UnknownGenerator(name))
                }
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let x = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(x)
                    }
                    _ => self.error("expected `)`"),
                }
            }
            _ => self.error("expected a number, a generator or `(`"),
        }
    }
}

/// Parses `src`; with `reduce` unset the result keeps the Cohn-path form
/// (only `e* f = δ r(e)` applied, no `v = sum e e*` rewriting).
pub(super) fn parse_expression<R: Ring>(
    algebra: &Arc<LeavittAlgebra<R>>,
    src: &str,
    reduce: bool,
) -> Result<Element<R>> {
    let toks = tokenize(src)?;
    let mut p = Parser { algebra, toks, pos: 0, end: src.chars().count(), reduce };
    let x = p.expr()?;
    if p.pos != p.toks.len() {
        return p.error("unexpected trailing input");
    }
    Ok(if reduce { x.normalize() } else { x })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::ring::{Polynomials, PrimeField, Rationals};

    #[test]
    fn grammar_examples() {
        let a = LeavittAlgebra::new(Graph::rose(2), Rationals);
        assert_eq!(a.parse("e* e").unwrap(), a.one());
        assert!(a.parse("v - e e* - f f*").unwrap().is_zero());
        assert_eq!(a.parse("(1/2) e f* + (1/2) e f*").unwrap(), a.parse("e f*").unwrap());
        assert_eq!(a.parse("e^* e").unwrap(), a.one());
        assert_eq!(a.parse("e * e*").unwrap(), a.parse("e e*").unwrap());
        assert_eq!(a.parse("(e f)*").unwrap(), a.parse("f* e*").unwrap());
        assert_eq!(a.parse("e^2").unwrap(), a.parse("e e").unwrap());
        assert_eq!(a.parse("e^0").unwrap(), a.one());
        assert_eq!(a.parse("−e").unwrap(), -a.edge_named("e").unwrap());
        assert_eq!(a.parse("2 e - 1/2 e").unwrap(), a.parse("3/2 e").unwrap());
    }

    #[test]
    fn display_round_trips() {
        let a = LeavittAlgebra::new(Graph::fibonacci(), Rationals);
        for src in ["2 a b c - 1/2 v", "a a* + b c c* b*", "-c a b", "w + a^*", "b c a* a*"] {
            let x = a.parse(src).unwrap();
            assert_eq!(a.parse(&x.to_string()).unwrap(), x, "{src} -> {x}");
        }
        let p = LeavittAlgebra::new(Graph::rose(2), Polynomials::new(Rationals));
        let x = p.parse("(1 - t) e + t^2 f* - 1/3 t v").unwrap();
        assert_eq!(p.parse(&x.to_string()).unwrap(), x, "{x}");
    }

    #[test]
    fn errors() {
        let a = LeavittAlgebra::new(Graph::rose(2), Rationals);
        assert_eq!(a.parse("e + q"), Err(Error::UnknownGenerator("q".into())));
        assert_eq!(a.parse("t e"), Err(Error::UnknownGenerator("t".into())));
        assert!(matches!(a.parse("e +"), Err(Error::Syntax { position: 3, .. })));
        assert!(matches!(a.parse("(e"), Err(Error::Syntax { .. })));
        assert!(matches!(a.parse("e $ f"), Err(Error::Syntax { position: 2, .. })));
        assert!(matches!(a.parse("1/0"), Err(Error::Syntax { .. })));
        let f2 = LeavittAlgebra::new(Graph::rose(2), PrimeField::new(2).unwrap());
        assert!(matches!(f2.parse("1/2 e"), Err(Error::Syntax { .. })));
        assert!(f2.parse("2 e").unwrap().is_zero());
    }
}
