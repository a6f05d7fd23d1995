//! Polynomial text grammar.
//!
//! Accepts integers, rationals `p/q`, declared variable names, the operators
//! `+ - * ^`, and parentheses. Whitespace is insignificant. This grammar is
//! shared by every instance file.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::poly::{Poly, PolyRing};
use crate::scalar::Coeff;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt, Option<BigInt>),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

struct Lexer<'a> {
    input: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn err(&self, detail: &str, at: usize) -> Error {
        Error::ParseError {
            input: self.input.to_string(),
            column: at + 1,
            detail: detail.to_string(),
        }
    }

    fn lex(&mut self) -> Result<Vec<(Tok, usize)>> {
        let mut out = Vec::new();
        while self.pos < self.bytes.len() {
            let start = self.pos;
            let b = self.bytes[self.pos];
            match b {
                b' ' | b'\t' | b'\n' | b'\r' => {
                    self.pos += 1;
                }
                b'+' => {
                    out.push((Tok::Plus, start));
                    self.pos += 1;
                }
                b'-' => {
                    out.push((Tok::Minus, start));
                    self.pos += 1;
                }
                b'*' => {
                    out.push((Tok::Star, start));
                    self.pos += 1;
                }
                b'^' => {
                    out.push((Tok::Caret, start));
                    self.pos += 1;
                }
                b'(' => {
                    out.push((Tok::LParen, start));
                    self.pos += 1;
                }
                b')' => {
                    out.push((Tok::RParen, start));
                    self.pos += 1;
                }
                b'0'..=b'9' => {
                    let num = self.lex_int();
                    // Lexical rational "p/q": slash immediately binding two
                    // integer literals.
                    let save = self.pos;
                    let den = if self.peek_nonspace() == Some(b'/') {
                        self.skip_space();
                        self.pos += 1;
                        self.skip_space();
                        if matches!(self.bytes.get(self.pos), Some(b'0'..=b'9')) {
                            Some(self.lex_int())
                        } else {
                            self.pos = save;
                            None
                        }
                    } else {
                        None
                    };
                    out.push((Tok::Num(num, den), start));
                }
                b'/' => return Err(self.err("unexpected '/'", start)),
                c if c.is_ascii_alphabetic() || c == b'_' => {
                    let mut end = self.pos;
                    while end < self.bytes.len()
                        && (self.bytes[end].is_ascii_alphanumeric() || self.bytes[end] == b'_')
                    {
                        end += 1;
                    }
                    out.push((
                        Tok::Ident(self.input[self.pos..end].to_string()),
                        start,
                    ));
                    self.pos = end;
                }
                _ => return Err(self.err(&format!("unexpected character {:?}", b as char), start)),
            }
        }
        Ok(out)
    }

    fn lex_int(&mut self) -> BigInt {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        self.input[start..self.pos].parse().unwrap()
    }

    fn skip_space(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek_nonspace(&self) -> Option<u8> {
        self.bytes[self.pos..]
            .iter()
            .copied()
            .find(|b| !b.is_ascii_whitespace())
    }
}

struct Parser<'a> {
    ring: &'a Arc<PolyRing>,
    input: &'a str,
    toks: Vec<(Tok, usize)>,
    idx: usize,
}

impl<'a> Parser<'a> {
    fn err_at(&self, detail: &str) -> Error {
        let column = self
            .toks
            .get(self.idx)
            .map(|(_, p)| p + 1)
            .unwrap_or(self.input.len() + 1);
        Error::ParseError {
            input: self.input.to_string(),
            column,
            detail: detail.to_string(),
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.idx).map(|(t, _)| t)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.idx).map(|(t, _)| t.clone());
        if t.is_some() {
            self.idx += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = acc.plus(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = acc.minus(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while matches!(self.peek(), Some(Tok::Star)) {
            self.bump();
            acc = acc.times(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly> {
        let mut sign = 1i64;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                }
                Some(Tok::Minus) => {
                    self.bump();
                    sign = -sign;
                }
                _ => break,
            }
        }
        let mut base = self.atom()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.bump();
            match self.bump() {
                Some(Tok::Num(n, None)) => {
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| self.err_at("exponent out of range"))?;
                    base = base.pow(e);
                }
                _ => {
                    self.idx = self.idx.saturating_sub(1);
                    return Err(self.err_at("expected integer exponent after '^'"));
                }
            }
        }
        if sign < 0 {
            base = base.negated();
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.bump() {
            Some(Tok::Num(n, d)) => {
                let den = d.unwrap_or_else(|| BigInt::from(1));
                let c = Coeff::from_ratio(n, den, self.ring.characteristic)?;
                Ok(Poly::constant(self.ring, c))
            }
            Some(Tok::Ident(name)) => match self.ring.var_index(&name) {
                Some(i) => Ok(Poly::var(self.ring, i)),
                None => {
                    self.idx -= 1;
                    Err(self.err_at(&format!("unknown variable {name:?}")))
                }
            },
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => {
                        self.idx = self.idx.saturating_sub(1);
                        Err(self.err_at("expected ')'"))
                    }
                }
            }
            _ => {
                self.idx = self.idx.saturating_sub(1);
                Err(self.err_at("expected a number, variable, or '('"))
            }
        }
    }
}

pub fn parse_poly(ring: &Arc<PolyRing>, text: &str) -> Result<Poly> {
    let mut lexer = Lexer {
        input: text,
        bytes: text.as_bytes(),
        pos: 0,
    };
    let toks = lexer.lex()?;
    let mut p = Parser {
        ring,
        input: text,
        toks,
        idx: 0,
    };
    let poly = p.expr()?;
    if p.idx != p.toks.len() {
        return Err(p.err_at("trailing input"));
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::pp;

    fn ring() -> Arc<PolyRing> {
        PolyRing::new(0, vec!["x1".into(), "x2".into()]).unwrap()
    }

    #[test]
    fn parses_basic_forms() {
        let r = ring();
        assert_eq!(parse_poly(&r, "x1 + x2").unwrap(), pp(&r, "x1+x2"));
        assert_eq!(
            parse_poly(&r, "3/2 * x1^2 - (x2 - 1)").unwrap(),
            pp(&r, "3/2*x1^2 - x2 + 1")
        );
        assert_eq!(parse_poly(&r, " - x1 ").unwrap(), pp(&r, "0 - x1"));
    }

    #[test]
    fn error_carries_position() {
        let r = ring();
        let err = parse_poly(&r, "x1 +* x2").unwrap_err();
        match err {
            Error::ParseError { column, .. } => assert_eq!(column, 5),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unknown_variable_rejected() {
        let r = ring();
        assert!(parse_poly(&r, "x1 + y").is_err());
    }
}
