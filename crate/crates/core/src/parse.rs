//! Recursive-descent parser for polynomial expressions.
//!
//! Grammar (ASCII, whitespace insignificant):
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := INT | VAR | VAR '^' INT | '(' expr ')'
//! ```
//!
//! Multiplication must be written out (`2*x`, `x*y`); the only juxtaposition
//! allowed is `VAR^INT`. Integer literals are reduced modulo `p`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::poly::Poly;

/// Grammar excerpt shown with usage errors.
pub const GRAMMAR: &str = "expr := ['-'] term (('+'|'-') term)*; term := factor ('*' factor)*; \
factor := INT | VAR | VAR '^' INT | '(' expr ')'";

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Int(text[start..i].to_string())));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
                continue;
            }
            _ => {
                return Err(Error::Syntax { pos: start, msg: format!("unexpected character `{}`", c as char) })
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    field: PrimeField,
    vars: &'a Arc<Vec<String>>,
    cap: u32,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos(), msg: msg.into() })
    }

    fn expr(&mut self) -> Result<Poly> {
        let negate = if self.peek() == Some(&Tok::Minus) {
            self.at += 1;
            true
        } else {
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.at += 1;
                    acc = acc.add(&self.term()?)?;
                }
                Some(Tok::Minus) => {
                    self.at += 1;
                    acc = acc.sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.at += 1;
            acc = acc.mul(&self.factor()?)?;
        }
        // anything that could start a factor here is implicit multiplication
        if matches!(self.peek(), Some(Tok::Int(_) | Tok::Ident(_) | Tok::LParen)) {
            return self.err("implicit multiplication is not allowed; use `*`");
        }
        Ok(acc)
    }

    fn int_mod_p(&self, digits: &str) -> u32 {
        digits.bytes().fold(0u32, |acc, d| self.field.reduce(acc as u64 * 10 + (d - b'0') as u64))
    }

    fn factor(&mut self) -> Result<Poly> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Int(d)) => {
                self.at += 1;
                Poly::constant(self.field, self.vars.clone(), self.cap, self.int_mod_p(&d))
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                let Some(i) = self.vars.iter().position(|v| *v == name) else {
                    return Err(Error::UnknownVariable { name, pos });
                };
                let x = Poly::var(self.field, self.vars.clone(), self.cap, i)?;
                if self.peek() == Some(&Tok::Caret) {
                    self.at += 1;
                    match self.peek().cloned() {
                        Some(Tok::Int(d)) => {
                            self.at += 1;
                            let e: u64 = d.parse().unwrap_or(u64::MAX);
                            if e >= self.cap as u64 {
                                return Poly::zero(self.field, self.vars.clone(), self.cap);
                            }
                            Ok(x.pow(e as u32))
                        }
                        _ => self.err("expected integer exponent after `^`"),
                    }
                } else {
                    Ok(x)
                }
            }
            Some(Tok::LParen) => {
                self.at += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.err("expected `)`");
                }
                self.at += 1;
                Ok(inner)
            }
            Some(t) => self.err(format!("unexpected token {t:?}")),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses `text` as a polynomial in `vars` over `field`, truncated below `cap`.
pub fn parse_poly(text: &str, vars: &Arc<Vec<String>>, field: PrimeField, cap: u32) -> Result<Poly> {
    if cap == 0 {
        return Err(Error::InvalidCap);
    }
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(Error::Syntax { pos: 0, msg: "empty expression".into() });
    }
    let mut p = Parser { toks, at: 0, end: text.len(), field, vars, cap };
    let out = p.expr()?;
    if p.at != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(out)
}
