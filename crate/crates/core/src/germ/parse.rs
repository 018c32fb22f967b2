//! Recursive-descent parser for polynomial germs.
//!
//! ```text
//! expr    := ['+' | '-'] term { ('+' | '-') term }
//! term    := power { ['*'] power }
//! power   := primary [ '^' integer ]
//! primary := integer | variable | '(' expr ')'
//! variable:= 'x' | 'y' | 'z' | 'x' digits
//! ```
//! `x`, `y`, `z` are the first three coordinates and `x<k>` is the k-th, so
//! `x` and `x1` name the same variable. Juxtaposition multiplies.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Largest exponent accepted after `^`.
const MAX_EXPONENT: u32 = 1000;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Var(usize),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn syntax(position: usize, message: impl Into<String>) -> Error {
    Error::SyntaxError {
        position,
        message: message.into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => out.push((start, Tok::Plus)),
            b'-' => out.push((start, Tok::Minus)),
            b'*' => out.push((start, Tok::Star)),
            b'^' => out.push((start, Tok::Caret)),
            b'(' => out.push((start, Tok::LParen)),
            b')' => out.push((start, Tok::RParen)),
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().expect("digits");
                out.push((start, Tok::Int(n)));
                continue;
            }
            b'x' => {
                i += 1;
                let digits_start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let index = if i == digits_start {
                    1
                } else {
                    let k: usize = text[digits_start..i]
                        .parse()
                        .map_err(|_| syntax(start, "variable index too large"))?;
                    if k == 0 {
                        return Err(syntax(start, "variables are numbered from x1"));
                    }
                    k
                };
                out.push((start, Tok::Var(index)));
                continue;
            }
            b'y' => out.push((start, Tok::Var(2))),
            b'z' => out.push((start, Tok::Var(3))),
            _ => {
                let ch = text[start..].chars().next().unwrap();
                return Err(syntax(start, format!("unexpected character {ch:?}")));
            }
        }
        i += 1;
    }
    Ok(out)
}

type Poly = BTreeMap<Vec<u32>, BigInt>;

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    dim: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn constant(&self, c: BigInt) -> Poly {
        let mut p = Poly::new();
        if !c.is_zero() {
            p.insert(vec![0; self.dim], c);
        }
        p
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut negate = false;
        match self.peek() {
            Some(Tok::Plus) => {
                self.bump();
            }
            Some(Tok::Minus) => {
                self.bump();
                negate = true;
            }
            _ => {}
        }
        let first = self.term()?;
        let mut acc = if negate { neg(&first) } else { first };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    let t = self.term()?;
                    add_into(&mut acc, &t);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    let t = self.term()?;
                    add_into(&mut acc, &neg(&t));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    let f = self.power()?;
                    acc = mul(&acc, &f);
                }
                Some(Tok::Int(_) | Tok::Var(_) | Tok::LParen) => {
                    let f = self.power()?;
                    acc = mul(&acc, &f);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.primary()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.bump();
        let at = self.here();
        match self.bump() {
            Some(Tok::Int(n)) => {
                let e: u32 = u32::try_from(&n)
                    .ok()
                    .filter(|&e| e <= MAX_EXPONENT)
                    .ok_or_else(|| {
                        syntax(at, format!("exponent must be at most {MAX_EXPONENT}"))
                    })?;
                let mut acc = self.constant(BigInt::one());
                for _ in 0..e {
                    acc = mul(&acc, &base);
                }
                Ok(acc)
            }
            _ => Err(syntax(
                at,
                "expected a nonnegative integer exponent after '^'",
            )),
        }
    }

    fn primary(&mut self) -> Result<Poly> {
        let at = self.here();
        match self.bump() {
            Some(Tok::Int(n)) => Ok(self.constant(n)),
            Some(Tok::Var(k)) => {
                let mut e = vec![0; self.dim];
                e[k - 1] = 1;
                Ok(Poly::from([(e, BigInt::one())]))
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                let close = self.here();
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(syntax(close, "expected ')'")),
                }
            }
            Some(_) => Err(syntax(at, "expected a number, a variable or '('")),
            None => Err(syntax(at, "unexpected end of input")),
        }
    }
}

fn neg(p: &Poly) -> Poly {
    p.iter().map(|(e, c)| (e.clone(), -c)).collect()
}

fn add_into(acc: &mut Poly, p: &Poly) {
    for (e, c) in p {
        let slot = acc.entry(e.clone()).or_default();
        *slot += c;
        if slot.is_zero() {
            acc.remove(e);
        }
    }
}

fn mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            add_into(&mut out, &Poly::from([(e, ca * cb)]));
        }
    }
    out
}

/// Parses `text` into `(dimension, support)`. The dimension is the larger of
/// `min_dim` and the highest variable index used.
pub(super) fn parse_support(text: &str, min_dim: usize) -> Result<(usize, Poly)> {
    let toks = tokenize(text)?;
    let used = toks
        .iter()
        .filter_map(|(_, t)| if let Tok::Var(k) = t { Some(*k) } else { None })
        .max()
        .unwrap_or(0);
    let dim = used.max(min_dim).max(1);
    let mut parser = Parser {
        toks,
        pos: 0,
        dim,
        end: text.len(),
    };
    if parser.peek().is_none() {
        return Err(syntax(0, "empty input"));
    }
    let poly = parser.expr()?;
    if parser.pos < parser.toks.len() {
        return Err(syntax(parser.here(), "unexpected token"));
    }
    Ok((dim, poly))
}
