//! Text grammar for polynomials: integer coefficients, variable names,
//! `*`, `+`, `-`, `^` and parentheses, e.g. `-3*x^2*T_1 + y*T_2`.

use super::poly::Poly;
use super::ring::PolyRing;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(u64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(src: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push(Token::Plus);
                i += 1
            }
            '-' => {
                out.push(Token::Minus);
                i += 1
            }
            '*' => {
                out.push(Token::Star);
                i += 1
            }
            '^' => {
                out.push(Token::Caret);
                i += 1
            }
            '(' => {
                out.push(Token::LParen);
                i += 1
            }
            ')' => {
                out.push(Token::RParen);
                i += 1
            }
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                let v = s
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("integer literal too large: {s}")))?;
                out.push(Token::Int(v));
            }
            a if a.is_ascii_alphabetic() => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Token::Ident(chars[start..i].iter().collect()));
            }
            other => {
                return Err(Error::Parse(format!(
                    "unexpected character {other:?} in {src:?}"
                )))
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    ring: &'a PolyRing,
    tokens: Vec<Token>,
    pos: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} in {:?}", self.src))
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = Poly::zero();
        let mut sign = match self.peek() {
            Some(Token::Minus) => {
                self.pos += 1;
                -1
            }
            Some(Token::Plus) => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.term()?;
            acc = if sign < 0 {
                acc.sub(self.ring, &t)
            } else {
                acc.add(self.ring, &t)
            };
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    sign = 1;
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    sign = -1;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while let Some(Token::Star) = self.peek() {
            self.pos += 1;
            let f = self.factor()?;
            acc = acc.mul(self.ring, &f);
        }
        Ok(acc)
    }

    fn exponent(&mut self) -> Result<u32> {
        if let Some(Token::Caret) = self.peek() {
            self.pos += 1;
            match self.next() {
                Some(Token::Int(e)) if e <= u16::MAX as u64 => Ok(e as u32),
                _ => Err(self.err("expected a small integer exponent")),
            }
        } else {
            Ok(1)
        }
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = match self.next() {
            Some(Token::Int(v)) => {
                let p = self.ring.field().characteristic() as u64;
                Poly::constant(self.ring, (v % p) as i64)
            }
            Some(Token::Ident(name)) => {
                let i = self
                    .ring
                    .var_index(&name)
                    .ok_or_else(|| self.err(&format!("unknown variable {name}")))?;
                Poly::var(self.ring, i)
            }
            Some(Token::LParen) => {
                let inner = self.expr()?;
                match self.next() {
                    Some(Token::RParen) => inner,
                    _ => return Err(self.err("missing ')'")),
                }
            }
            Some(Token::Minus) => {
                let inner = self.factor()?;
                return Ok(inner.neg(self.ring));
            }
            _ => return Err(self.err("expected a coefficient, variable or '('")),
        };
        let e = self.exponent()?;
        Ok(if e == 1 { base } else { base.pow(self.ring, e) })
    }
}

/// Parse a polynomial in `ring`.
pub fn parse_poly(ring: &PolyRing, src: &str) -> Result<Poly> {
    let tokens = tokenize(src)?;
    if tokens.is_empty() {
        return Err(Error::Parse(format!("empty polynomial {src:?}")));
    }
    let mut p = Parser {
        ring,
        tokens,
        pos: 0,
        src,
    };
    let out = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}
