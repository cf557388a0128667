//! Text form of polynomials.
//!
//! Grammar (whitespace between tokens is ignored):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' UINT)?
//! base   := UINT ('/' UINT)? | VAR | '(' expr ')' | '-' factor
//! ```
//!
//! Multiplication is always explicit (`2x` is an error) and rational
//! literals are always written as one integer over another (`x/2` is
//! an error, `1/2*x` is not). `format_polynomial` emits text this
//! parser maps back to the same canonical polynomial.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Monomial, Polynomial, Rational};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Debug)]
enum Tok {
    UInt(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

struct Lexer<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn tokens(text: &'a str) -> Result<Vec<(Tok, usize)>> {
        let mut lx = Lexer { bytes: text.as_bytes(), pos: 0 };
        let mut out = Vec::new();
        while let Some(t) = lx.next_token()? {
            out.push(t);
        }
        Ok(out)
    }

    fn next_token(&mut self) -> Result<Option<(Tok, usize)>> {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        if self.pos >= self.bytes.len() {
            return Ok(None);
        }
        let start = self.pos;
        let b = self.bytes[start];
        let tok = match b {
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
                let n: BigInt = text.parse().unwrap();
                return Ok(Some((Tok::UInt(n), start)));
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                while self.pos < self.bytes.len()
                    && (self.bytes[self.pos].is_ascii_alphanumeric() || self.bytes[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
                return Ok(Some((Tok::Ident(text.to_string()), start)));
            }
            _ => {
                return Err(Error::Parse {
                    position: start,
                    message: format!("unexpected character {:?}", self.bytes[start] as char),
                })
            }
        };
        self.pos += 1;
        Ok(Some((tok, start)))
    }
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    at: usize,
    end: usize,
    vars: &'a [String],
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|&(_, p)| p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(t, _)| t.clone());
        if t.is_some() {
            self.at += 1;
        }
        t
    }

    fn expect_uint(&mut self, what: &str) -> Result<(BigInt, usize)> {
        let position = self.pos();
        match self.bump() {
            Some(Tok::UInt(n)) => Ok((n, position)),
            _ => Err(Error::Parse { position, message: format!("expected {what}") }),
        }
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.bump();
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.base()?;
        if self.peek() == Some(&Tok::Caret) {
            self.bump();
            let (n, position) = self.expect_uint("a nonnegative integer exponent")?;
            let exp: u32 = n.try_into().map_err(|_| Error::Parse {
                position,
                message: "exponent too large".to_string(),
            })?;
            return Ok(base.pow(exp));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Polynomial> {
        let position = self.pos();
        match self.bump() {
            Some(Tok::UInt(n)) => {
                if self.peek() == Some(&Tok::Slash) {
                    self.bump();
                    let (d, dpos) = self.expect_uint("a denominator")?;
                    if d.is_zero() {
                        return Err(Error::Parse {
                            position: dpos,
                            message: "denominator is zero".to_string(),
                        });
                    }
                    return Ok(Polynomial::constant(self.vars.len(), Rational::new(n, d)));
                }
                Ok(Polynomial::constant(self.vars.len(), Rational::from_integer(n)))
            }
            Some(Tok::Ident(name)) => match self.vars.iter().position(|v| *v == name) {
                Some(i) => Ok(Polynomial::variable(self.vars.len(), i)),
                None => Err(Error::UnknownVariable { name, position }),
            },
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                if self.bump() != Some(Tok::RParen) {
                    return Err(Error::Parse {
                        position,
                        message: "unclosed parenthesis".to_string(),
                    });
                }
                Ok(inner)
            }
            Some(Tok::Minus) => Ok(self.factor()?.neg()),
            _ => Err(Error::Parse {
                position,
                message: "expected a number, variable, or parenthesized expression".to_string(),
            }),
        }
    }
}

/// Parses `text` in the variables `vars` (declaration order fixes the
/// exponent slots). Errors carry the byte offset of the offending token.
pub fn parse_polynomial(text: &str, vars: &[String]) -> Result<Polynomial> {
    let toks = Lexer::tokens(text)?;
    let mut p = Parser { toks, at: 0, end: text.len(), vars };
    let poly = p.expr()?;
    if p.at != p.toks.len() {
        return Err(Error::Parse {
            position: p.pos(),
            message: "unexpected trailing input (multiplication must be explicit)".to_string(),
        });
    }
    Ok(poly)
}

fn format_monomial(m: &Monomial, vars: &[String], out: &mut String) {
    let mut first = true;
    for (i, &e) in m.exps().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            out.push('*');
        }
        first = false;
        out.push_str(&vars[i]);
        if e > 1 {
            out.push('^');
            out.push_str(&e.to_string());
        }
    }
}

fn push_rational(c: &Rational, out: &mut String) {
    out.push_str(&c.numer().to_string());
    if !c.denom().is_one() {
        out.push('/');
        out.push_str(&c.denom().to_string());
    }
}

/// Renders the canonical form: terms in descending order, explicit
/// `*`, `^` powers, coefficients as integers or `a/b`. The output
/// parses back to an equal polynomial.
pub fn format_polynomial(p: &Polynomial, vars: &[String]) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().iter().enumerate() {
        let mag = c.abs();
        if i == 0 {
            if c.is_negative() {
                out.push('-');
            }
        } else if c.is_negative() {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        if m.is_one() {
            push_rational(&mag, &mut out);
        } else {
            if !mag.is_one() {
                push_rational(&mag, &mut out);
                out.push('*');
            }
            format_monomial(m, vars, &mut out);
        }
    }
    out
}
