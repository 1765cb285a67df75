//! Recursive-descent parser for the canonical scalar rendering.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := factor (('*' | '/') factor)*
//! factor  := '-' factor | atom ('^' uint)?
//! atom    := integer | identifier | '(' expr ')'
//! ```
//!
//! Identifiers resolve through [`Scalar::from_var`], so the same parser serves
//! plain rationals (no identifiers) and the genus-1 field (g2, g3, c, p, q).

use num::{BigInt, BigRational};

use super::Scalar;
use crate::error::{Error, Result};

pub fn parse_scalar<F: Scalar>(input: &str) -> Result<F> {
    let mut p = Parser {
        chars: input.chars().collect(),
        pos: 0,
        input,
    };
    p.skip_ws();
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.chars.len() {
        return Err(Error::Parse(format!(
            "trailing input at byte {} in {:?}",
            p.pos, input
        )));
    }
    Ok(v)
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    input: &'a str,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn expr<F: Scalar>(&mut self) -> Result<F> {
        let mut acc: F = self.term()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('+') => {
                    self.bump();
                    let t: F = self.term()?;
                    acc = acc.add(&t);
                }
                Some('-') => {
                    self.bump();
                    let t: F = self.term()?;
                    acc = acc.sub(&t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term<F: Scalar>(&mut self) -> Result<F> {
        let mut acc: F = self.factor()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('*') => {
                    self.bump();
                    let t: F = self.factor()?;
                    acc = acc.mul(&t);
                }
                Some('/') => {
                    self.bump();
                    let t: F = self.factor()?;
                    acc = acc.div(&t)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor<F: Scalar>(&mut self) -> Result<F> {
        self.skip_ws();
        if self.peek() == Some('-') {
            self.bump();
            let f: F = self.factor()?;
            return Ok(f.neg());
        }
        let base: F = self.atom()?;
        self.skip_ws();
        if self.peek() == Some('^') {
            self.bump();
            self.skip_ws();
            let e = self.uint()?;
            let mut acc = F::one();
            for _ in 0..e {
                acc = acc.mul(&base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom<F: Scalar>(&mut self) -> Result<F> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.bump();
                let v = self.expr()?;
                self.skip_ws();
                if self.bump() != Some(')') {
                    return Err(Error::Parse(format!("expected ')' in {:?}", self.input)));
                }
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.bigint()?;
                Ok(F::from_bigint(n))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let mut name = String::new();
                while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric()) {
                    name.push(self.bump().unwrap());
                }
                F::from_var(&name).ok_or_else(|| {
                    Err::<F, _>(Error::Parse(format!(
                        "unknown symbol {:?} in {:?}",
                        name, self.input
                    )))
                    .unwrap_err()
                })
            }
            other => Err(Error::Parse(format!(
                "unexpected {:?} in {:?}",
                other, self.input
            ))),
        }
    }

    fn uint(&mut self) -> Result<u32> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::Parse(format!("expected exponent in {:?}", self.input)));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse::<u32>()
            .map_err(|e| Error::Parse(format!("bad exponent {:?}: {}", s, e)))
    }

    fn bigint(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse::<BigInt>()
            .map_err(|e| Error::Parse(format!("bad integer {:?}: {}", s, e)))
    }
}

/// Parse a plain rational literal like `-5/6` or `12`.
pub fn parse_rational_literal(s: &str) -> Result<BigRational> {
    let t = s.trim();
    let (neg, rest) = match t.strip_prefix('-') {
        Some(r) => (true, r.trim()),
        None => (false, t),
    };
    let mk = |n: &str| -> Result<BigInt> {
        n.trim()
            .parse::<BigInt>()
            .map_err(|e| Error::Parse(format!("bad rational {:?}: {}", s, e)))
    };
    let v = match rest.split_once('/') {
        Some((n, d)) => {
            let den = mk(d)?;
            if den == BigInt::from(0) {
                return Err(Error::Parse(format!("zero denominator in {:?}", s)));
            }
            BigRational::new(mk(n)?, den)
        }
        None => BigRational::from_integer(mk(rest)?),
    };
    Ok(if neg { -v } else { v })
}
