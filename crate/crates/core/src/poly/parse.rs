//! Parser for polynomial expressions such as `x^25 + a*x^4` or `g^3*x^13 + 1`.
//!
//! ```text
//! poly   := term ('+' term)*
//! term   := factor ('*' factor)*
//! factor := 'x' ['^' int] | coef
//! coef   := '0' | int | 'g' ['^' ['-'] int] | name
//! ```
//!
//! Whitespace is insignificant. `name` is a single letter other than `x` and
//! `g`, bound through the parameter map. Integers denote `1` added to itself.
//! Error positions are 1-based character columns.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::poly::MappingPoly;

pub type Params = BTreeMap<String, Elem>;

pub fn parse_poly(expr: &str, field: &Field, params: &Params) -> Result<MappingPoly> {
    let raw = Parser::new(expr, field, params).parse()?;
    Ok(MappingPoly::from_raw(field, raw))
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    field: &'a Field,
    params: &'a Params,
}

impl<'a> Parser<'a> {
    fn new(expr: &str, field: &'a Field, params: &'a Params) -> Self {
        Self {
            chars: expr.chars().collect(),
            pos: 0,
            field,
            params,
        }
    }

    fn err<T>(&self, at: usize, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: at + 1,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn describe(c: Option<char>) -> String {
        match c {
            Some(c) => format!("`{c}`"),
            None => "end of input".into(),
        }
    }

    fn parse(mut self) -> Result<Vec<(u64, Elem)>> {
        let mut out = vec![self.term()?];
        loop {
            match self.peek() {
                None => return Ok(out),
                Some('+') => {
                    self.pos += 1;
                    out.push(self.term()?);
                }
                c => {
                    let at = self.pos;
                    return self.err(at, format!("expected `+` or end of input, found {}", Self::describe(c)));
                }
            }
        }
    }

    fn term(&mut self) -> Result<(u64, Elem)> {
        let (mut exp, mut coeff) = self.factor()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            let (e, c) = self.factor()?;
            exp = exp.checked_add(e).ok_or(Error::Syntax {
                pos: self.pos,
                msg: "exponent overflow".into(),
            })?;
            coeff = self.field.mul(coeff, c);
        }
        Ok((exp, coeff))
    }

    fn factor(&mut self) -> Result<(u64, Elem)> {
        let at = self.pos;
        match self.peek() {
            Some('x') => {
                self.pos += 1;
                if self.peek() == Some('^') {
                    self.pos += 1;
                    if self.peek() == Some('-') {
                        let at = self.pos;
                        return Err(Error::NegativeExponent(at + 1));
                    }
                    let e = self.integer()?;
                    Ok((e, Elem::ONE))
                } else {
                    Ok((1, Elem::ONE))
                }
            }
            Some('g') => {
                self.pos += 1;
                if self.peek() == Some('^') {
                    self.pos += 1;
                    let neg = if self.peek() == Some('-') {
                        self.pos += 1;
                        true
                    } else {
                        false
                    };
                    let k = self.integer()?;
                    let k = i64::try_from(k).map_err(|_| Error::Syntax {
                        pos: self.pos,
                        msg: "exponent too large".into(),
                    })?;
                    let g = self.field.generator();
                    Ok((0, self.field.pow_signed(g, if neg { -k } else { k })?))
                } else {
                    Ok((0, self.field.generator()))
                }
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                let mut r = 0u64;
                let p = self.field.p();
                while let Some(d) = self.chars.get(self.pos).and_then(|c| c.to_digit(10)) {
                    r = (r * 10 + d as u64) % p;
                    self.pos += 1;
                }
                debug_assert!(self.pos > start);
                Ok((0, self.field.from_int(r)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                self.pos += 1;
                if let Some(next) = self.chars.get(self.pos) {
                    if next.is_ascii_alphanumeric() {
                        let at = self.pos;
                        return self.err(at, "parameter names are single letters");
                    }
                }
                match self.params.get(&c.to_string()) {
                    Some(&v) => Ok((0, v)),
                    None => Err(Error::UnboundParameter(c.to_string())),
                }
            }
            c => {
                let at = if c.is_some() { self.pos } else { at.max(self.pos) };
                self.err(at, format!("expected a term, found {}", Self::describe(c)))
            }
        }
    }

    fn integer(&mut self) -> Result<u64> {
        let c = self.peek();
        let start = self.pos;
        let mut v: u64 = 0;
        while let Some(d) = self.chars.get(self.pos).and_then(|c| c.to_digit(10)) {
            v = match v.checked_mul(10).and_then(|v| v.checked_add(d as u64)) {
                Some(v) => v,
                None => return self.err(start, "integer too large"),
            };
            self.pos += 1;
        }
        if self.pos == start {
            return self.err(start, format!("expected an integer, found {}", Self::describe(c)));
        }
        Ok(v)
    }
}
