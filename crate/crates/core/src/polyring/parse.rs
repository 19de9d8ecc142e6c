//! Text syntax: `x^3*y - 2/3*z^2*t`, with parentheses and integer powers.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::algebra::{Rational, RationalField};

use super::{PolyError, Polynomial, VariableContext};

type P = Polynomial<RationalField>;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ctx: Arc<VariableContext>,
}

pub fn parse_polynomial(text: &str, ctx: &Arc<VariableContext>) -> Result<P, PolyError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, ctx: ctx.clone() };
    p.skip_ws();
    if p.pos == p.src.len() {
        return Err(p.error("empty expression"));
    }
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(out)
}

impl Parser<'_> {
    fn error(&self, message: &str) -> PolyError {
        PolyError::Parse { column: self.pos + 1, message: message.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<P, PolyError> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                b'-' => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<P, PolyError> {
        let mut acc = self.unary()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc.mul(&self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<P, PolyError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<P, PolyError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.integer()?;
            let e: u32 = e.try_into().map_err(|_| self.error("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt, PolyError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse"))
    }

    fn atom(&mut self) -> Result<P, PolyError> {
        let c = self.peek().ok_or_else(|| self.error("unexpected end of input"))?;
        if c == b'(' {
            self.pos += 1;
            let inner = self.expr()?;
            if self.peek() != Some(b')') {
                return Err(self.error("expected ')'"));
            }
            self.pos += 1;
            return Ok(inner);
        }
        if c.is_ascii_digit() {
            let num = self.integer()?;
            let mut den = BigInt::from(1);
            // a slash directly after an integer literal makes a rational literal
            if self.src.get(self.pos) == Some(&b'/') {
                self.pos += 1;
                den = self.integer()?;
                if den == BigInt::from(0) {
                    return Err(self.error("zero denominator"));
                }
            }
            return Ok(P::constant(self.ctx.clone(), RationalField, Rational::new(num, den)));
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            let start = self.pos;
            while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
                self.pos += 1;
            }
            let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
            let idx = self.ctx.index_of(name).ok_or_else(|| PolyError::Parse {
                column: start + 1,
                message: format!("unknown variable {name:?}"),
            })?;
            return Ok(P::var(self.ctx.clone(), RationalField, idx));
        }
        Err(self.error(&format!("unexpected character {:?}", c as char)))
    }
}
