//! Textual term language.
//!
//! Grammar:
//! ```text
//! expr    := term (('+'|'-') term)*
//! term    := rational? factor ('*' factor)*
//! factor  := ident | '(' expr ')' | builtin '(' args ')'
//! ```
//! Builtins: `assoc, comm, circ, lpow`. Identifiers: `x, y, z` or `x1..xk`.
//! `*` is left-associative; bracket explicitly when the bracketing matters.

use num::{BigInt, BigRational, One};

use crate::error::{Error, Result};
use crate::poly::{associator, circ, commutator, format_rational, lpow, FreePoly};

struct Parser<'a> {
    input: &'a [u8],
    pos: usize,
    rank: usize,
}

pub fn parse(text: &str, rank: usize) -> Result<FreePoly> {
    let mut p = Parser {
        input: text.as_bytes(),
        pos: 0,
        rank,
    };
    p.skip_ws();
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.input.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.input.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b) if b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, b: u8) -> Result<()> {
        if self.eat(b) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", b as char)))
        }
    }

    fn expr(&mut self) -> Result<FreePoly> {
        self.skip_ws();
        // Leading sign on the first term is accepted.
        let mut negate = false;
        if self.eat(b'-') {
            negate = true;
        } else {
            self.eat(b'+');
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.add(&t);
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.sub(&t);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<FreePoly> {
        self.skip_ws();
        let coeff = if matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            let c = self.rational()?;
            self.skip_ws();
            // Either "3*x" or "3 x"; a bare rational is allowed only for 0.
            if self.eat(b'*') {
                self.skip_ws();
            } else if !matches!(self.peek(), Some(b) if b == b'(' || b.is_ascii_alphabetic()) {
                if c == BigRational::from_integer(BigInt::from(0)) {
                    return Ok(FreePoly::zero());
                }
                return Err(self.err("constant term: the free algebra has no unit"));
            }
            Some(c)
        } else {
            None
        };
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            if self.eat(b'*') {
                let f = self.factor()?;
                acc = acc.mul(&f);
            } else {
                break;
            }
        }
        if let Some(c) = coeff {
            if !c.is_one() {
                acc = acc.scale(&c);
            }
        }
        Ok(acc)
    }

    fn rational(&mut self) -> Result<BigRational> {
        let numer = self.integer()?;
        self.skip_ws();
        if self.eat(b'/') {
            self.skip_ws();
            let start = self.pos;
            let denom = self.integer()?;
            if denom == BigInt::from(0) {
                self.pos = start;
                return Err(self.err("zero denominator"));
            }
            Ok(BigRational::new(numer, denom))
        } else {
            Ok(BigRational::from_integer(numer))
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected a number"));
        }
        let s = std::str::from_utf8(&self.input[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn natural(&mut self) -> Result<u32> {
        let n = self.integer()?;
        u32::try_from(n).map_err(|_| self.err("exponent out of range"))
    }

    fn ident(&mut self) -> Result<String> {
        let start = self.pos;
        while matches!(self.peek(), Some(b) if b.is_ascii_alphanumeric()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected an identifier"));
        }
        Ok(std::str::from_utf8(&self.input[start..self.pos])
            .unwrap()
            .to_string())
    }

    fn factor(&mut self) -> Result<FreePoly> {
        self.skip_ws();
        if self.eat(b'(') {
            let e = self.expr()?;
            self.skip_ws();
            self.expect(b')')?;
            return Ok(e);
        }
        let id_start = self.pos;
        let id = self.ident()?;
        self.skip_ws();
        match id.as_str() {
            "assoc" => {
                let args = self.args(3)?;
                Ok(associator(&args[0], &args[1], &args[2]))
            }
            "comm" => {
                let args = self.args(2)?;
                Ok(commutator(&args[0], &args[1]))
            }
            "circ" => {
                let args = self.args(2)?;
                Ok(circ(&args[0], &args[1]))
            }
            "lpow" => {
                self.expect(b'(')?;
                let base = self.expr()?;
                self.skip_ws();
                self.expect(b',')?;
                self.skip_ws();
                let n_start = self.pos;
                let n = self.natural()?;
                self.skip_ws();
                self.expect(b')')?;
                lpow(&base, n).map_err(|_| Error::Parse {
                    pos: n_start,
                    msg: "lpow requires a positive exponent".to_string(),
                })
            }
            _ => {
                let index = self.generator_index(&id).ok_or(Error::Parse {
                    pos: id_start,
                    msg: format!("unknown generator '{id}'"),
                })?;
                if index >= self.rank {
                    return Err(Error::Parse {
                        pos: id_start,
                        msg: format!("generator '{id}' exceeds rank {}", self.rank),
                    });
                }
                Ok(FreePoly::generator(index))
            }
        }
    }

    fn generator_index(&self, id: &str) -> Option<usize> {
        match id {
            "x" => Some(0),
            "y" => Some(1),
            "z" => Some(2),
            _ => {
                let rest = id.strip_prefix('x')?;
                let k: usize = rest.parse().ok()?;
                if k >= 1 {
                    Some(k - 1)
                } else {
                    None
                }
            }
        }
    }

    fn args(&mut self, n: usize) -> Result<Vec<FreePoly>> {
        self.expect(b'(')?;
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            if i > 0 {
                self.skip_ws();
                self.expect(b',')?;
            }
            out.push(self.expr()?);
        }
        self.skip_ws();
        self.expect(b')')?;
        Ok(out)
    }
}

/// Deterministic textual form; `parse(format(p), rank) == p`.
pub fn format(p: &FreePoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (t, c)) in p.terms().enumerate() {
        let neg = c < &BigRational::from_integer(BigInt::from(0));
        let abs = if neg { -c } else { c.clone() };
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else if neg {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        if !abs.is_one() {
            out.push_str(&format_rational(&abs));
            out.push('*');
        }
        out.push_str(&t.to_string());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{lpow, rat, ratio};

    fn x() -> FreePoly {
        FreePoly::generator(0)
    }
    fn y() -> FreePoly {
        FreePoly::generator(1)
    }
    fn z() -> FreePoly {
        FreePoly::generator(2)
    }

    #[test]
    fn parse_associator_spelled_out() {
        let p = parse("(x*y)*z - x*(y*z)", 3).unwrap();
        assert_eq!(p, associator(&x(), &y(), &z()));
    }

    #[test]
    fn parse_assoc_builtin() {
        let p = parse("assoc(x,x,y)", 2).unwrap();
        assert_eq!(p, associator(&x(), &x(), &y()));
    }

    #[test]
    fn parse_lpow_comm() {
        let p = parse("lpow(comm(x,y),4)", 2).unwrap();
        let expected = lpow(&commutator(&x(), &y()), 4).unwrap();
        assert_eq!(p, expected);
        assert_eq!(p.multidegree(2).unwrap().total(), 8);
    }

    #[test]
    fn star_is_left_associative() {
        assert_eq!(parse("x*y*z", 3).unwrap(), x().mul(&y()).mul(&z()));
    }

    #[test]
    fn rational_coefficients() {
        let p = parse("3/2*x - 2*y", 2).unwrap();
        assert_eq!(p, x().scale(&ratio(3, 2)).sub(&y().scale(&rat(2))));
    }

    #[test]
    fn numbered_generators() {
        let p = parse("x1*x4", 4).unwrap();
        assert_eq!(p, x().mul(&FreePoly::generator(3)));
    }

    #[test]
    fn parse_errors_carry_position() {
        match parse("x + w", 2) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(parse("x4", 3).is_err());
        assert!(parse("lpow(x,0)", 1).is_err());
        assert!(parse("x + ", 1).is_err());
    }

    #[test]
    fn format_round_trip() {
        let p = parse("3/2*assoc(x,y,z) - comm(x,z) + 7*lpow(x,3)", 3).unwrap();
        let q = parse(&format(&p), 3).unwrap();
        assert_eq!(p, q);
        assert_eq!(format(&FreePoly::zero()), "0");
        assert_eq!(parse("0", 1).unwrap(), FreePoly::zero());
    }
}
