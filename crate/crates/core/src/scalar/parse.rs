//! Recursive-descent parser for scalar literals.
//!
//! Grammar: `expr = term (('+'|'-') term)*`, `term = unary (('*'|'/') unary)*`,
//! `unary = '-' unary | power`, `power = atom ('^' digits)?`,
//! `atom = digits | 't' | '(' expr ')'`.

use num_bigint::BigInt;

use super::{Field, Scalar};
use crate::error::{Error, Result};

struct Parser<'a> {
    field: Field,
    chars: Vec<char>,
    pos: usize,
    text: &'a str,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            line: 0,
            column: self.pos + 1,
            message: format!("{msg} in scalar `{}`", self.text),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Scalar> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                let rhs = self.term()?;
                acc = &acc + &rhs;
            } else if self.eat('-') {
                let rhs = self.term()?;
                acc = &acc - &rhs;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Scalar> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                let rhs = self.unary()?;
                acc = &acc * &rhs;
            } else if self.eat('/') {
                let at = self.pos;
                let rhs = self.unary()?;
                acc = acc.try_div(&rhs).map_err(|_| {
                    let mut e = self.err("division by zero");
                    if let Error::Parse { column, .. } = &mut e {
                        *column = at + 1;
                    }
                    e
                })?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Scalar> {
        if self.eat('-') {
            Ok(-self.unary()?)
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Scalar> {
        let base = self.atom()?;
        if self.eat('^') {
            self.skip_ws();
            let digits = self.digits().ok_or_else(|| self.err("expected exponent"))?;
            let exp: u32 = digits.parse().map_err(|_| self.err("exponent too large"))?;
            Ok(base.pow(exp))
        } else {
            Ok(base)
        }
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }

    fn atom(&mut self) -> Result<Scalar> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(v)
            }
            Some('t') => {
                self.pos += 1;
                self.field.var().map_err(|_| self.err("`t` only allowed over ratfun"))
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits().unwrap();
                let n: BigInt = d.parse().map_err(|_| self.err("bad integer"))?;
                Ok(self.field.from_bigint(&n))
            }
            _ => Err(self.err("expected number, `t` or `(`")),
        }
    }
}

pub(super) fn parse_scalar(field: Field, text: &str) -> Result<Scalar> {
    let mut p = Parser {
        field,
        chars: text.chars().collect(),
        pos: 0,
        text,
    };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.chars.len() {
        return Err(p.err("trailing characters"));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_powers() {
        let f = Field::Rational;
        assert_eq!(f.parse("-3/6").unwrap(), f.from_ratio(-1, 2).unwrap());
        assert_eq!(f.parse("2^10").unwrap(), f.from_int(1024));
        assert_eq!(f.parse("(1+2)*3").unwrap(), f.from_int(9));
    }

    #[test]
    fn prime_field_reduces() {
        let f = Field::prime(7).unwrap();
        assert_eq!(f.parse("1/2").unwrap(), f.from_int(4));
        assert_eq!(f.parse("-1").unwrap(), f.from_int(6));
    }

    #[test]
    fn rejects_garbage() {
        assert!(matches!(Field::Rational.parse("t"), Err(Error::Parse { .. })));
        assert!(matches!(Field::Rational.parse("1/0"), Err(Error::Parse { .. })));
        assert!(matches!(Field::Rational.parse("2)"), Err(Error::Parse { .. })));
    }
}
