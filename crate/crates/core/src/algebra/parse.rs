//! Recursive-descent reader for rational expressions over `x1..`, `y1..`.

use std::fmt;

use num_bigint::BigInt;

use super::{Poly, RationalFunction, Var};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at {}: {}", self.position, self.message)
    }
}

impl From<ParseError> for Error {
    fn from(e: ParseError) -> Self {
        Error::Domain(format!("cannot parse expression {e}"))
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

type PResult<T> = std::result::Result<T, ParseError>;

impl Parser<'_> {
    fn fail<T>(&self, message: impl Into<String>) -> PResult<T> {
        Err(ParseError { position: self.pos, message: message.into() })
    }

    fn peek(&mut self) -> Option<u8> {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> PResult<&str> {
        self.peek();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.fail("expected digits");
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii"))
    }

    fn expr(&mut self) -> PResult<RationalFunction> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> PResult<RationalFunction> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.unary()?;
            } else if self.eat(b'/') {
                let at = self.pos;
                let d = self.unary()?;
                if d.is_zero() {
                    return Err(ParseError { position: at, message: "division by zero".into() });
                }
                acc = &acc / &d;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> PResult<RationalFunction> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let paren = self.eat(b'(');
        let neg = self.eat(b'-');
        let k: u32 = match self.digits()?.parse() {
            Ok(k) => k,
            Err(_) => return self.fail("exponent too large"),
        };
        if paren && !self.eat(b')') {
            return self.fail("expected ')'");
        }
        let p = base.pow(k);
        if neg {
            p.recip().or_else(|_| self.fail("zero to a negative power"))
        } else {
            Ok(p)
        }
    }

    fn atom(&mut self) -> PResult<RationalFunction> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return self.fail("expected ')'");
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n: BigInt = self.digits()?.parse().expect("digits");
                Ok(Poly::constant(n).into())
            }
            Some(c @ (b'x' | b'y')) => {
                self.pos += 1;
                let k: u16 = match self.digits()?.parse() {
                    Ok(k) if k >= 1 => k,
                    _ => return self.fail("variable indices start at 1"),
                };
                let v = if c == b'x' { Var::X(k - 1) } else { Var::Y(k - 1) };
                Ok(RationalFunction::var(v))
            }
            Some(_) => self.fail("unexpected character"),
            None => self.fail("unexpected end of input"),
        }
    }
}

pub(super) fn parse(s: &str) -> Result<RationalFunction> {
    let mut p = Parser { src: s.as_bytes(), pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(p.fail::<()>("trailing input").unwrap_err().into());
    }
    Ok(e)
}

impl std::str::FromStr for Poly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Poly> {
        let r = parse(s)?;
        if !r.denominator().is_one() {
            return Err(Error::Domain(format!("{s} is not a polynomial")));
        }
        Ok(r.numerator().clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_display() {
        for s in ["x2^2 + y1*y2", "-x1 + 3", "(x1 + x2)/(x1*x2)", "x1^2/y1^3", "y1^2 + 2*y1*y2 + y2^2", "0"] {
            let r = parse(s).unwrap();
            assert_eq!(parse(&r.to_string()).unwrap(), r, "{s}");
        }
    }

    #[test]
    fn precedence() {
        assert_eq!(parse("2*x1^2").unwrap(), parse("2*(x1*x1)").unwrap());
        assert_eq!(parse("-x1^2").unwrap(), -parse("x1^2").unwrap());
        assert_eq!(parse("x1/x2*x2").unwrap(), parse("x1").unwrap());
    }

    #[test]
    fn errors() {
        for s in ["", "x0", "x1 +", "(x1", "x1 ) ", "1/0", "z1", "x1^-"] {
            assert!(parse(s).is_err(), "{s}");
        }
        assert!("x1/x2".parse::<Poly>().is_err());
        assert_eq!("x1*x1".parse::<Poly>().unwrap(), Poly::x(0).pow(2));
    }
}
