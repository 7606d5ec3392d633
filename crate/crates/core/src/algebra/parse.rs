//! Text grammar for polynomials:
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary ('*' unary)*
//! unary := ('+' | '-') unary | power
//! power := atom ('^' digits)?
//! atom  := digits ('/' digits)? | 'x' | 'm' | '(' expr ')'
//! ```
//!
//! `x` and `m` name the same indeterminate so Hilbert-type polynomials can be
//! written in `m`. Whitespace is insignificant. `/` only appears inside
//! rational literals.

use std::iter::Peekable;
use std::str::Chars;

use num_bigint::BigInt;

use super::poly::RationalPoly;
use super::rational::Rational;
use super::AlgebraError;

pub fn parse_poly(text: &str) -> Result<RationalPoly, AlgebraError> {
    let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut p = Parser {
        src: text,
        it: cleaned.chars().peekable(),
    };
    if p.it.peek().is_none() {
        return Err(p.err("empty input"));
    }
    let out = p.expr()?;
    if let Some(c) = p.it.peek().copied() {
        return Err(p.err(&format!("unexpected character '{c}'")));
    }
    Ok(out)
}

impl std::str::FromStr for RationalPoly {
    type Err = AlgebraError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_poly(s)
    }
}

struct Parser<'a> {
    src: &'a str,
    it: Peekable<Chars<'a>>,
}

impl Parser<'_> {
    fn err(&self, reason: &str) -> AlgebraError {
        AlgebraError::Parse {
            input: self.src.to_string(),
            reason: reason.to_string(),
        }
    }

    fn expr(&mut self) -> Result<RationalPoly, AlgebraError> {
        let mut acc = self.term()?;
        while let Some(&c) = self.it.peek() {
            match c {
                '+' => {
                    self.it.next();
                    acc = &acc + &self.term()?;
                }
                '-' => {
                    self.it.next();
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RationalPoly, AlgebraError> {
        let mut acc = self.unary()?;
        while self.it.peek() == Some(&'*') {
            self.it.next();
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RationalPoly, AlgebraError> {
        match self.it.peek() {
            Some('-') => {
                self.it.next();
                Ok(-self.unary()?)
            }
            Some('+') => {
                self.it.next();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RationalPoly, AlgebraError> {
        let base = self.atom()?;
        if self.it.peek() == Some(&'^') {
            self.it.next();
            let digits = self.digits().ok_or_else(|| self.err("exponent must be a nonnegative integer"))?;
            let e: u32 = digits
                .parse()
                .map_err(|_| self.err("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RationalPoly, AlgebraError> {
        match self.it.peek().copied() {
            Some('x') | Some('m') => {
                self.it.next();
                Ok(RationalPoly::x())
            }
            Some('(') => {
                self.it.next();
                let inner = self.expr()?;
                if self.it.next() != Some(')') {
                    return Err(self.err("unbalanced parentheses"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num: BigInt = self.digits().unwrap().parse().unwrap();
                let den: BigInt = if self.it.peek() == Some(&'/') {
                    self.it.next();
                    let d = self.digits().ok_or_else(|| self.err("expected denominator digits"))?;
                    d.parse().unwrap()
                } else {
                    BigInt::from(1)
                };
                if den == BigInt::from(0) {
                    return Err(self.err("zero denominator"));
                }
                Ok(RationalPoly::constant(Rational::new(num, den)))
            }
            Some(c) => Err(self.err(&format!("unexpected character '{c}'"))),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn digits(&mut self) -> Option<String> {
        let mut s = String::new();
        while let Some(&c) = self.it.peek() {
            if c.is_ascii_digit() {
                s.push(c);
                self.it.next();
            } else {
                break;
            }
        }
        (!s.is_empty()).then_some(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{rat, ratio};

    #[test]
    fn grammar_example() {
        let p = parse_poly("3/2*x^2 - x + 7").unwrap();
        assert_eq!(p, RationalPoly::new(vec![rat(7), rat(-1), ratio(3, 2)]));
    }

    #[test]
    fn parentheses_and_unary() {
        let p = parse_poly("-(x - 1)^2 * 2").unwrap();
        assert_eq!(p, RationalPoly::from_i64s(&[-2, 4, -2]));
        assert_eq!(parse_poly(" m + 1 ").unwrap(), RationalPoly::from_i64s(&[1, 1]));
        assert_eq!(parse_poly("0").unwrap(), RationalPoly::zero());
    }

    #[test]
    fn rejects_malformed() {
        for bad in ["", "x^", "x^-1", "(x", "2/0", "y", "x/2", "3 x"] {
            assert!(parse_poly(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn display_round_trips() {
        for s in ["3/2*x^2 - x + 7", "-x^3 + 1/5", "x", "0"] {
            let p = parse_poly(s).unwrap();
            assert_eq!(parse_poly(&p.to_string()).unwrap(), p);
        }
    }
}
