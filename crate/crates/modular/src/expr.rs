//! Parser for formulas written the way they are typeset: factored products,
//! implicit multiplication, `^` with optional braces, `{}` as grouping, and
//! the en dash as a minus sign.

use std::fmt;

use num_bigint::BigInt;
use qab_arith::Rational;

use crate::ratfunc::RatFunc;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

/// What a formula can be evaluated into.
pub trait Algebra: Clone {
    fn constant(c: Rational) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    /// `None` when the divisor is zero or division is not supported.
    fn div(&self, o: &Self) -> Option<Self>;

    fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(Rational::from_integer(1.into()));
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

impl Algebra for RatFunc {
    fn constant(c: Rational) -> Self {
        RatFunc::constant(c)
    }
    fn add(&self, o: &Self) -> Self {
        RatFunc::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        RatFunc::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        RatFunc::mul(self, o)
    }
    fn div(&self, o: &Self) -> Option<Self> {
        RatFunc::div(self, o)
    }
    fn pow(&self, e: u32) -> Self {
        RatFunc::pow(self, e)
    }
}

/// Polynomials in `y` with coefficients in `Q(h)`, lowest power first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YPoly(pub Vec<RatFunc>);

impl YPoly {
    fn trim(mut v: Vec<RatFunc>) -> Self {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        YPoly(v)
    }

    pub fn y() -> Self {
        YPoly(vec![RatFunc::zero(), RatFunc::constant(Rational::from_integer(1.into()))])
    }

    pub fn h() -> Self {
        YPoly(vec![RatFunc::var()])
    }

    pub fn coeff(&self, i: usize) -> RatFunc {
        self.0.get(i).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn y_degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }
}

impl Algebra for YPoly {
    fn constant(c: Rational) -> Self {
        Self::trim(vec![RatFunc::constant(c)])
    }
    fn add(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        Self::trim((0..n).map(|i| self.coeff(i).add(&o.coeff(i))).collect())
    }
    fn sub(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        Self::trim((0..n).map(|i| self.coeff(i).sub(&o.coeff(i))).collect())
    }
    fn mul(&self, o: &Self) -> Self {
        if self.0.is_empty() || o.0.is_empty() {
            return YPoly(Vec::new());
        }
        let mut out = vec![RatFunc::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::trim(out)
    }
    /// Only division by a nonzero element of `Q(h)`.
    fn div(&self, o: &Self) -> Option<Self> {
        if o.0.len() != 1 {
            return None;
        }
        let d = &o.0[0];
        Some(Self::trim(self.0.iter().map(|c| c.div(d)).collect::<Option<Vec<_>>>()?))
    }
}

/// Evaluates `text`, resolving single-letter variables through `var`.
pub fn parse_with<A: Algebra>(text: &str, var: &dyn Fn(char) -> Option<A>) -> Result<A, ParseError> {
    let normalized: Vec<char> = text
        .chars()
        .map(|c| match c {
            '\u{2013}' | '\u{2212}' | '\u{2014}' => '-',
            '\u{00b7}' | '\u{22c5}' => '*',
            c => c,
        })
        .filter(|c| !c.is_whitespace())
        .collect();
    let mut p = Parser { s: &normalized, pos: 0, var };
    let value = p.expr()?;
    if p.pos != normalized.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(value)
}

/// A rational function of `h`; `x` is read as `h` and `z` as 1, matching
/// the affine chart of a plane model.
pub fn parse_ratfunc(text: &str) -> Result<RatFunc, ParseError> {
    parse_with(text, &|c| match c {
        'h' | 'x' => Some(RatFunc::var()),
        'z' => Some(RatFunc::constant(Rational::from_integer(1.into()))),
        _ => None,
    })
}

/// A polynomial in `y` over `Q(h)`, with the same reading of `x` and `z`.
pub fn parse_ypoly(text: &str) -> Result<YPoly, ParseError> {
    parse_with(text, &|c| match c {
        'h' | 'x' => Some(YPoly::h()),
        'y' => Some(YPoly::y()),
        'z' => Some(YPoly::constant(Rational::from_integer(1.into()))),
        _ => None,
    })
}

struct Parser<'a, A> {
    s: &'a [char],
    pos: usize,
    var: &'a dyn Fn(char) -> Option<A>,
}

impl<A: Algebra> Parser<'_, A> {
    fn err(&self, message: &str) -> ParseError {
        ParseError { position: self.pos, message: message.into() }
    }

    fn peek(&self) -> Option<char> {
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<A, ParseError> {
        let negate = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = A::constant(Rational::from_integer(0.into())).sub(&acc);
        }
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<A, ParseError> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.power()?);
            } else if self.eat('/') {
                let d = self.power()?;
                acc = acc.div(&d).ok_or_else(|| self.err("division by zero or by a non-scalar"))?;
            } else if self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == '(' || c == '{') {
                acc = acc.mul(&self.power()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<A, ParseError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let close = if self.eat('{') {
            Some('}')
        } else if self.eat('(') {
            Some(')')
        } else {
            None
        };
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let digits: String = self.s[start..self.pos].iter().collect();
        let e: u32 = digits.parse().map_err(|_| self.err("expected an exponent"))?;
        if let Some(c) = close {
            if !self.eat(c) {
                return Err(self.err("unclosed exponent"));
            }
        }
        Ok(base.pow(e))
    }

    fn atom(&mut self) -> Result<A, ParseError> {
        match self.peek() {
            Some('(') | Some('{') => {
                let close = if self.eat('(') { ')' } else { self.pos += 1; '}' };
                let inner = self.expr()?;
                if !self.eat(close) {
                    return Err(self.err("unbalanced brackets"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let digits: String = self.s[start..self.pos].iter().collect();
                let n: BigInt = digits.parse().expect("digits");
                Ok(A::constant(Rational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let v = (self.var)(c).ok_or_else(|| self.err(&format!("unknown variable {c}")))?;
                self.pos += 1;
                Ok(v)
            }
            _ => Err(self.err("expected a number, variable or bracket")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use qab_arith::{rat, UniPoly};

    #[test]
    fn typeset_forms() {
        let f = parse_ratfunc("(h^2+5h+13)(h^4+7h^3+20h^2+19h+1)^3/h").unwrap();
        assert_eq!(f.eval(&rat(1)), Some(rat(19 * 48 * 48 * 48)));
        let a = parse_ratfunc("h^{12} - 8h^9 - 8h^3 \u{2013} 8").unwrap();
        let b = parse_ratfunc("h^12-8h^9-8h^3-8").unwrap();
        assert_eq!(a, b);
        assert_eq!(parse_ratfunc("{h+1}^{2}").unwrap(), parse_ratfunc("h^2+2h+1").unwrap());
        assert_eq!(parse_ratfunc("-2h").unwrap(), RatFunc::poly(UniPoly::from_ints(&[0, -2])));
        assert_eq!(parse_ratfunc("x^2z - 2xz^2 + z^3").unwrap(), parse_ratfunc("(h-1)^2").unwrap());
    }

    #[test]
    fn y_polynomials() {
        let p = parse_ypoly("36yz^3").unwrap();
        assert_eq!(p.y_degree(), Some(1));
        assert_eq!(p.coeff(1), RatFunc::constant(rat(36)));
        assert!(parse_ypoly("y/(y+1)").is_err());
    }

    #[test]
    fn errors_are_located() {
        assert_eq!(parse_ratfunc("h+").unwrap_err().position, 2);
        assert!(parse_ratfunc("(h+1").is_err());
        assert!(parse_ratfunc("h^").is_err());
        assert!(parse_ratfunc("q").is_err());
        assert!(parse_ratfunc("1/(h-h)").is_err());
    }
}
