//! Rational scalars.
//!
//! `Rational` is an arbitrary-precision fraction kept in lowest terms with a
//! positive denominator. Besides the arithmetic that comes with the type this
//! module provides exact square / power tests and the literal syntax used by
//! the command line and the corpus files: plain `p/q` and the factored form
//! printed in curve tables, e.g. `-2^12*31^3/11^5` or `5^3*1637^3/(2^18*7)`.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::ArithError;

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn from_bigint(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// Exact integer `n`-th root of a non-negative integer, if it exists.
pub fn exact_root_int(value: &BigInt, n: u32) -> Option<BigInt> {
    if value.is_negative() {
        if n % 2 == 1 {
            return exact_root_int(&-value, n).map(|r| -r);
        }
        return None;
    }
    let r = value.nth_root(n);
    if num_traits::pow(r.clone(), n as usize) == *value {
        Some(r)
    } else {
        None
    }
}

/// Exact rational `n`-th root, if it exists.
pub fn exact_root(q: &Rational, n: u32) -> Option<Rational> {
    let num = exact_root_int(q.numer(), n)?;
    let den = exact_root_int(q.denom(), n)?;
    Some(Rational::new(num, den))
}

/// True iff `q` is the square of a rational number. Zero counts as a square.
pub fn is_square(q: &Rational) -> bool {
    exact_root(q, 2).is_some()
}

pub fn sqrt_exact(q: &Rational) -> Option<Rational> {
    exact_root(q, 2)
}

/// True iff `q` is a nonzero rational square.
pub fn is_nonzero_square(q: &Rational) -> bool {
    !q.is_zero() && is_square(q)
}

pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses a rational literal.
///
/// Accepted forms: `7`, `-3/4`, `-2^12*31^3/11^5`, `2161^3/(2^10*3^5*11)`,
/// `- 1 / 2^5 * 19` (everything after the slash is the denominator).
/// Whitespace is ignored and `·` is accepted as a multiplication sign.
pub fn parse_rational(text: &str) -> Result<Rational, ArithError> {
    let cleaned: String = text
        .chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| if c == '·' { '*' } else { c })
        .collect();
    let err = || ArithError::Parse(text.to_string());
    if cleaned.is_empty() {
        return Err(err());
    }
    let (negative, body) = match cleaned.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, cleaned.strip_prefix('+').unwrap_or(&cleaned)),
    };
    let mut parts = body.splitn(2, '/');
    let num_text = parts.next().ok_or_else(err)?;
    let num = parse_product(num_text).ok_or_else(err)?;
    let den = match parts.next() {
        Some(d) => parse_product(d).ok_or_else(err)?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(err());
    }
    let value = Rational::new(num, den);
    Ok(if negative { -value } else { value })
}

fn parse_product(text: &str) -> Option<BigInt> {
    let inner = match text.strip_prefix('(') {
        Some(rest) => rest.strip_suffix(')')?,
        None => text,
    };
    if inner.is_empty() {
        return None;
    }
    let mut acc = BigInt::one();
    for factor in inner.split('*') {
        let factor = factor.trim_start_matches('(').trim_end_matches(')');
        let mut pieces = factor.splitn(2, '^');
        let base_text = pieces.next()?;
        let (neg, digits) = match base_text.strip_prefix('-') {
            Some(d) => (true, d),
            None => (false, base_text),
        };
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let mut base: BigInt = digits.parse().ok()?;
        if neg {
            base = -base;
        }
        let exp: usize = match pieces.next() {
            Some(e) => {
                let e = e.trim_start_matches('{').trim_end_matches('}');
                e.parse().ok()?
            }
            None => 1,
        };
        acc *= num_traits::pow(base, exp);
    }
    Some(acc)
}

pub fn sign_of(q: &Rational) -> Sign {
    q.numer().sign()
}

/// Integer power with a possibly negative exponent.
pub fn powi(q: &Rational, e: i64) -> Rational {
    if e >= 0 {
        num_traits::pow(q.clone(), e as usize)
    } else {
        num_traits::pow(q.recip(), (-e) as usize)
    }
}

/// Smallest `k >= 1` with `k * q` integral.
pub fn denominator(q: &Rational) -> BigInt {
    q.denom().clone()
}

pub fn abs(q: &Rational) -> Rational {
    q.abs()
}
