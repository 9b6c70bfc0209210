//! Parsing of univariate polynomial literals such as `3*x^4 + 12*x - 1/2`.

use num_traits::Zero;

use crate::poly::UniPoly;
use crate::rational::{parse_rational, Rational};
use crate::ArithError;

pub fn parse_poly(text: &str, var: char) -> Result<UniPoly, ArithError> {
    let err = || ArithError::Parse(text.to_string());
    let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if cleaned.is_empty() {
        return Err(err());
    }
    // Split into signed terms at top-level '+' / '-' not following '^'.
    let mut terms: Vec<String> = Vec::new();
    let mut cur = String::new();
    for (i, ch) in cleaned.chars().enumerate() {
        let prev = if i == 0 { None } else { cleaned.chars().nth(i - 1) };
        if (ch == '+' || ch == '-') && i > 0 && prev != Some('^') && prev != Some('*') && prev != Some('/') {
            terms.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
    }
    terms.push(cur);
    let mut coeffs: Vec<Rational> = Vec::new();
    for term in terms {
        let (negative, body) = match term.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, term.strip_prefix('+').unwrap_or(&term).to_string()),
        };
        if body.is_empty() {
            return Err(err());
        }
        let (coeff, power) = match body.find(var) {
            None => (parse_rational(&body).map_err(|_| err())?, 0usize),
            Some(pos) => {
                let before = body[..pos].trim_end_matches('*');
                let after = &body[pos + var.len_utf8()..];
                let c = if before.is_empty() { Rational::from_integer(1.into()) } else { parse_rational(before).map_err(|_| err())? };
                let e = if after.is_empty() {
                    1
                } else {
                    after.strip_prefix('^').ok_or_else(err)?.parse::<usize>().map_err(|_| err())?
                };
                (c, e)
            }
        };
        if coeffs.len() <= power {
            coeffs.resize(power + 1, Rational::zero());
        }
        coeffs[power] += if negative { -coeff } else { coeff };
    }
    Ok(UniPoly::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_display() {
        for s in ["3*x^4 + 12*x", "-x^2 - 1", "x^3 - 1/2*x + 7", "0"] {
            assert_eq!(parse_poly(s, 'x').unwrap().to_string(), s);
        }
        assert!(parse_poly("x^", 'x').is_err());
        assert!(parse_poly("2*y", 'x').is_err());
    }
}
