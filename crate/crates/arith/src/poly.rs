//! Dense univariate polynomials over Q.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::{rat, Rational};
use crate::zpoly::ZPoly;
use crate::ArithError;

/// Coefficients are stored lowest degree first with no trailing zeros, so
/// the zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|c| rat(*c)).collect())
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> Self {
        Self::new(coeffs.iter().map(|c| Rational::from_integer(c.clone())).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: Rational, degree: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs)
    }

    /// `x - r`.
    pub fn linear_root(r: &Rational) -> Self {
        Self::new(vec![-r.clone(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    /// Degree, with the zero polynomial reported as degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn checked_degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_coeff(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, at: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * at + c;
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        UniPoly { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let inv = self.leading_coeff().recip();
        self.scale(&inv)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i as i64))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self(inner(x))`.
    pub fn compose(&self, inner: &UniPoly) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &Self::constant(c.clone());
        }
        acc
    }

    /// `x^deg * self(1/x)`, the reversal with respect to `deg`.
    pub fn reverse(&self, deg: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); deg + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[deg - i] = c.clone();
        }
        Self::new(coeffs)
    }

    /// `self(c * x)`.
    pub fn scale_var(&self, c: &Rational) -> Self {
        let mut power = Rational::one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            coeffs.push(a * &power);
            power *= c;
        }
        Self::new(coeffs)
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        if self.coeffs.len() < divisor.coeffs.len() {
            return (Self::zero(), self.clone());
        }
        let dd = divisor.degree();
        let inv = divisor.leading_coeff().recip();
        let mut rem = self.coeffs.clone();
        let mut quo = vec![Rational::zero(); rem.len() - dd];
        for i in (0..quo.len()).rev() {
            let c = &rem[i + dd] * &inv;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] -= &c * d;
                }
            }
            quo[i] = c;
        }
        rem.truncate(dd);
        (Self::new(quo), Self::new(rem))
    }

    pub fn rem(&self, divisor: &UniPoly) -> UniPoly {
        self.div_rem(divisor).1
    }

    /// Quotient of an exact division, or `None` if the remainder is nonzero.
    pub fn exact_div(&self, divisor: &UniPoly) -> Option<UniPoly> {
        let (q, r) = self.div_rem(divisor);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    pub fn divides(&self, other: &UniPoly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.rem(self).is_zero()
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    ///
    /// Computed over Z with a primitive remainder sequence to keep
    /// coefficient growth in check, then normalized to be monic over Q.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        let (_, a) = self.primitive_integer();
        let (_, b) = other.primitive_integer();
        a.gcd(&b).to_unipoly().monic()
    }

    /// Extended gcd: `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &UniPoly) -> (UniPoly, UniPoly, UniPoly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.leading_coeff().recip();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Inverse of `self` modulo `modulus`, if they are coprime.
    pub fn inverse_mod(&self, modulus: &UniPoly) -> Option<UniPoly> {
        let (g, s, _) = self.rem(modulus).ext_gcd(modulus);
        if g.is_one() {
            Some(s.rem(modulus))
        } else {
            None
        }
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Writes `self = c * p` with `p` a primitive integer polynomial whose
    /// leading coefficient is positive. For the zero polynomial returns `(0, 0)`.
    pub fn primitive_integer(&self) -> (Rational, ZPoly) {
        if self.is_zero() {
            return (Rational::zero(), ZPoly::zero());
        }
        let mut lcm = BigInt::one();
        for c in &self.coeffs {
            lcm = lcm.lcm(c.denom());
        }
        let ints: Vec<BigInt> =
            self.coeffs.iter().map(|c| (c * Rational::from_integer(lcm.clone())).to_integer()).collect();
        let mut content = BigInt::zero();
        for c in &ints {
            content = content.gcd(c);
        }
        if ints.last().is_some_and(|c| c.is_negative()) {
            content = -content;
        }
        let prim: Vec<BigInt> = ints.iter().map(|c| c / &content).collect();
        (Rational::new(content, lcm), ZPoly::new(prim))
    }

    /// Squarefree decomposition (Yun): monic `a_i` with `self = lc * prod a_i^i`.
    /// Entries with trivial `a_i` are omitted.
    pub fn squarefree_decomposition(&self) -> Vec<(UniPoly, u32)> {
        let mut out = Vec::new();
        if self.degree() == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let mut a = f.gcd(&df);
        let mut b = f.exact_div(&a).expect("gcd divides");
        let mut c = df.exact_div(&a).expect("gcd divides");
        let mut d = &c - &b.derivative();
        let mut i = 1u32;
        loop {
            if b.is_one() {
                break;
            }
            a = b.gcd(&d);
            if !a.is_one() {
                out.push((a.clone(), i));
            }
            b = b.exact_div(&a).expect("gcd divides");
            c = d.exact_div(&a).expect("gcd divides");
            d = &c - &b.derivative();
            i += 1;
        }
        out
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == 0
    }

    /// Resultant of two univariate polynomials. `Res(f, 0) = 0`.
    pub fn resultant(&self, other: &UniPoly) -> Rational {
        if self.is_zero() || other.is_zero() {
            return Rational::zero();
        }
        let (cf, pf) = self.primitive_integer();
        let (cg, pg) = other.primitive_integer();
        let n = self.degree();
        let m = other.degree();
        let res = Rational::from_integer(pf.resultant(&pg));
        res * num_traits::pow(cf, m) * num_traits::pow(cg, n)
    }

    /// Discriminant `(-1)^{n(n-1)/2} Res(f, f') / lc(f)`.
    pub fn discriminant(&self) -> Rational {
        let n = self.degree();
        if n == 0 {
            return Rational::zero();
        }
        let r = self.resultant(&self.derivative()) / self.leading_coeff();
        if (n * (n - 1) / 2) % 2 == 1 {
            -r
        } else {
            r
        }
    }

    /// `self^e mod modulus` by repeated squaring.
    pub fn pow_mod(&self, mut e: u64, modulus: &UniPoly) -> UniPoly {
        let mut acc = Self::one().rem(modulus);
        let mut base = self.rem(modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = (&acc * &base).rem(modulus);
            }
            e >>= 1;
            if e > 0 {
                base = (&base * &base).rem(modulus);
            }
        }
        acc
    }

    /// `self(inner) mod modulus` by Horner's rule.
    pub fn compose_mod(&self, inner: &UniPoly, modulus: &UniPoly) -> UniPoly {
        let inner = inner.rem(modulus);
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = (&(&acc * &inner) + &Self::constant(c.clone())).rem(modulus);
        }
        acc
    }

    /// Total order used for deterministic output: degree first, then the
    /// coefficient sequence from the constant term up.
    pub fn canonical_cmp(&self, other: &UniPoly) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }

    /// Sum of the absolute values of the coefficients, a crude height.
    pub fn height(&self) -> Rational {
        self.coeffs.iter().map(|c| c.abs()).fold(Rational::zero(), |a, b| a + b)
    }

    pub fn parse(text: &str) -> Result<UniPoly, ArithError> {
        crate::parse::parse_poly(text, 'x')
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let mag = c.abs();
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { "-" } else { "+" })?;
            }
            first = false;
            let coeff_text = crate::rational::format_rational(&mag);
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{coeff_text}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{coeff_text}*x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{coeff_text}*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}

impl<'a> Add<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => out.push(a + b),
                (Some(a), None) => out.push(a.clone()),
                (None, Some(b)) => out.push(b.clone()),
                (None, None) => unreachable!(),
            }
        }
        UniPoly::new(out)
    }
}

impl<'a> Sub<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        self + &(-rhs)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        -&self
    }
}

impl<'a> Mul<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        // Multiply over Z after clearing denominators; much cheaper than
        // normalizing a fraction for every partial product.
        let (ca, za) = self.primitive_integer();
        let (cb, zb) = rhs.primitive_integer();
        let prod = &za * &zb;
        prod.to_unipoly().scale(&(ca * cb))
    }
}

impl Add for UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: UniPoly) -> UniPoly {
        &self + &rhs
    }
}

impl Sub for UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: UniPoly) -> UniPoly {
        &self - &rhs
    }
}

impl Mul for UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: UniPoly) -> UniPoly {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    #[test]
    fn gcd_shares_root() {
        assert_eq!(p(&[-1, 0, 1]).gcd(&p(&[-1, 1])), p(&[-1, 1]));
        assert_eq!(p(&[2, 4]).gcd(&UniPoly::zero()), UniPoly::new(vec![ratio(1, 2), rat(1)]));
        assert_eq!(UniPoly::zero().gcd(&UniPoly::zero()), UniPoly::zero());
    }

    #[test]
    fn division_round_trip() {
        let a = p(&[3, -1, 0, 7, 2]);
        let b = UniPoly::new(vec![ratio(1, 3), rat(0), ratio(-5, 2)]);
        let (q, r) = a.div_rem(&b);
        assert!(r.degree() < b.degree());
        assert_eq!(&(&q * &b) + &r, a);
    }

    #[test]
    fn squarefree_decomposition_recovers_powers() {
        let a = p(&[1, 1]);
        let b = p(&[2, 0, 1]);
        let f = &(&a.pow(3) * &b.pow(2)) * &p(&[0, 1]);
        let dec = f.squarefree_decomposition();
        assert_eq!(dec, vec![(p(&[0, 1]), 1), (b, 2), (a, 3)]);
    }

    #[test]
    fn resultant_basics() {
        let g = p(&[5, -3, 0, 1]);
        let c = rat(4);
        assert_eq!(UniPoly::linear_root(&c).resultant(&g), g.eval(&c));
        assert_eq!(g.resultant(&g), rat(0));
        // Res(x^2 + 1, x^2 - 2) = (i^2 - 2)((-i)^2 - 2) = 9
        assert_eq!(p(&[1, 0, 1]).resultant(&p(&[-2, 0, 1])), rat(9));
    }

    #[test]
    fn discriminant_of_cubic() {
        // x^3 + a x + b has discriminant -4a^3 - 27b^2.
        assert_eq!(p(&[1, -1, 0, 1]).discriminant(), rat(4 - 27));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[0, 12, 0, 0, 3]).to_string(), "3*x^4 + 12*x");
        assert_eq!(p(&[-1, 0, -1]).to_string(), "-x^2 - 1");
    }

    #[test]
    fn inverse_modulo() {
        let m = p(&[-2, 0, 0, 1]);
        let a = p(&[1, 1]);
        let inv = a.inverse_mod(&m).unwrap();
        assert!((&a * &inv).rem(&m).is_one());
    }
}
