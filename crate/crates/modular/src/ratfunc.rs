//! Rational functions in one variable over Q.

use std::fmt;

use qab_arith::rational::sqrt_exact;
use qab_arith::{Rational, UniPoly};
use num_traits::{One, Zero};

/// `num / den` with `den` monic and coprime to `num`; zero is `0 / 1`.
#[derive(Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: UniPoly,
    den: UniPoly,
}

impl RatFunc {
    pub fn new(num: UniPoly, den: UniPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let num = num.exact_div(&g).expect("gcd divides");
        let den = den.exact_div(&g).expect("gcd divides");
        let lc = den.leading_coeff();
        RatFunc { num: num.scale(&(Rational::one() / &lc)), den: den.monic() }
    }

    pub fn zero() -> Self {
        RatFunc { num: UniPoly::zero(), den: UniPoly::one() }
    }

    pub fn poly(p: UniPoly) -> Self {
        RatFunc { num: p, den: UniPoly::one() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::poly(UniPoly::constant(c))
    }

    pub fn var() -> Self {
        Self::poly(UniPoly::x())
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(&self.num * &o.num, &self.den * &o.den)
    }

    pub fn div(&self, o: &Self) -> Option<Self> {
        (!o.is_zero()).then(|| Self::new(&self.num * &o.den, &self.den * &o.num))
    }

    pub fn pow(&self, e: u32) -> Self {
        RatFunc { num: self.num.pow(e), den: self.den.pow(e) }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.num.scale(c), self.den.clone())
    }

    /// Value at `h`, or `None` where the denominator vanishes.
    pub fn eval(&self, h: &Rational) -> Option<Rational> {
        let d = self.den.eval(h);
        (!d.is_zero()).then(|| self.num.eval(h) / d)
    }

    /// `s` with `s^2 = self`, if one exists in Q(h).
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        Some(Self::new(poly_sqrt(&self.num)?, poly_sqrt(&self.den)?))
    }
}

/// Square root of a polynomial over Q, if it is a square.
pub fn poly_sqrt(p: &UniPoly) -> Option<UniPoly> {
    let lc = sqrt_exact(&p.leading_coeff())?;
    let mut root = UniPoly::constant(lc);
    for (f, m) in p.squarefree_decomposition() {
        if m % 2 == 1 {
            return None;
        }
        root = &root * &f.pow(m / 2);
    }
    (&root * &root == *p).then_some(root)
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use qab_arith::rat;

    #[test]
    fn arithmetic_normalizes() {
        let h = RatFunc::var();
        let one = RatFunc::constant(rat(1));
        let a = h.add(&one).div(&h.sub(&one)).unwrap();
        let b = a.mul(&h.sub(&one)).sub(&h);
        assert_eq!(b, one);
        assert_eq!(a.eval(&rat(1)), None);
        assert_eq!(a.eval(&rat(3)), Some(rat(2)));
    }

    #[test]
    fn square_roots() {
        let p = UniPoly::from_ints(&[1, 2, 1]).scale(&rat(9));
        assert_eq!(poly_sqrt(&p), Some(UniPoly::from_ints(&[3, 3])));
        assert_eq!(poly_sqrt(&UniPoly::from_ints(&[1, 2, 1]).scale(&rat(2))), None);
        assert_eq!(poly_sqrt(&UniPoly::from_ints(&[0, 0, 1, 1])), None);
        let q = RatFunc::new(UniPoly::from_ints(&[4]), UniPoly::from_ints(&[0, 0, 1]));
        assert_eq!(q.sqrt().unwrap().pow(2), q);
        assert!(RatFunc::zero().sqrt().is_some());
    }
}
