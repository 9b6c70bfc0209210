//! Dense univariate polynomials over Z, used as the integral workhorse behind
//! gcds, resultants and factorization of rational polynomials.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::modp;
use crate::poly::UniPoly;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ZPoly {
    coeffs: Vec<BigInt>,
}

impl ZPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ZPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|c| BigInt::from(*c)).collect())
    }

    pub fn zero() -> Self {
        ZPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::new(vec![BigInt::one()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading_coeff(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn to_unipoly(&self) -> UniPoly {
        UniPoly::from_bigints(&self.coeffs)
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive(&self) -> ZPoly {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.leading_coeff().is_negative() {
            g = -g;
        }
        ZPoly { coeffs: self.coeffs.iter().map(|c| c / &g).collect() }
    }

    pub fn scale(&self, c: &BigInt) -> ZPoly {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, at: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * at + c;
        }
        acc
    }

    pub fn derivative(&self) -> ZPoly {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Exact quotient over Z, or `None` if `divisor` does not divide `self`
    /// in Z[x].
    pub fn div_exact(&self, divisor: &ZPoly) -> Option<ZPoly> {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.coeffs.len() < divisor.coeffs.len() {
            return None;
        }
        let dd = divisor.degree();
        let lc = divisor.leading_coeff();
        let mut rem = self.coeffs.clone();
        let mut quo = vec![BigInt::zero(); rem.len() - dd];
        for i in (0..quo.len()).rev() {
            let top = &rem[i + dd];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(&lc);
            if !r.is_zero() {
                return None;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &q * d;
            }
            quo[i] = q;
        }
        if rem.iter().all(|c| c.is_zero()) {
            Some(Self::new(quo))
        } else {
            None
        }
    }

    /// Pseudo-remainder: `lc(d)^(deg self - deg d + 1) * self mod d`.
    pub fn pseudo_rem(&self, divisor: &ZPoly) -> ZPoly {
        if self.coeffs.len() < divisor.coeffs.len() {
            return self.clone();
        }
        let dd = divisor.degree();
        let lc = divisor.leading_coeff();
        let mut rem = self.coeffs.clone();
        let steps = rem.len() - dd;
        for i in (0..steps).rev() {
            let top = rem[i + dd].clone();
            for c in rem.iter_mut() {
                *c *= &lc;
            }
            if !top.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] -= &top * d;
                }
            }
        }
        rem.truncate(dd);
        Self::new(rem)
    }

    /// Gcd in Z[x], primitive with positive leading coefficient, times the
    /// gcd of the contents.
    pub fn gcd(&self, other: &ZPoly) -> ZPoly {
        if self.is_zero() {
            return other.primitive().scale(&other.content());
        }
        if other.is_zero() {
            return self.primitive().scale(&self.content());
        }
        let content = self.content().gcd(&other.content());
        let g = modp::modular_gcd(&self.primitive(), &other.primitive());
        g.scale(&content)
    }

    /// Resultant over Z, computed by CRT over word-sized primes.
    pub fn resultant(&self, other: &ZPoly) -> BigInt {
        if self.is_zero() || other.is_zero() {
            return BigInt::zero();
        }
        modp::modular_resultant(self, other)
    }

    /// Euclidean norm, rounded up.
    pub fn l2_norm_ceil(&self) -> BigUint {
        let sum: BigUint = self.coeffs.iter().map(|c| c.magnitude() * c.magnitude()).sum();
        let r = num_integer::Roots::sqrt(&sum);
        if &r * &r == sum {
            r
        } else {
            r + 1u32
        }
    }

    pub fn max_norm(&self) -> BigUint {
        self.coeffs.iter().map(|c| c.magnitude().clone()).max().unwrap_or_default()
    }

    /// An integer upper bound for the absolute value of every complex root
    /// (Fujiwara's bound, evaluated with integer roots rounded up).
    pub fn root_bound(&self) -> BigUint {
        let n = self.degree();
        if n == 0 {
            return BigUint::zero();
        }
        let lc = self.leading_coeff().magnitude().clone();
        let mut best = BigUint::zero();
        for i in 1..=n {
            let c = self.coeffs[n - i].magnitude();
            if c.is_zero() {
                continue;
            }
            let mut ratio = c.clone();
            if i == n {
                ratio = (ratio + 1u32) / 2u32 + 1u32;
            }
            let q = (&ratio + &lc - 1u32) / &lc;
            let mut r = num_integer::Roots::nth_root(&q, i as u32);
            if num_traits::pow(r.clone(), i) < q {
                r += 1u32;
            }
            if r > best {
                best = r;
            }
        }
        best * 2u32 + 1u32
    }

    /// Reduction modulo `p` with coefficients in `0..p`.
    pub fn to_modp(&self, p: u64) -> Vec<u64> {
        let big_p = BigInt::from(p);
        let mut out: Vec<u64> = self
            .coeffs
            .iter()
            .map(|c| {
                let r = c.mod_floor(&big_p);
                u64::try_from(r).expect("residue fits in a word")
            })
            .collect();
        while out.last() == Some(&0) {
            out.pop();
        }
        out
    }

    /// Lifts a polynomial with coefficients in `0..m` to the symmetric range.
    pub fn from_symmetric(coeffs: &[BigInt], m: &BigInt) -> ZPoly {
        let half = m >> 1u32;
        Self::new(
            coeffs
                .iter()
                .map(|c| {
                    let r = c.mod_floor(m);
                    if r > half {
                        r - m
                    } else {
                        r
                    }
                })
                .collect(),
        )
    }

    pub fn reduce_mod(&self, m: &BigInt) -> Vec<BigInt> {
        self.coeffs.iter().map(|c| c.mod_floor(m)).collect()
    }

    pub fn is_positive_lc(&self) -> bool {
        self.leading_coeff().sign() == Sign::Plus
    }

    /// Rational polynomial with the same roots, scaled to be monic.
    pub fn to_monic_unipoly(&self) -> UniPoly {
        let lc = Rational::from_integer(self.leading_coeff());
        self.to_unipoly().scale(&lc.recip())
    }
}

impl Add for &ZPoly {
    type Output = ZPoly;
    fn add(self, rhs: &ZPoly) -> ZPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ZPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &ZPoly {
    type Output = ZPoly;
    fn sub(self, rhs: &ZPoly) -> ZPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ZPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &ZPoly {
    type Output = ZPoly;
    fn neg(self) -> ZPoly {
        ZPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &ZPoly {
    type Output = ZPoly;
    fn mul(self, rhs: &ZPoly) -> ZPoly {
        if self.is_zero() || rhs.is_zero() {
            return ZPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ZPoly::new(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_division() {
        let a = ZPoly::from_ints(&[1, 1]);
        let b = ZPoly::from_ints(&[-3, 0, 2]);
        let ab = &a * &b;
        assert_eq!(ab.div_exact(&b), Some(a.clone()));
        assert_eq!(ab.div_exact(&ZPoly::from_ints(&[1, 2])), None);
    }

    #[test]
    fn root_bound_dominates_roots() {
        // (x - 30)(x + 7)(2x - 1)
        let f = &(&ZPoly::from_ints(&[-30, 1]) * &ZPoly::from_ints(&[7, 1])) * &ZPoly::from_ints(&[-1, 2]);
        assert!(f.root_bound() >= BigUint::from(30u32));
    }

    #[test]
    fn gcd_over_z() {
        let a = ZPoly::from_ints(&[1, 1]);
        let f = &a * &ZPoly::from_ints(&[2, 0, 3]);
        let g = &a * &ZPoly::from_ints(&[-5, 7]);
        assert_eq!(f.gcd(&g), a);
        let h = ZPoly::from_ints(&[6, 6]);
        let k = ZPoly::from_ints(&[4, 4]);
        assert_eq!(h.gcd(&k), ZPoly::from_ints(&[2, 2]));
    }
}
