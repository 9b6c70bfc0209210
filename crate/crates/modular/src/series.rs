//! Truncated Laurent series over Q, used to read off the image of a point
//! where every coordinate of a map vanishes.

use qab_arith::{Rational, UniPoly};
use num_traits::Zero;

/// `sum_i c[i] t^(val + i)`, known modulo `t^(val + c.len())`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    pub val: i64,
    pub c: Vec<Rational>,
}

impl Series {
    pub fn constant(k: Rational, prec: usize) -> Self {
        let mut c = vec![Rational::zero(); prec];
        c[0] = k;
        Series { val: 0, c }.normalized()
    }

    /// Absolute precision: the series is known modulo `t^prec`.
    pub fn prec(&self) -> i64 {
        self.val + self.c.len() as i64
    }

    /// Zero to within the known precision.
    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.c.first()
    }

    fn normalized(mut self) -> Self {
        let lead = self.c.iter().take_while(|x| x.is_zero()).count();
        self.c.drain(..lead);
        self.val += lead as i64;
        self
    }

    pub fn coeff(&self, i: i64) -> Rational {
        if i < self.val || i >= self.prec() {
            Rational::zero()
        } else {
            self.c[(i - self.val) as usize].clone()
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let lo = self.val.min(o.val);
        let hi = self.prec().min(o.prec());
        let c = (lo..hi.max(lo)).map(|i| self.coeff(i) + o.coeff(i)).collect();
        Series { val: lo, c }.normalized()
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return Series { val: self.prec(), c: Vec::new() };
        }
        Series { val: self.val, c: self.c.iter().map(|x| x * k).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.c.len().min(o.c.len());
        let val = self.val + o.val;
        if n == 0 {
            let p = (self.prec() + o.val).min(o.prec() + self.val);
            return Series { val: p, c: Vec::new() };
        }
        let mut c = vec![Rational::zero(); n];
        for i in 0..n {
            for j in 0..n - i {
                c[i + j] += &self.c[i] * &o.c[j];
            }
        }
        Series { val, c }.normalized()
    }

    /// `p(self)`.
    pub fn eval_poly(&self, p: &UniPoly, prec: usize) -> Self {
        let mut acc = Series::constant(Rational::zero(), prec);
        for k in p.coeffs().iter().rev() {
            acc = acc.mul(self).add(&Series::constant(k.clone(), prec));
        }
        acc
    }

    /// Square root of a power series with constant term 1.
    pub fn sqrt_one(&self) -> Self {
        assert!(self.val == 0 && self.c.first().is_some_and(|x| *x == Rational::from_integer(1.into())));
        let n = self.c.len();
        let two = Rational::from_integer(2.into());
        let mut s = vec![Rational::zero(); n];
        s[0] = Rational::from_integer(1.into());
        for k in 1..n {
            let mut acc = self.c[k].clone();
            for i in 1..k {
                acc -= &s[i] * &s[k - i];
            }
            s[k] = acc / &two;
        }
        Series { val: 0, c: s }
    }

    /// `sum c_k t^(m k)`.
    pub fn substitute_power(&self, m: i64) -> Self {
        let mut c = vec![Rational::zero(); (self.c.len() as i64 * m) as usize];
        for (k, x) in self.c.iter().enumerate() {
            c[k * m as usize] = x.clone();
        }
        Series { val: self.val * m, c }.normalized()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use qab_arith::{rat, ratio};

    #[test]
    fn square_root_of_one_plus_t() {
        let s = Series { val: 0, c: vec![rat(1), rat(1), rat(0), rat(0)] }.sqrt_one();
        assert_eq!(s.c, vec![rat(1), ratio(1, 2), ratio(-1, 8), ratio(1, 16)]);
        assert_eq!(s.mul(&s).c, vec![rat(1), rat(1), rat(0), rat(0)]);
    }

    #[test]
    fn cancellation_tracks_precision() {
        let t = Series { val: 1, c: vec![rat(1), rat(0), rat(0)] };
        let p = t.eval_poly(&UniPoly::from_ints(&[0, 1, 1]), 3);
        assert_eq!((p.val, p.leading().cloned()), (1, Some(rat(1))));
        let z = t.add(&t.scale(&rat(-1)));
        assert!(z.is_zero());
        assert_eq!(z.prec(), 4);
    }
}
