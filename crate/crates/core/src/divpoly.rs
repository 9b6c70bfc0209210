//! Division polynomials in the x-only convention.
//!
//! `f_n = psi_n` for odd `n` and `f_n = psi_n / psi_2` for even `n`, where
//! `psi_2^2 = F = 4x^3 + b2 x^2 + 2 b4 x + b6`.

use std::collections::HashMap;

use qab_arith::{rat, UniPoly};

use crate::curve::RationalCurve;
use crate::error::{Error, Result};

pub const MAX_INDEX: u32 = 163;

pub struct DivisionPolynomials {
    curve: RationalCurve,
    f2: UniPoly,
    f2_squared: UniPoly,
    cache: HashMap<u32, UniPoly>,
    primitive: HashMap<u32, UniPoly>,
}

impl DivisionPolynomials {
    pub fn new(curve: &RationalCurve) -> Self {
        let e = curve;
        let f2 = e.two_division_poly();
        let mut cache = HashMap::new();
        cache.insert(0, UniPoly::zero());
        cache.insert(1, UniPoly::one());
        cache.insert(2, UniPoly::one());
        cache.insert(
            3,
            UniPoly::new(vec![
                e.b8.clone(),
                rat(3) * &e.b6,
                rat(3) * &e.b4,
                e.b2.clone(),
                rat(3),
            ]),
        );
        cache.insert(
            4,
            UniPoly::new(vec![
                &e.b4 * &e.b8 - &e.b6 * &e.b6,
                &e.b2 * &e.b8 - &e.b4 * &e.b6,
                rat(10) * &e.b8,
                rat(10) * &e.b6,
                rat(5) * &e.b4,
                e.b2.clone(),
                rat(2),
            ]),
        );
        let f2_squared = &f2 * &f2;
        DivisionPolynomials { curve: curve.clone(), f2, f2_squared, cache, primitive: HashMap::new() }
    }

    pub fn curve(&self) -> &RationalCurve {
        &self.curve
    }

    /// `F = psi_2^2`.
    pub fn two_division(&self) -> &UniPoly {
        &self.f2
    }

    /// The x-only division polynomial `f_n`.
    pub fn f(&mut self, n: u32) -> UniPoly {
        if let Some(p) = self.cache.get(&n) {
            return p.clone();
        }
        let m = n / 2;
        let out = if n % 2 == 1 {
            let a = &self.f(m + 2) * &self.f(m).pow(3);
            let b = &self.f(m - 1) * &self.f(m + 1).pow(3);
            if m.is_multiple_of(2) {
                &(&self.f2_squared * &a) - &b
            } else {
                &a - &(&self.f2_squared * &b)
            }
        } else {
            let a = &self.f(m + 2) * &self.f(m - 1).pow(2);
            let b = &self.f(m - 2) * &self.f(m + 1).pow(2);
            &self.f(m) * &(&a - &b)
        };
        self.cache.insert(n, out.clone());
        out
    }

    /// Polynomial whose roots are exactly the x-coordinates of the nonzero
    /// points with `nP = O`: `f_n` for odd `n`, `f_n F` for even `n`. Monic,
    /// squarefree.
    pub fn torsion_x_poly(&mut self, n: u32) -> Result<UniPoly> {
        check_index(n)?;
        if n == 1 {
            return Ok(UniPoly::one());
        }
        let f = self.f(n);
        Ok(if n.is_multiple_of(2) { &f * &self.f2 } else { f }.monic())
    }

    /// Monic polynomial whose roots are the x-coordinates of points of
    /// exact order `n`.
    pub fn primitive_part(&mut self, n: u32) -> Result<UniPoly> {
        check_index(n)?;
        if let Some(p) = self.primitive.get(&n) {
            return Ok(p.clone());
        }
        let mut prim = self.torsion_x_poly(n)?;
        for d in (2..n).filter(|d| n.is_multiple_of(*d)) {
            // maximal proper divisors suffice
            if (2..=n / d).any(|e| n.is_multiple_of(d * e) && d * e < n) {
                continue;
            }
            let lower = self.torsion_x_poly(d)?;
            let g = prim.gcd(&lower);
            if !g.is_one() {
                prim = prim.exact_div(&g).expect("gcd divides");
            }
        }
        self.primitive.insert(n, prim.clone());
        Ok(prim)
    }
}

fn check_index(n: u32) -> Result<()> {
    if n == 0 || n > MAX_INDEX {
        return Err(Error::Input(format!("division polynomial index {n} outside 1..={MAX_INDEX}")));
    }
    Ok(())
}

/// `f_n` for the curve.
pub fn division_polynomial(e: &RationalCurve, n: u32) -> Result<UniPoly> {
    check_index(n)?;
    Ok(DivisionPolynomials::new(e).f(n))
}

pub fn primitive_part(e: &RationalCurve, n: u32) -> Result<UniPoly> {
    DivisionPolynomials::new(e).primitive_part(n)
}

/// Number of x-coordinates of points of exact order `n`: half the number of
/// such points, except that points of order 2 are their own negatives.
pub fn expected_primitive_degree(n: u32) -> usize {
    let mut count: u64 = (n as u64) * (n as u64);
    let mut m = n;
    let mut p = 2;
    while m > 1 {
        if m.is_multiple_of(p) {
            count = count / (p as u64 * p as u64) * (p as u64 * p as u64 - 1);
            while m.is_multiple_of(p) {
                m /= p;
            }
        }
        p += 1;
    }
    if n == 1 {
        0
    } else if n == 2 {
        3
    } else {
        (count / 2) as usize
    }
}
