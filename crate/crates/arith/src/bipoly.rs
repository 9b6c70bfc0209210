//! Bivariate polynomials over Q and resultants eliminating one variable.

use num_traits::Zero;

use crate::poly::UniPoly;
use crate::rational::{rat, Rational};
use crate::ArithError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    X,
    Y,
}

/// `sum_i c_i(y) x^i`, stored as the list of `c_i` lowest power first.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BiPoly {
    x_coeffs: Vec<UniPoly>,
}

impl BiPoly {
    pub fn new(mut x_coeffs: Vec<UniPoly>) -> Self {
        while x_coeffs.last().is_some_and(|c| c.is_zero()) {
            x_coeffs.pop();
        }
        BiPoly { x_coeffs }
    }

    pub fn zero() -> Self {
        BiPoly { x_coeffs: Vec::new() }
    }

    /// A polynomial in x alone.
    pub fn from_x(p: &UniPoly) -> Self {
        Self::new(p.coeffs().iter().map(|c| UniPoly::constant(c.clone())).collect())
    }

    /// A polynomial in y alone.
    pub fn from_y(p: &UniPoly) -> Self {
        Self::new(vec![p.clone()])
    }

    /// Builds `sum c * x^i * y^j` from `(i, j, c)` triples.
    pub fn from_terms(terms: &[(usize, usize, Rational)]) -> Self {
        let deg = terms.iter().map(|t| t.0).max().unwrap_or(0);
        let mut x_coeffs = vec![UniPoly::zero(); deg + 1];
        for (i, j, c) in terms {
            x_coeffs[*i] = &x_coeffs[*i] + &UniPoly::monomial(c.clone(), *j);
        }
        Self::new(x_coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.x_coeffs.is_empty()
    }

    pub fn degree_in(&self, v: Var) -> usize {
        match v {
            Var::X => self.x_coeffs.len().saturating_sub(1),
            Var::Y => self.x_coeffs.iter().map(|c| c.degree()).max().unwrap_or(0),
        }
    }

    /// Swaps the roles of x and y.
    pub fn transpose(&self) -> Self {
        let dy = self.degree_in(Var::Y);
        let mut out = vec![Vec::new(); dy + 1];
        for (i, c) in self.x_coeffs.iter().enumerate() {
            for (j, a) in c.coeffs().iter().enumerate() {
                if out[j].len() <= i {
                    out[j].resize(i + 1, Rational::zero());
                }
                out[j][i] = a.clone();
            }
        }
        Self::new(out.into_iter().map(UniPoly::new).collect())
    }

    /// Specializes `y = at`, giving a polynomial in x.
    pub fn eval_y(&self, at: &Rational) -> UniPoly {
        UniPoly::new(self.x_coeffs.iter().map(|c| c.eval(at)).collect())
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        self.eval_y(y).eval(x)
    }

    /// Leading coefficient in x, a polynomial in y.
    pub fn leading_x(&self) -> UniPoly {
        self.x_coeffs.last().cloned().unwrap_or_else(UniPoly::zero)
    }
}

/// Resultant of `f` and `g` with respect to `eliminate`, as a polynomial in
/// the other variable.
///
/// Evaluation at integer points where neither leading coefficient vanishes,
/// univariate resultants there, and Newton interpolation through enough
/// points to cover the degree bound.
pub fn resultant(f: &BiPoly, g: &BiPoly, eliminate: Var) -> Result<UniPoly, ArithError> {
    let (f, g) = match eliminate {
        Var::X => (f.clone(), g.clone()),
        Var::Y => (f.transpose(), g.transpose()),
    };
    if f.is_zero() || g.is_zero() {
        return Err(ArithError::Degenerate("resultant of a zero polynomial".into()));
    }
    let n = f.degree_in(Var::X);
    let m = g.degree_in(Var::X);
    if n == 0 && m == 0 {
        return Err(ArithError::Degenerate(
            "both inputs are constant in the eliminated variable".into(),
        ));
    }
    let bound = n * g.degree_in(Var::Y) + m * f.degree_in(Var::Y);
    let lf = f.leading_x();
    let lg = g.leading_x();
    let mut xs: Vec<Rational> = Vec::with_capacity(bound + 1);
    let mut ys: Vec<Rational> = Vec::with_capacity(bound + 1);
    let mut k: i64 = 0;
    while xs.len() <= bound {
        // 0, 1, -1, 2, -2, ...
        let t = if k % 2 == 0 { rat(-(k / 2)) } else { rat(k / 2 + 1) };
        k += 1;
        if lf.eval(&t).is_zero() || lg.eval(&t).is_zero() {
            continue;
        }
        let r = f.eval_y(&t).resultant(&g.eval_y(&t));
        xs.push(t);
        ys.push(r);
    }
    Ok(interpolate(&xs, &ys))
}

/// Newton interpolation through the given points.
pub fn interpolate(xs: &[Rational], ys: &[Rational]) -> UniPoly {
    let n = xs.len();
    let mut coef = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            coef[i] = (&coef[i] - &coef[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    let mut acc = UniPoly::zero();
    for i in (0..n).rev() {
        acc = &(&acc * &UniPoly::linear_root(&xs[i])) + &UniPoly::constant(coef[i].clone());
    }
    acc
}
