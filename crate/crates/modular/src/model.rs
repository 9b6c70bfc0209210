//! Plane models `Y^2 = F(h)` and the explicit maps between them.
//!
//! A model with `deg F = d` odd is read in the plane as
//! `y^2 z^(d-2) = F_hom(x, z)`, with `h = x/z`, `Y = y/z` and a single point
//! `(0 : 1 : 0)` at infinity.

use std::fmt;

use qab_arith::rational::sqrt_exact;
use qab_arith::{rational_roots, resultant, BiPoly, Rational, UniPoly, Var};
use num_traits::{One, Zero};
use serde::Serialize;

use crate::expr::{parse_ypoly, ParseError};
use crate::series::Series;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneCurveModel {
    pub name: String,
    pub rhs: UniPoly,
    pub genus: usize,
    /// The elimination this model certifies.
    pub role: String,
}

impl PlaneCurveModel {
    pub fn new(name: &str, rhs: UniPoly, role: &str) -> Self {
        assert!(rhs.checked_degree().is_some_and(|d| d % 2 == 1), "odd-degree model expected: {rhs}");
        assert!(rhs.is_squarefree(), "singular model {rhs}");
        let genus = (rhs.degree() - 1) / 2;
        PlaneCurveModel { name: name.into(), rhs, genus, role: role.into() }
    }

    pub fn parse(name: &str, rhs: &str, role: &str) -> Result<Self, ParseError> {
        let f = crate::expr::parse_ratfunc(rhs)?;
        assert!(f.den().is_one(), "polynomial right-hand side expected");
        Ok(Self::new(name, f.num().clone(), role))
    }

    pub fn contains(&self, p: &CurvePoint) -> bool {
        match p {
            CurvePoint::Infinity => true,
            CurvePoint::Affine(h, y) => y * y == self.rhs.eval(h),
        }
    }

    /// Rational points with the given `h`.
    pub fn points_over(&self, h: &Rational) -> Vec<CurvePoint> {
        match sqrt_exact(&self.rhs.eval(h)) {
            None => Vec::new(),
            Some(y) if y.is_zero() => vec![CurvePoint::Affine(h.clone(), y)],
            Some(y) => vec![CurvePoint::Affine(h.clone(), -y.clone()), CurvePoint::Affine(h.clone(), y)],
        }
    }

    /// `(h(t), y(t))` for a local parameter `t` at `p`.
    fn local_expansion(&self, p: &CurvePoint, prec: usize) -> (Series, Series) {
        let f = &self.rhs;
        match p {
            CurvePoint::Affine(h0, y0) if !y0.is_zero() => {
                let shifted = f.compose(&UniPoly::new(vec![h0.clone(), Rational::one()]));
                let u = Series { val: 0, c: pad(shifted.scale(&(Rational::one() / (y0 * y0))).coeffs(), prec) };
                let h = Series { val: 0, c: pad(&[h0.clone(), Rational::one()], prec) };
                (h, u.sqrt_one().scale(y0))
            }
            CurvePoint::Affine(h0, _) => {
                // t = y; h - h0 = s solves G(s) = t^2 with G(s) = F(h0 + s).
                let g = f.compose(&UniPoly::new(vec![h0.clone(), Rational::one()]));
                let g1 = g.coeff(1);
                let w = Series { val: 1, c: pad(&[Rational::one()], prec) };
                let mut s = w.scale(&(Rational::one() / &g1));
                let higher = UniPoly::new(g.coeffs().iter().enumerate().map(|(i, c)| if i < 2 { Rational::zero() } else { c.clone() }).collect());
                for _ in 0..prec {
                    s = w.add(&s.eval_poly(&higher, prec).scale(&-Rational::one())).scale(&(Rational::one() / &g1));
                }
                let s = s.substitute_power(2);
                let h = s.add(&Series::constant(h0.clone(), 2 * prec));
                let y = Series { val: 1, c: pad(&[Rational::one()], 2 * prec) };
                (h, y)
            }
            CurvePoint::Infinity => {
                // h = 1/(L t^2); y = L^((1-d)/2) t^(-d) sqrt(1 + ...)
                let d = f.degree();
                let l = f.leading_coeff();
                let inv_l = Rational::one() / &l;
                let h = Series { val: -2, c: pad(std::slice::from_ref(&inv_l), prec) };
                let mut u = vec![Rational::zero(); prec];
                let mut lpow = Rational::one();
                for i in 0..=d.min(prec - 1) {
                    u[i] = f.coeff(d - i) * &inv_l * &lpow;
                    lpow *= &l;
                }
                let u = Series { val: 0, c: u }.sqrt_one().substitute_power(2);
                let mut scale = Rational::one();
                for _ in 0..(d - 1) / 2 {
                    scale *= &inv_l;
                }
                let y = Series { val: -(d as i64), c: u.c }.scale(&scale);
                (h, y)
            }
        }
    }
}

fn pad(c: &[Rational], n: usize) -> Vec<Rational> {
    let mut v = c.to_vec();
    v.resize(n.max(c.len()), Rational::zero());
    v.truncate(n);
    v
}

impl fmt::Display for PlaneCurveModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: Y^2 = {}", self.name, self.rhs)
    }
}

/// A rational point of a plane model.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CurvePoint {
    Infinity,
    Affine(Rational, Rational),
}

impl CurvePoint {
    pub fn affine(h: i64, y: i64) -> Self {
        CurvePoint::Affine(qab_arith::rat(h), qab_arith::rat(y))
    }

    pub fn h(&self) -> Option<&Rational> {
        match self {
            CurvePoint::Infinity => None,
            CurvePoint::Affine(h, _) => Some(h),
        }
    }

    /// Normalizes projective coordinates.
    pub fn from_projective(x: Rational, y: Rational, z: Rational) -> Option<Self> {
        if !z.is_zero() {
            Some(CurvePoint::Affine(x / &z, y / z))
        } else if x.is_zero() && !y.is_zero() {
            Some(CurvePoint::Infinity)
        } else {
            None
        }
    }
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvePoint::Infinity => write!(f, "(0 : 1 : 0)"),
            CurvePoint::Affine(h, y) => write!(f, "({h} : {y} : 1)"),
        }
    }
}

impl Serialize for CurvePoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `(x : y : z) -> (X(x, z) : y c(x, z) : Z(x, z))`, stored in the chart
/// `z = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMap {
    pub name: String,
    pub source: PlaneCurveModel,
    pub target: PlaneCurveModel,
    pub x: UniPoly,
    pub y_factor: UniPoly,
    pub z: UniPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MapError {
    Parse(ParseError),
    Shape(String),
    Precision(String),
}

impl fmt::Display for MapError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapError::Parse(e) => write!(f, "parse error {e}"),
            MapError::Shape(s) => write!(f, "{s}"),
            MapError::Precision(s) => write!(f, "insufficient precision: {s}"),
        }
    }
}

impl std::error::Error for MapError {}

/// Relative precisions tried in turn when reading off an image.
const PRECISIONS: [usize; 4] = [8, 16, 32, 64];

impl RationalMap {
    /// Reads the three printed coordinates.
    pub fn parse(name: &str, source: PlaneCurveModel, target: PlaneCurveModel, coords: [&str; 3]) -> Result<Self, MapError> {
        let [x, y, z] = coords.map(|c| parse_ypoly(c).map_err(MapError::Parse));
        let (x, y, z) = (x?, y?, z?);
        let poly_of = |p: &crate::expr::YPoly, what: &str, ydeg: usize| -> Result<UniPoly, MapError> {
            if p.y_degree().unwrap_or(0) > ydeg || (0..ydeg).any(|i| !p.coeff(i).is_zero()) {
                return Err(MapError::Shape(format!("{what} must be y^{ydeg} times a polynomial in x, z")));
            }
            let c = p.coeff(ydeg);
            if !c.den().is_one() {
                return Err(MapError::Shape(format!("{what} is not polynomial")));
            }
            Ok(c.num().clone())
        };
        Ok(RationalMap {
            name: name.into(),
            x: poly_of(&x, "X", 0)?,
            y_factor: poly_of(&y, "Y", 1)?,
            z: poly_of(&z, "Z", 0)?,
            source,
            target,
        })
    }

    /// `F c^2 Z^(d-2) - Z^d G(X/Z)`, where `F`, `G` are the source and
    /// target right-hand sides and `d = deg G`. Zero exactly when the
    /// substituted target equation is a multiple of `y^2 - F`.
    pub fn residual(&self) -> UniPoly {
        let g = &self.target.rhs;
        let d = g.degree();
        let lhs = &(&self.source.rhs * &self.y_factor.pow(2)) * &self.z.pow(d as u32 - 2);
        let mut rhs = UniPoly::zero();
        for (i, a) in g.coeffs().iter().enumerate() {
            rhs = &rhs + &(&self.x.pow(i as u32) * &self.z.pow((d - i) as u32)).scale(a);
        }
        &lhs - &rhs
    }

    pub fn verify_identity(&self) -> bool {
        self.residual().is_zero()
    }

    /// Copies of the map with one printed coefficient raised by 1.
    pub fn perturbations(&self) -> Vec<RationalMap> {
        let bump = |p: &UniPoly, i: usize| {
            let mut c = p.coeffs().to_vec();
            c[i] += Rational::one();
            UniPoly::new(c)
        };
        let mut out = Vec::new();
        for (which, i) in [(0, 0), (0, usize::MAX), (1, usize::MAX), (2, 0), (2, usize::MAX)] {
            let mut m = self.clone();
            let p = match which {
                0 => &mut m.x,
                1 => &mut m.y_factor,
                _ => &mut m.z,
            };
            let i = if i == usize::MAX { p.degree() } else { i };
            *p = bump(p, i);
            m.name = format!("{} (perturbed)", self.name);
            out.push(m);
        }
        out
    }

    /// Image of a source point, read from the leading terms of the
    /// coordinates in a local parameter.
    pub fn image_of(&self, p: &CurvePoint) -> Result<CurvePoint, MapError> {
        let mut last = None;
        for prec in PRECISIONS {
            match self.image_at_precision(p, prec) {
                Err(e @ MapError::Precision(_)) => last = Some(e),
                r => return r,
            }
        }
        Err(last.expect("at least one precision tried"))
    }

    fn image_at_precision(&self, p: &CurvePoint, prec: usize) -> Result<CurvePoint, MapError> {
        let (h, y) = self.source.local_expansion(p, prec);
        let xs = h.eval_poly(&self.x, prec);
        let ys = y.mul(&h.eval_poly(&self.y_factor, prec));
        let zs = h.eval_poly(&self.z, prec);
        let v = [&xs, &ys, &zs].iter().filter(|s| !s.is_zero()).map(|s| s.val).min();
        let Some(v) = v else {
            return Err(MapError::Precision(format!("all coordinates vanish at {p}")));
        };
        if [&xs, &ys, &zs].iter().any(|s| s.is_zero() && s.prec() <= v) {
            return Err(MapError::Precision(format!("at {p}")));
        }
        CurvePoint::from_projective(xs.coeff(v), ys.coeff(v), zs.coeff(v))
            .ok_or_else(|| MapError::Shape(format!("image of {p} is not on the target")))
    }

    /// Rational source points mapping to `target`.
    pub fn fiber_points(&self, target: &CurvePoint) -> Result<Vec<CurvePoint>, MapError> {
        let mut hs: Vec<Rational> = Vec::new();
        if let CurvePoint::Affine(x0, y0) = target {
            let a = &self.x - &self.z.scale(x0);
            // Res_y(y c(h) - y0 Z(h), y^2 - F(h)), a polynomial in h
            let mut terms = Vec::new();
            for (i, c) in self.y_factor.coeffs().iter().enumerate() {
                terms.push((i, 1, c.clone()));
            }
            for (i, c) in self.z.coeffs().iter().enumerate() {
                terms.push((i, 0, -(c * y0)));
            }
            let mut curve = vec![(0, 2, Rational::one())];
            for (i, c) in self.source.rhs.coeffs().iter().enumerate() {
                curve.push((i, 0, -c.clone()));
            }
            let b = resultant(&BiPoly::from_terms(&terms), &BiPoly::from_terms(&curve), Var::Y)
                .map_err(|e| MapError::Shape(e.to_string()))?;
            let g = if a.is_zero() { b } else if b.is_zero() { a } else { a.gcd(&b) };
            if !g.is_zero() {
                hs.extend(rational_roots(&g).map_err(|e| MapError::Shape(e.to_string()))?);
            }
        }
        if !self.z.is_zero() {
            hs.extend(rational_roots(&self.z).map_err(|e| MapError::Shape(e.to_string()))?);
        }
        let mut candidates: Vec<CurvePoint> = hs.iter().flat_map(|h| self.source.points_over(h)).collect();
        candidates.push(CurvePoint::Infinity);
        candidates.sort();
        candidates.dedup();
        let mut out = Vec::new();
        for c in candidates {
            if self.image_of(&c)? == *target {
                out.push(c);
            }
        }
        Ok(out)
    }
}
