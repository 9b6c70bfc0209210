//! Weierstrass models over Q, points and rational torsion.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use qab_arith::integer::{factor_integer, squarefree_part};
use qab_arith::rational::{exact_root, is_square};
use qab_arith::{rat, rational_roots, Rational, UniPoly};

use crate::error::{Error, Result};
use crate::group::TorsionGroup;

/// Long Weierstrass model `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`
/// with its standard invariants.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalCurve {
    pub a1: Rational,
    pub a2: Rational,
    pub a3: Rational,
    pub a4: Rational,
    pub a6: Rational,
    pub b2: Rational,
    pub b4: Rational,
    pub b6: Rational,
    pub b8: Rational,
    pub c4: Rational,
    pub c6: Rational,
    pub disc: Rational,
    pub j: Rational,
}

impl RationalCurve {
    pub fn new(a1: Rational, a2: Rational, a3: Rational, a4: Rational, a6: Rational) -> Result<Self> {
        let b2 = &a1 * &a1 + rat(4) * &a2;
        let b4 = rat(2) * &a4 + &a1 * &a3;
        let b6 = &a3 * &a3 + rat(4) * &a6;
        let b8 = &a1 * &a1 * &a6 + rat(4) * &a2 * &a6 - &a1 * &a3 * &a4 + &a2 * &a3 * &a3 - &a4 * &a4;
        let c4 = &b2 * &b2 - rat(24) * &b4;
        let c6 = -(&b2 * &b2 * &b2) + rat(36) * &b2 * &b4 - rat(216) * &b6;
        let disc = -(&b2 * &b2 * &b8) - rat(8) * &b4 * &b4 * &b4 - rat(27) * &b6 * &b6 + rat(9) * &b2 * &b4 * &b6;
        if disc.is_zero() {
            return Err(Error::Singular(format!(
                "[{}, {}, {}, {}, {}] has discriminant 0",
                a1, a2, a3, a4, a6
            )));
        }
        let j = &c4 * &c4 * &c4 / &disc;
        Ok(RationalCurve { a1, a2, a3, a4, a6, b2, b4, b6, b8, c4, c6, disc, j })
    }

    pub fn from_ints(a: [i64; 5]) -> Result<Self> {
        Self::new(rat(a[0]), rat(a[1]), rat(a[2]), rat(a[3]), rat(a[4]))
    }

    pub fn from_a_invariants(a: &[Rational]) -> Result<Self> {
        if a.len() != 5 {
            return Err(Error::Input(format!("expected 5 a-invariants, got {}", a.len())));
        }
        Self::new(a[0].clone(), a[1].clone(), a[2].clone(), a[3].clone(), a[4].clone())
    }

    /// `y^2 = x^3 + a x + b`.
    pub fn short(a: Rational, b: Rational) -> Result<Self> {
        Self::new(rat(0), rat(0), rat(0), a, b)
    }

    pub fn a_invariants(&self) -> [Rational; 5] {
        [self.a1.clone(), self.a2.clone(), self.a3.clone(), self.a4.clone(), self.a6.clone()]
    }

    pub fn is_short(&self) -> bool {
        self.a1.is_zero() && self.a2.is_zero() && self.a3.is_zero()
    }

    /// `4x^3 + b2 x^2 + 2 b4 x + b6`, the square of `2y + a1 x + a3`.
    pub fn two_division_poly(&self) -> UniPoly {
        UniPoly::new(vec![self.b6.clone(), rat(2) * &self.b4, self.b2.clone(), rat(4)])
    }

    /// The short model `y^2 = x^3 - 27 c4 x - 54 c6`, isomorphic over Q via
    /// `x -> 36x + 3b2`, `y -> 108(2y + a1 x + a3)`.
    pub fn short_model(&self) -> RationalCurve {
        RationalCurve::short(rat(-27) * &self.c4, rat(-54) * &self.c6).expect("isomorphic model is nonsingular")
    }

    /// A short model `y^2 = x^3 + A x + B` with integral `A`, `B`, reduced so
    /// that no small prime `p` has `p^4 | A` and `p^6 | B`.
    pub fn integral_short_model(&self) -> RationalCurve {
        let mut a = rat(-27) * &self.c4;
        let mut b = rat(-54) * &self.c6;
        let den = a.denom().lcm(b.denom());
        if !den.is_one() {
            let u = Rational::from_integer(den);
            a *= num_traits::pow(u.clone(), 4);
            b *= num_traits::pow(u, 6);
        }
        let (mut ai, mut bi) = (a.to_integer(), b.to_integer());
        let g = if ai.is_zero() {
            bi.clone()
        } else if bi.is_zero() {
            ai.clone()
        } else {
            ai.gcd(&bi)
        };
        for p in small_prime_divisors(&g) {
            let p4 = num_traits::pow(p.clone(), 4);
            let p6 = num_traits::pow(p.clone(), 6);
            while (&ai % &p4).is_zero() && (&bi % &p6).is_zero() && !(ai.is_zero() && bi.is_zero()) {
                ai /= &p4;
                bi /= &p6;
            }
        }
        RationalCurve::short(Rational::from_integer(ai), Rational::from_integer(bi))
            .expect("isomorphic model is nonsingular")
    }

    /// True iff the two models are isomorphic over Q: `(c4', c6') = (u^4 c4,
    /// u^6 c6)` for some nonzero rational `u`.
    pub fn is_isomorphic(&self, other: &RationalCurve) -> bool {
        let (c4, c6, d4, d6) = (&self.c4, &self.c6, &other.c4, &other.c6);
        if c4.is_zero() != d4.is_zero() || c6.is_zero() != d6.is_zero() {
            return false;
        }
        if c4.is_zero() {
            return exact_root(&(d6 / c6), 6).is_some();
        }
        if c6.is_zero() {
            return exact_root(&(d4 / c4), 4).is_some();
        }
        // u^2 = (d6 / c6) / (d4 / c4)
        let r = (d6 / c6) / (d4 / c4);
        is_square(&r) && &(&r * &r) * c4 == *d4 && &(&r * &r * &r) * c6 == *d6
    }

    pub fn contains(&self, p: &Point) -> bool {
        match p {
            Point::Infinity => true,
            Point::Affine(x, y) => {
                let lhs = y * y + &self.a1 * x * y + &self.a3 * y;
                let rhs = x * x * x + &self.a2 * x * x + &self.a4 * x + &self.a6;
                lhs == rhs
            }
        }
    }

    pub fn neg(&self, p: &Point) -> Point {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => Point::Affine(x.clone(), -y - &self.a1 * x - &self.a3),
        }
    }

    pub fn add(&self, p: &Point, q: &Point) -> Point {
        let (x1, y1) = match p {
            Point::Infinity => return q.clone(),
            Point::Affine(x, y) => (x, y),
        };
        let (x2, y2) = match q {
            Point::Infinity => return p.clone(),
            Point::Affine(x, y) => (x, y),
        };
        let lambda;
        let nu;
        if x1 == x2 {
            if (y1 + y2 + &self.a1 * x2 + &self.a3).is_zero() {
                return Point::Infinity;
            }
            let num = rat(3) * x1 * x1 + rat(2) * &self.a2 * x1 + &self.a4 - &self.a1 * y1;
            let den = rat(2) * y1 + &self.a1 * x1 + &self.a3;
            lambda = &num / &den;
            nu = (-(x1 * x1 * x1) + &self.a4 * x1 + rat(2) * &self.a6 - &self.a3 * y1) / &den;
        } else {
            lambda = (y2 - y1) / (x2 - x1);
            nu = (y1 * x2 - y2 * x1) / (x2 - x1);
        }
        let x3 = &lambda * &lambda + &self.a1 * &lambda - &self.a2 - x1 - x2;
        let y3 = -(&lambda + &self.a1) * &x3 - &nu - &self.a3;
        Point::Affine(x3, y3)
    }

    /// `n * p` by double-and-add; negative `n` negates.
    pub fn multiply(&self, p: &Point, n: i64) -> Point {
        let mut acc = Point::Infinity;
        let mut base = if n < 0 { self.neg(p) } else { p.clone() };
        let mut k = n.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.add(&base, &base);
            }
        }
        acc
    }

    /// Order of a torsion point, or `None` if `k * p != O` for all `k <= bound`.
    pub fn order(&self, p: &Point, bound: u32) -> Option<u32> {
        let mut q = p.clone();
        for k in 1..=bound {
            if q.is_infinity() {
                return Some(k);
            }
            if k == bound {
                break;
            }
            q = self.add(&q, p);
        }
        if q.is_infinity() {
            Some(bound)
        } else {
            None
        }
    }

    /// The quadratic twist by a squarefree integer `d`, returned as
    /// `y^2 = x^3 + (b2/4) d x^2 + (b4/2) d^2 x + (b6/4) d^3`.
    pub fn quadratic_twist(&self, d: &BigInt) -> Result<RationalCurve> {
        if d.is_zero() || squarefree_part(d) != *d {
            return Err(Error::Input(format!("twist parameter {d} is not a squarefree nonzero integer")));
        }
        let d = Rational::from_integer(d.clone());
        RationalCurve::new(
            rat(0),
            &self.b2 / rat(4) * &d,
            rat(0),
            &self.b4 / rat(2) * &d * &d,
            &self.b6 / rat(4) * &d * &d * &d,
        )
    }

    /// Trace of Frobenius `a_p = p + 1 - #E(F_p)` at a prime `p >= 5` of good
    /// reduction of the integral short model; `None` otherwise. Naive count.
    pub fn trace_of_frobenius(&self, p: u64) -> Option<i64> {
        let short = self.integral_short_model();
        short_model_trace(&short.a4.to_integer(), &short.a6.to_integer(), p)
    }

    /// `(p, a_p)` for the primes `5 <= p < bound` of good reduction.
    pub fn frobenius_traces(&self, bound: u64) -> Vec<(u64, i64)> {
        let short = self.integral_short_model();
        let (a, b) = (short.a4.to_integer(), short.a6.to_integer());
        qab_arith::integer::primes_below(bound)
            .into_iter()
            .filter_map(|p| short_model_trace(&a, &b, p).map(|t| (p, t)))
            .collect()
    }

    /// Twist by an arbitrary nonzero rational `s` (only its square class
    /// matters), as the short model `y^2 = x^3 - 27 c4 s^2 x - 54 c6 s^3`.
    pub fn twist_by_rational(&self, s: &Rational) -> Result<RationalCurve> {
        if s.is_zero() {
            return Err(Error::Input("twist by zero".into()));
        }
        RationalCurve::short(rat(-27) * &self.c4 * s * s, rat(-54) * &self.c6 * s * s * s)
    }

    /// Rational torsion subgroup and its points, sorted.
    ///
    /// The order divides `#E(F_p)` for every odd prime `p` of good reduction;
    /// points of each prime-power order dividing that bound come from rational
    /// roots of the primitive division polynomial, and the group is their
    /// span.
    pub fn rational_torsion(&self) -> (TorsionGroup, Vec<Point>) {
        let mut bound: u64 = 0;
        for (p, ap) in self.frobenius_traces(400) {
            bound = bound.gcd(&((p as i64 + 1 - ap) as u64));
        }
        let mut points = vec![Point::Infinity];
        for q in [2u32, 4, 8, 3, 9, 5, 7] {
            if !bound.is_multiple_of(q as u64) {
                continue;
            }
            let prim = crate::divpoly::primitive_part(self, q).expect("valid index");
            for x in rational_roots(&prim).expect("nonzero division polynomial") {
                for pt in self.points_with_x(&x) {
                    if !points.contains(&pt) {
                        let span = points.clone();
                        let mut multiple = pt.clone();
                        while !multiple.is_infinity() {
                            for s in &span {
                                let t = self.add(s, &multiple);
                                if !points.contains(&t) {
                                    points.push(t);
                                }
                            }
                            multiple = self.add(&multiple, &pt);
                        }
                    }
                }
            }
        }
        let two_torsion = points.iter().filter(|p| self.order(p, 2) == Some(2)).count();
        let n = points.len() as u32;
        let group = if two_torsion == 3 { TorsionGroup::new(2, n / 2) } else { TorsionGroup::new(1, n) };
        points.sort();
        (group, points)
    }

    /// Rational points with the given x-coordinate.
    pub fn points_with_x(&self, x: &Rational) -> Vec<Point> {
        let h = &self.a1 * x + &self.a3;
        let f = x * x * x + &self.a2 * x * x + &self.a4 * x + &self.a6;
        let disc = &h * &h + rat(4) * &f;
        let Some(r) = exact_root(&disc, 2) else {
            return Vec::new();
        };
        let mut out = vec![Point::Affine(x.clone(), (&r - &h) / rat(2))];
        if !r.is_zero() {
            out.push(Point::Affine(x.clone(), (-&r - &h) / rat(2)));
        }
        out
    }

    /// Rational torsion by the Lutz–Nagell method on an integral short model,
    /// mapped back to this model. Exponential in the size of the
    /// discriminant; kept as an independent check of [`Self::rational_torsion`].
    pub fn rational_torsion_lutz_nagell(&self) -> (TorsionGroup, Vec<Point>) {
        let short = self.integral_short_model();
        let iso = ShortIsomorphism::between(self, &short);
        let a = short.a4.to_integer();
        let b = short.a6.to_integer();
        let cubic = UniPoly::from_bigints(&[b.clone(), a.clone(), BigInt::zero(), BigInt::one()]);
        let mut candidates: Vec<Point> = Vec::new();
        for r in rational_roots(&cubic).expect("nonzero cubic") {
            candidates.push(Point::Affine(r, rat(0)));
        }
        // y^2 divides 4A^3 + 27B^2
        let big_d = BigInt::from(4) * &a * &a * &a + BigInt::from(27) * &b * &b;
        for y in square_divisor_roots(&big_d) {
            let shifted = &cubic - &UniPoly::constant(Rational::from_integer(&y * &y));
            for r in rational_roots(&shifted).expect("nonzero cubic") {
                if r.is_integer() {
                    let yr = Rational::from_integer(y.clone());
                    candidates.push(Point::Affine(r.clone(), yr.clone()));
                    candidates.push(Point::Affine(r, -yr));
                }
            }
        }
        let mut points = vec![Point::Infinity];
        for c in candidates {
            if short.order(&c, 12).is_some() && !points.contains(&c) {
                points.push(c);
            }
        }
        let two_torsion = points.iter().filter(|p| short.order(p, 2) == Some(2)).count();
        let n = points.len() as u32;
        let group = if two_torsion == 3 {
            TorsionGroup::new(2, n / 2)
        } else {
            TorsionGroup::new(1, n)
        };
        let mut mapped: Vec<Point> = points.iter().map(|p| iso.to_source(p)).collect();
        mapped.sort();
        (group, mapped)
    }

    /// A model `y^2 = x(x^2 + b x + d)` moving the rational 2-torsion point
    /// with x-coordinate `root` (on the completed-square model) to (0, 0).
    pub fn two_torsion_model_at(&self, root: &Rational) -> Result<TwoTorsionModel> {
        let g = self.two_division_poly().scale(&Rational::new(1.into(), 4.into()));
        if !g.eval(root).is_zero() {
            return Err(Error::Input(format!("{root} is not a root of the 2-division cubic {g}")));
        }
        let b = rat(3) * root + &self.b2 / rat(4);
        let d = rat(3) * root * root + &self.b2 / rat(2) * root + &self.b4 / rat(2);
        Ok(TwoTorsionModel { b, d, shift: root.clone(), a1: self.a1.clone(), a3: self.a3.clone() })
    }

    /// The 2-torsion model at the smallest rational 2-torsion x-coordinate.
    pub fn two_torsion_model(&self) -> Result<TwoTorsionModel> {
        let g = self.two_division_poly().scale(&Rational::new(1.into(), 4.into()));
        let roots = rational_roots(&g).expect("nonzero cubic");
        match roots.first() {
            Some(r) => self.two_torsion_model_at(r),
            None => Err(Error::NoTwoTorsion(g.to_string())),
        }
    }
}

fn short_model_trace(a: &BigInt, b: &BigInt, p: u64) -> Option<i64> {
    if p < 5 {
        return None;
    }
    let pm = BigInt::from(p);
    let a = u64::try_from(a.mod_floor(&pm)).unwrap();
    let b = u64::try_from(b.mod_floor(&pm)).unwrap();
    let disc = (4 * (a * a % p) % p * a % p + 27 * (b * b % p)) % p;
    if disc == 0 {
        return None;
    }
    let mut count: i64 = 1;
    let half = (p - 1) / 2;
    for x in 0..p {
        let rhs = ((x * x % p * x) % p + a * x % p + b) % p;
        if rhs == 0 {
            count += 1;
        } else if qab_arith::integer::pow_mod_u64(rhs, half, p) == 1 {
            count += 2;
        }
    }
    Some(p as i64 + 1 - count)
}

fn small_prime_divisors(n: &BigInt) -> Vec<BigInt> {
    if n.is_zero() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut rest = n.abs();
    for p in qab_arith::integer::primes_below(10_000) {
        let pb = BigInt::from(p);
        if (&rest % &pb).is_zero() {
            out.push(pb.clone());
            while (&rest % &pb).is_zero() {
                rest /= &pb;
            }
        }
    }
    if !rest.is_one() && rest.bits() <= 128 {
        for (p, _) in factor_integer(&rest) {
            out.push(BigInt::from(p));
        }
    }
    out
}

/// Positive integers `y` with `y^2 | n`.
fn square_divisor_roots(n: &BigInt) -> Vec<BigInt> {
    let mut out = vec![BigInt::one()];
    for (p, e) in factor_integer(n) {
        let p = BigInt::from(p);
        let mut next = Vec::new();
        for y in &out {
            let mut pk = BigInt::one();
            for _ in 0..=(e / 2) {
                next.push(y * &pk);
                pk *= &p;
            }
        }
        out = next;
    }
    out.sort();
    out
}

impl fmt::Display for RationalCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}, {}, {}]", self.a1, self.a2, self.a3, self.a4, self.a6)
    }
}

impl fmt::Debug for RationalCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalCurve{self}")
    }
}

/// Curve with the given j-invariant: `y^2 = x^3 + 1` for `j = 0`,
/// `y^2 = x^3 + x` for `j = 1728`, otherwise
/// `y^2 + xy = x^3 - 36/(j - 1728) x - 1/(j - 1728)`.
pub fn curve_from_j(j: &Rational) -> RationalCurve {
    if j.is_zero() {
        return RationalCurve::from_ints([0, 0, 0, 0, 1]).unwrap();
    }
    if *j == rat(1728) {
        return RationalCurve::from_ints([0, 0, 0, 1, 0]).unwrap();
    }
    let k = j - rat(1728);
    RationalCurve::new(rat(1), rat(0), rat(0), rat(-36) / &k, rat(-1) / &k).expect("nonsingular for j != 0, 1728")
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point {
    Infinity,
    Affine(Rational, Rational),
}

impl Point {
    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }

    pub fn affine(x: Rational, y: Rational) -> Self {
        Point::Affine(x, y)
    }

    pub fn x(&self) -> Option<&Rational> {
        match self {
            Point::Infinity => None,
            Point::Affine(x, _) => Some(x),
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Infinity => write!(f, "O"),
            Point::Affine(x, y) => write!(f, "({x}, {y})"),
        }
    }
}

/// `y^2 = x(x^2 + b x + d)` together with the data to return to the source
/// model: a point `(X, Y)` here is `(X + shift, Y - (a1 (X + shift) + a3)/2)`
/// on the source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoTorsionModel {
    pub b: Rational,
    pub d: Rational,
    pub shift: Rational,
    pub a1: Rational,
    pub a3: Rational,
}

impl TwoTorsionModel {
    pub fn curve(&self) -> RationalCurve {
        RationalCurve::new(rat(0), self.b.clone(), rat(0), self.d.clone(), rat(0)).expect("nonsingular model")
    }

    pub fn to_source(&self, p: &Point) -> Point {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => {
                let xs = x + &self.shift;
                let ys = y - (&self.a1 * &xs + &self.a3) / rat(2);
                Point::Affine(xs, ys)
            }
        }
    }
}

/// The isomorphism between a model and a short model `y^2 = x^3 + A x + B`
/// of it: `x_short = u^2 (36 x + 3 b2)`, `y_short = u^3 108 (2y + a1 x + a3)`.
pub struct ShortIsomorphism {
    u2: Rational,
    u3: Rational,
    a1: Rational,
    a3: Rational,
    b2: Rational,
}

impl ShortIsomorphism {
    pub fn between(source: &RationalCurve, short: &RationalCurve) -> Self {
        let base = source.short_model();
        // short = base scaled by u: A = u^4 A0.
        let u2 = if !base.a4.is_zero() {
            let r = &short.a4 / &base.a4;
            if !base.a6.is_zero() {
                (&short.a6 / &base.a6) / &r
            } else {
                exact_root(&r, 2).expect("fourth power ratio")
            }
        } else {
            exact_root(&(&short.a6 / &base.a6), 3).expect("sixth power ratio")
        };
        let u = exact_root(&u2, 2).unwrap_or_else(|| exact_root(&(-&u2), 2).expect("square scaling"));
        let u3 = &u2 * &u;
        ShortIsomorphism { u2, u3, a1: source.a1.clone(), a3: source.a3.clone(), b2: source.b2.clone() }
    }

    pub fn to_short(&self, p: &Point) -> Point {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => Point::Affine(
                &self.u2 * (rat(36) * x + rat(3) * &self.b2),
                &self.u3 * rat(108) * (rat(2) * y + &self.a1 * x + &self.a3),
            ),
        }
    }

    pub fn to_source(&self, p: &Point) -> Point {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine(xs, ys) => {
                let x = (xs / &self.u2 - rat(3) * &self.b2) / rat(36);
                let t = ys / &self.u3 / rat(108);
                let y = (t - &self.a1 * &x - &self.a3) / rat(2);
                Point::Affine(x, y)
            }
        }
    }

    /// Scale factor on x-coordinates: `x_short = u2 * 36 * x + const`.
    pub fn x_scale(&self) -> Rational {
        &self.u2 * rat(36)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use qab_arith::ratio;

    #[test]
    fn invariants_of_standard_curves() {
        let e = RationalCurve::from_ints([0, 0, 0, 0, 1]).unwrap();
        assert_eq!(e.disc, rat(-432));
        assert_eq!(e.j, rat(0));
        let e = RationalCurve::from_ints([0, 0, 0, 1, 0]).unwrap();
        assert_eq!(e.disc, rat(-64));
        assert_eq!(e.j, rat(1728));
        assert!(matches!(RationalCurve::from_ints([0, 0, 0, 0, 0]), Err(Error::Singular(_))));
    }

    #[test]
    fn j_round_trip() {
        for j in [ratio(-4096, 11), ratio(7, 3), rat(1), rat(-1)] {
            assert_eq!(curve_from_j(&j).j, j);
        }
        assert_eq!(curve_from_j(&rat(0)).a_invariants()[4], rat(1));
        assert_eq!(curve_from_j(&rat(1728)).a_invariants()[3], rat(1));
    }

    #[test]
    fn twists() {
        let e = RationalCurve::from_ints([0, 0, 0, -1, 0]).unwrap();
        for d in [-1i64, 2, -2, 3, -3, 5] {
            let t = e.quadratic_twist(&BigInt::from(d)).unwrap();
            assert_eq!(t.j, e.j);
            let back = t.quadratic_twist(&BigInt::from(d)).unwrap();
            assert!(back.is_isomorphic(&e));
        }
        assert!(e.quadratic_twist(&BigInt::one()).unwrap().is_isomorphic(&e));
        assert!(e.quadratic_twist(&BigInt::from(12)).is_err());
        // y^2 = x^3 - x and its twist by -1 are isomorphic (CM by i), by 2 not.
        assert!(!e.quadratic_twist(&BigInt::from(2)).unwrap().is_isomorphic(&e));
    }

    #[test]
    fn two_torsion_models() {
        let e = RationalCurve::from_ints([0, 0, 0, -1, 0]).unwrap();
        let m = e.two_torsion_model_at(&rat(0)).unwrap();
        assert_eq!((m.b.clone(), m.d.clone()), (rat(0), rat(-1)));
        let m = e.two_torsion_model_at(&rat(1)).unwrap();
        assert_eq!((m.b.clone(), m.d.clone()), (rat(3), rat(2)));
        assert_eq!(m.curve().j, e.j);
        let e = RationalCurve::from_ints([0, 0, 0, 0, 1]).unwrap();
        let m = e.two_torsion_model().unwrap();
        assert_eq!((m.b, m.d), (rat(-3), rat(3)));
        let e = RationalCurve::from_ints([0, 0, 0, 0, 2]).unwrap();
        assert!(matches!(e.two_torsion_model(), Err(Error::NoTwoTorsion(_))));
    }

    #[test]
    fn group_law() {
        let e = RationalCurve::from_ints([0, 0, 0, -1, 0]).unwrap();
        let p = Point::affine(rat(0), rat(0));
        assert_eq!(e.add(&p, &Point::Infinity), p);
        assert!(e.multiply(&p, 2).is_infinity());
        let e = RationalCurve::from_ints([0, 1, 0, -1, 0]).unwrap();
        let q = Point::affine(rat(1), rat(1));
        assert!(e.contains(&q));
        assert_eq!(6 % e.order(&q, 12).unwrap(), 0);
    }

    #[test]
    fn torsion_of_small_curves() {
        let e = RationalCurve::from_ints([0, 1, 0, -1, 0]).unwrap();
        let (g, pts) = e.rational_torsion();
        assert_eq!(pts.len(), 6);
        assert_eq!(g, TorsionGroup::new(1, 6));
        let e = RationalCurve::from_ints([0, 2, 0, -3, 0]).unwrap();
        let (g, pts) = e.rational_torsion();
        assert_eq!(pts.len(), 8);
        assert_eq!(g, TorsionGroup::new(2, 4));
        let e = RationalCurve::from_ints([0, 0, 0, 0, -2]).unwrap();
        assert_eq!(e.rational_torsion().0, TorsionGroup::trivial());
        // Non-short model: 11a3 = [0,-1,1,0,0] has Z/5.
        let e = RationalCurve::from_ints([0, -1, 1, 0, 0]).unwrap();
        let (g, pts) = e.rational_torsion();
        assert_eq!(g, TorsionGroup::new(1, 5));
        assert!(pts.iter().all(|p| e.contains(p)));
    }

    #[test]
    fn division_polynomial_torsion_agrees_with_lutz_nagell() {
        let curves: [[i64; 5]; 10] = [
            [0, 1, 0, -1, 0],
            [0, 2, 0, -3, 0],
            [0, -1, 1, 0, 0],
            [0, -1, 1, -10, -20],
            [1, 0, 1, 4, -6],
            [1, 1, 1, -10, -10],
            [1, -1, 1, -3, 3],
            [0, 0, 1, 0, 0],
            [1, 0, 0, -45, 81],
            [1, 1, 1, 35, -28],
        ];
        for a in curves {
            let e = RationalCurve::from_ints(a).unwrap();
            assert_eq!(e.rational_torsion(), e.rational_torsion_lutz_nagell(), "{a:?}");
        }
    }

    #[test]
    fn isomorphism_test_cases() {
        let e = curve_from_j(&ratio(-4096, 11));
        assert!(e.is_isomorphic(&e.short_model()));
        assert!(e.is_isomorphic(&e.integral_short_model()));
        let j0 = RationalCurve::from_ints([0, 0, 1, 0, -7]).unwrap();
        assert!(j0.is_isomorphic(&j0.integral_short_model()));
        let other = RationalCurve::from_ints([0, 0, 1, 0, 0]).unwrap();
        assert!(!j0.is_isomorphic(&other));
    }

    #[test]
    fn frobenius_traces_of_11a1() {
        // 11a1 = [0,-1,1,-10,-20]: a_2 = -2, a_3 = -1, a_5 = 1, a_7 = -2, a_13 = 4.
        let e = RationalCurve::from_ints([0, -1, 1, -10, -20]).unwrap();
        assert_eq!(e.trace_of_frobenius(5), Some(1));
        assert_eq!(e.trace_of_frobenius(7), Some(-2));
        assert_eq!(e.trace_of_frobenius(13), Some(4));
        assert_eq!(e.trace_of_frobenius(11), None);
    }
}
