//! Is the field generated by a torsion point abelian over Q?
//!
//! The closed-form classifiers handle cubics and biquadratic quartics. The
//! general tester works on an irreducible `f` of degree `n` with root field
//! `K = Q(t)`:
//!
//! 1. equal splitting degrees modulo 20 unramified primes (a normal field
//!    splits with equal degrees everywhere it is unramified);
//! 2. for unramified primes `q`, Hensel-lift `t^q mod (f, q)` to a root of `f`
//!    in `K`. When `K` is abelian this is the Frobenius at `q`, an honest root
//!    of `f` in `K`, and at the precision chosen below the lift *is* that root.
//!    A lift that is not a root therefore proves `K` is not abelian;
//! 3. collect lifts until they generate `n` distinct roots, and require the
//!    generators to commute.
//!
//! Everything that enters a verdict is checked exactly.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use qab_arith::integer::primes_below;
use qab_arith::modp::{self, PolyP};
use qab_arith::{
    factor_over_q, factors_up_to_degree, is_irreducible, is_square, rational_roots, resultant, BiPoly, Rational,
    UniPoly, Var, ZPoly,
};
use serde::Serialize;

use crate::curve::{Point, RationalCurve, TwoTorsionModel};
use crate::divpoly::primitive_part;
use crate::error::{Error, Result};
use crate::report::ser_poly;

/// Number of primes in the splitting-degree prefilter.
pub const PREFILTER_PRIMES: usize = 20;
/// Primes tried for Frobenius lifts before giving up.
pub const PRIME_BUDGET: usize = 3000;
/// Default caps on the degree of a tested field.
pub const ORDER4_CAP: usize = 12;
pub const ORDER8_CAP: usize = 24;
pub const FULL_LEVEL_CAP: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CubicClass {
    Split,
    OneRoot,
    IrreducibleSquareDisc,
    IrreducibleNonsquareDisc,
}

impl CubicClass {
    pub fn is_abelian(self) -> bool {
        self != CubicClass::IrreducibleNonsquareDisc
    }

    /// Order of the Galois group of the splitting field.
    pub fn group_order(self) -> usize {
        match self {
            CubicClass::Split => 1,
            CubicClass::OneRoot => 2,
            CubicClass::IrreducibleSquareDisc => 3,
            CubicClass::IrreducibleNonsquareDisc => 6,
        }
    }
}

pub fn cubic_class(f: &UniPoly) -> Result<CubicClass> {
    if f.is_zero() || f.degree() != 3 {
        return Err(Error::Input(format!("{f} is not a cubic")));
    }
    if !f.is_squarefree() {
        return Err(Error::Input(format!("{f} is not squarefree")));
    }
    Ok(match rational_roots(f)?.len() {
        3 => CubicClass::Split,
        1 => CubicClass::OneRoot,
        _ if is_square(&f.discriminant()) => CubicClass::IrreducibleSquareDisc,
        _ => CubicClass::IrreducibleNonsquareDisc,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum QuarticClass {
    V,
    C4,
    D4,
}

impl QuarticClass {
    pub fn is_abelian(self) -> bool {
        self != QuarticClass::D4
    }
}

/// Galois group of the irreducible quartic `X^4 + b X^2 + d`.
pub fn biquadratic_quartic_class(b: &Rational, d: &Rational) -> Result<QuarticClass> {
    let f = UniPoly::new(vec![d.clone(), Rational::zero(), b.clone(), Rational::zero(), Rational::one()]);
    if !is_irreducible(&f) {
        return Err(Error::Input(format!("{f} is reducible")));
    }
    let four_d = Rational::from_integer(BigInt::from(4)) * d;
    Ok(if is_square(d) {
        QuarticClass::V
    } else if is_square(&((b * b - four_d) * d)) {
        QuarticClass::C4
    } else {
        QuarticClass::D4
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Decision {
    Abelian,
    NonAbelian,
    UndecidedAtCap,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerdictReason {
    NormalityPrefilterFail,
    FrobeniusLiftNotARoot,
    NoncommutingAutomorphisms,
    DegreeCap,
    PrimeBudget,
}

#[derive(Clone, Debug, Serialize)]
pub struct AbelianityVerdict {
    pub decision: Decision,
    /// The monic integral polynomial that was tested; same root field as the input.
    #[serde(serialize_with = "ser_poly")]
    pub polynomial: UniPoly,
    pub degree: usize,
    /// Order of the Galois group, when abelian.
    pub order: Option<usize>,
    pub reason: Option<VerdictReason>,
    pub witness_prime: Option<u64>,
    /// Generators of the automorphism group as polynomials in the root `t`
    /// of `polynomial` (abelian case only).
    #[serde(skip)]
    pub generators: Vec<UniPoly>,
}

impl AbelianityVerdict {
    pub fn is_abelian(&self) -> bool {
        self.decision == Decision::Abelian
    }

    fn abelian(polynomial: UniPoly, generators: Vec<UniPoly>) -> Self {
        let degree = polynomial.degree();
        AbelianityVerdict {
            decision: Decision::Abelian,
            polynomial,
            degree,
            order: Some(degree),
            reason: None,
            witness_prime: None,
            generators,
        }
    }

    fn rejected(polynomial: UniPoly, decision: Decision, reason: VerdictReason, witness: Option<u64>) -> Self {
        let degree = polynomial.degree();
        AbelianityVerdict { decision, polynomial, degree, order: None, reason: Some(reason), witness_prime: witness, generators: Vec::new() }
    }
}

/// `lc^(n-1) f(y / lc)` for the primitive integer multiple of `f`.
fn monic_integral(f: &UniPoly) -> ZPoly {
    let (_, z) = f.primitive_integer();
    let n = z.degree();
    let lc = z.leading_coeff();
    let mut out = vec![BigInt::zero(); n + 1];
    out[n] = BigInt::one();
    let mut pw = BigInt::one();
    for i in (0..n).rev() {
        out[i] = z.coeff(i) * &pw;
        pw *= &lc;
    }
    ZPoly::new(out)
}

fn to_unipoly(coeffs: &[BigInt], den: &BigInt) -> UniPoly {
    UniPoly::new(coeffs.iter().map(|c| Rational::new(c.clone(), den.clone())).collect())
}

fn reduce_modp(coeffs: &[BigInt], den: &BigInt, p: u64) -> PolyP {
    let pb = BigInt::from(p);
    let dinv = modp::inv_mod(u64::try_from(den.mod_floor(&pb)).unwrap(), p);
    let mut out: PolyP =
        coeffs.iter().map(|c| u64::try_from(c.mod_floor(&pb)).unwrap() * dinv % p).collect();
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

/// `a(b) mod (h, p)`.
fn compose_modp(a: &PolyP, b: &PolyP, h: &PolyP, p: u64) -> PolyP {
    let mut acc: PolyP = Vec::new();
    for c in a.iter().rev() {
        acc = modp::rem(&modp::add(&modp::mul(&acc, b, p), &vec![*c], p), h, p);
    }
    acc
}

/// Arithmetic in `(Z / m)[t] / (h)` for monic `h`.
struct Ring<'a> {
    h: &'a [BigInt],
    m: BigInt,
}

impl Ring<'_> {
    fn reduce(&self, mut a: Vec<BigInt>) -> Vec<BigInt> {
        let n = self.h.len() - 1;
        for i in (n..a.len()).rev() {
            let c = std::mem::take(&mut a[i]).mod_floor(&self.m);
            if !c.is_zero() {
                for j in 0..n {
                    a[i - n + j] -= &c * &self.h[j];
                }
            }
        }
        a.truncate(n);
        a.resize(n, BigInt::zero());
        for c in a.iter_mut() {
            *c = c.mod_floor(&self.m);
        }
        a
    }

    fn mul(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        self.reduce(out)
    }

    /// `poly(r)` for a polynomial with integer coefficients.
    fn eval(&self, poly: &[BigInt], r: &[BigInt]) -> Vec<BigInt> {
        let n = self.h.len() - 1;
        let mut acc = vec![BigInt::zero(); n];
        for c in poly.iter().rev() {
            acc = self.mul(&acc, r);
            acc[0] = (&acc[0] + c).mod_floor(&self.m);
        }
        acc
    }

    fn sub(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        a.iter().zip(b).map(|(x, y)| (x - y).mod_floor(&self.m)).collect()
    }
}

fn symmetric(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn padded(p: &PolyP, n: usize) -> Vec<BigInt> {
    (0..n).map(|i| BigInt::from(p.get(i).copied().unwrap_or(0))).collect()
}

struct Tester {
    h: ZPoly,
    hu: UniPoly,
    n: usize,
    disc: BigInt,
    dh: Vec<BigInt>,
    /// Exceeds twice every numerator `disc * c_k` of a root `sum c_k t^k`.
    target: BigInt,
    check_prime: u64,
}

impl Tester {
    fn new(h: ZPoly) -> Self {
        let n = h.degree();
        let hu = h.to_unipoly();
        let disc = h.resultant(&h.derivative()).abs();
        let dh = h.derivative().coeffs().to_vec();
        // Cramer and Hadamard: with |roots| <= B, a root of h in K written on
        // the power basis has |c_k| <= n^(n/2) B^(n(n-1)/2 + 1) / sqrt(disc),
        // and disc * c_k is an integer.
        let b = h.root_bound().max(BigUint::one());
        let nn = BigUint::from(n).pow(n as u32).sqrt() + 1u32;
        let e = (n * (n - 1) / 2 + 1) as u32;
        let bound = (disc.magnitude().sqrt() + 1u32) * nn * b.pow(e);
        let target = BigInt::from(bound) * 2 + 1;
        let check_prime = modp::word_primes()
            .find(|&p| !(&disc % BigInt::from(p)).is_zero())
            .expect("a word prime not dividing the discriminant");
        Tester { h, hu, n, disc, dh, target, check_prime }
    }

    fn good_primes(&self) -> impl Iterator<Item = u64> + '_ {
        primes_below(1 << 20).into_iter().skip(1).filter(move |&p| !(&self.disc % BigInt::from(p)).is_zero())
    }

    fn prefilter(&self) -> Option<u64> {
        for q in self.good_primes().take(PREFILTER_PRIMES) {
            let degs = modp::factor_degrees(&self.h.to_modp(q), q);
            if degs.iter().any(|&d| d != degs[0]) {
                return Some(q);
            }
        }
        None
    }

    fn is_root_modp(&self, r: &PolyP, p: u64) -> bool {
        let hp = self.h.to_modp(p);
        compose_modp(&hp, r, &hp, p).is_empty()
    }

    /// Hensel lift of the root `c` of `h` in `F_q[t]/(h)`. Returns the
    /// numerators over `disc` of the lifted root when it is a root of `h` in
    /// `K`, `None` when the lift at full precision is not.
    fn lift(&self, c: &PolyP, q: u64) -> Option<Vec<BigInt>> {
        let hq = self.h.to_modp(q);
        let dq: PolyP = self.h.derivative().to_modp(q);
        let dc = compose_modp(&dq, c, &hq, q);
        let (g, s, _) = modp::ext_gcd(&dc, &hq, q);
        assert_eq!(g, vec![1], "h' is a unit modulo an unramified prime");
        let hc = self.h.coeffs();
        let mut r = padded(c, self.n);
        let mut w = padded(&s, self.n);
        let mut m = BigInt::from(q);
        loop {
            m = &m * &m;
            let ring = Ring { h: hc, m: m.clone() };
            let hr = ring.eval(hc, &r);
            r = ring.sub(&r, &ring.mul(&hr, &w));
            let dr = ring.eval(&self.dh, &r);
            let two: Vec<BigInt> = (0..self.n).map(|i| BigInt::from(if i == 0 { 2 } else { 0 })).collect();
            w = ring.mul(&w, &ring.sub(&two, &ring.mul(&dr, &w)));
            let nums: Vec<BigInt> = r.iter().map(|x| symmetric(&(x * &self.disc), &m)).collect();
            let done = m > self.target;
            if done || self.is_root_modp(&reduce_modp(&nums, &self.disc, self.check_prime), self.check_prime) {
                let cand = to_unipoly(&nums, &self.disc);
                if self.hu.compose_mod(&cand, &self.hu).is_zero() {
                    return Some(nums);
                }
                if done {
                    return None;
                }
            }
        }
    }

    fn run(&self) -> AbelianityVerdict {
        let poly = self.hu.clone();
        if let Some(q) = self.prefilter() {
            return AbelianityVerdict::rejected(poly, Decision::NonAbelian, VerdictReason::NormalityPrefilterFail, Some(q));
        }
        let ell = self.check_prime;
        let h_ell = self.h.to_modp(ell);
        let mut gens: Vec<Vec<BigInt>> = Vec::new();
        let mut gens_ell: Vec<PolyP> = Vec::new();
        let mut group: Vec<PolyP> = vec![vec![0, 1]];
        for q in self.good_primes().take(PRIME_BUDGET) {
            if group.len() == self.n {
                break;
            }
            let hq = self.h.to_modp(q);
            let c = modp::pow_mod(&vec![0, 1], &BigUint::from(q), &hq, q);
            if closure(&gens.iter().map(|g| reduce_modp(g, &self.disc, q)).collect::<Vec<_>>(), &hq, q).contains(&c) {
                continue;
            }
            let Some(root) = self.lift(&c, q) else {
                return AbelianityVerdict::rejected(poly, Decision::NonAbelian, VerdictReason::FrobeniusLiftNotARoot, Some(q));
            };
            let r_ell = reduce_modp(&root, &self.disc, ell);
            // Distinct roots of h in K stay distinct modulo an unramified
            // prime, so commuting modulo ell is commuting in K.
            for g in &gens_ell {
                if compose_modp(g, &r_ell, &h_ell, ell) != compose_modp(&r_ell, g, &h_ell, ell) {
                    return AbelianityVerdict::rejected(
                        poly,
                        Decision::NonAbelian,
                        VerdictReason::NoncommutingAutomorphisms,
                        Some(q),
                    );
                }
            }
            gens.push(root);
            gens_ell.push(r_ell);
            group = closure(&gens_ell, &h_ell, ell);
        }
        if group.len() == self.n {
            let generators = gens.iter().map(|g| to_unipoly(g, &self.disc)).collect();
            AbelianityVerdict::abelian(poly, generators)
        } else {
            AbelianityVerdict::rejected(poly, Decision::UndecidedAtCap, VerdictReason::PrimeBudget, None)
        }
    }
}

/// The set generated by `gens` under composition, starting from `t`.
fn closure(gens: &[PolyP], h: &PolyP, p: u64) -> Vec<PolyP> {
    let mut out: Vec<PolyP> = vec![modp::rem(&vec![0, 1], h, p)];
    let mut i = 0;
    while i < out.len() {
        for g in gens {
            let next = compose_modp(g, &out[i], h, p);
            if !out.contains(&next) {
                out.push(next);
            }
        }
        i += 1;
    }
    out
}

/// Is the root field of the irreducible `f` an abelian extension of Q?
pub fn is_abelian_field(f: &UniPoly, cap: usize) -> Result<AbelianityVerdict> {
    if f.is_zero() || f.degree() == 0 {
        return Err(Error::Input("constant polynomial has no root field".into()));
    }
    if !is_irreducible(f) {
        return Err(Error::Input(format!("{f} is reducible")));
    }
    let h = monic_integral(f);
    let n = h.degree();
    if n == 1 {
        return Ok(AbelianityVerdict::abelian(h.to_unipoly(), Vec::new()));
    }
    if n > cap {
        return Ok(AbelianityVerdict::rejected(h.to_unipoly(), Decision::UndecidedAtCap, VerdictReason::DegreeCap, None));
    }
    Ok(Tester::new(h).run())
}

#[derive(Clone, Debug, Serialize)]
pub struct PointFieldVerdict {
    #[serde(serialize_with = "ser_poly")]
    pub x_factor: UniPoly,
    pub x_field: AbelianityVerdict,
    /// Whether `y` lies in `Q(x)`; unknown when the x-field already fails.
    pub y_in_x_field: Option<bool>,
    /// The `c` of the primitive element `x + c y`, when one was needed.
    pub multiplier: Option<u32>,
    pub point_field: AbelianityVerdict,
}

impl PointFieldVerdict {
    pub fn is_abelian(&self) -> bool {
        self.point_field.is_abelian()
    }

    pub fn decision(&self) -> Decision {
        self.point_field.decision
    }
}

/// Verdict for `Q(x(P), y(P))` where `x(P)` is a root of the irreducible `g`.
pub fn point_field_abelian(e: &RationalCurve, g: &UniPoly, cap: usize) -> Result<PointFieldVerdict> {
    if g.is_zero() || g.degree() == 0 || !is_irreducible(g) {
        return Err(Error::Input(format!("{g} is not an irreducible x-polynomial")));
    }
    let g = g.monic();
    let d = g.degree();
    let delta = e.two_division_poly();
    let x_field = is_abelian_field(&g, cap)?;
    let same = |x_field: AbelianityVerdict, y_in: Option<bool>, multiplier: Option<u32>| PointFieldVerdict {
        x_factor: g.clone(),
        point_field: x_field.clone(),
        x_field,
        y_in_x_field: y_in,
        multiplier,
    };
    // y is a root of Y^2 + (a1 x + a3) Y - F(x), of discriminant delta(x).
    if delta.rem(&g).is_zero() {
        return Ok(same(x_field, Some(true), None));
    }
    if d == 1 {
        let x0 = -g.coeff(0);
        let dv = delta.eval(&x0);
        if is_square(&dv) {
            return Ok(same(x_field, Some(true), None));
        }
        let quad = UniPoly::new(vec![-dv, Rational::zero(), Rational::one()]);
        let point_field = is_abelian_field(&quad, cap)?;
        return Ok(PointFieldVerdict { x_factor: g.clone(), x_field, y_in_x_field: Some(false), multiplier: None, point_field });
    }
    if !x_field.is_abelian() {
        return Ok(same(x_field, None, None));
    }
    let [a1, a2, a3, a4, a6] = e.a_invariants();
    for c in 1u32..=64 {
        let cr = Rational::from_integer(BigInt::from(c));
        // c^2 (y^2 + (a1 x + a3) y - F(x)) with y = (z - x) / c
        let c2 = &cr * &cr;
        let terms = vec![
            (2, 0, Rational::one() - &cr * &a1),
            (1, 1, Rational::from_integer(BigInt::from(-2)) + &cr * &a1),
            (0, 2, Rational::one()),
            (1, 0, -(&cr * &a3)),
            (0, 1, &cr * &a3),
            (3, 0, -c2.clone()),
            (2, 0, -(&c2 * &a2)),
            (1, 0, -(&c2 * &a4)),
            (0, 0, -(&c2 * &a6)),
        ];
        let h = BiPoly::from_terms(&terms);
        let r = resultant(&BiPoly::from_x(&g), &h, Var::X)?;
        if r.degree() != 2 * d || !r.is_squarefree() {
            continue;
        }
        let small = factors_up_to_degree(&r, d)?;
        if small.iter().any(|(f, _)| f.degree() == d) {
            return Ok(same(x_field, Some(true), Some(c)));
        }
        let point_field = is_abelian_field(&r, cap)?;
        return Ok(PointFieldVerdict { x_factor: g.clone(), x_field, y_in_x_field: Some(false), multiplier: Some(c), point_field });
    }
    Err(Error::InvariantBreach(format!("no primitive element x + c y with c <= 64 for {g}")))
}

#[derive(Clone, Debug, Serialize)]
pub struct PointSearch {
    pub order: u32,
    pub found: bool,
    pub witness: Option<PointFieldVerdict>,
    /// Degrees of the irreducible factors of the primitive division polynomial.
    pub factor_degrees: Vec<usize>,
}

/// Is there a point of exact order `n` defined over Q^ab?
pub fn exists_abelian_point_of_order(e: &RationalCurve, n: u32, cap: usize) -> Result<PointSearch> {
    if ![2, 3, 4, 8].contains(&n) {
        return Err(Error::Input(format!("point search is for orders 2, 3, 4 and 8, not {n}")));
    }
    let prim = primitive_part(e, n)?;
    let factors = factor_over_q(&prim)?.factors;
    let factor_degrees: Vec<usize> = factors.iter().map(|(g, _)| g.degree()).collect();
    let mut undecided = Vec::new();
    for (g, _) in &factors {
        if g.degree() > cap {
            undecided.push(g.degree());
            continue;
        }
        let v = point_field_abelian(e, g, cap)?;
        match v.decision() {
            Decision::Abelian => {
                return Ok(PointSearch { order: n, found: true, witness: Some(v), factor_degrees });
            }
            Decision::UndecidedAtCap => undecided.push(v.point_field.degree),
            Decision::NonAbelian => {}
        }
    }
    if !undecided.is_empty() {
        return Err(Error::Undecided(format!(
            "order-{n} points: no abelian field found and fields of degree {undecided:?} exceed cap {cap}"
        )));
    }
    Ok(PointSearch { order: n, found: false, witness: None, factor_degrees })
}

/// Is `Q(E[n])` abelian? Checked point by point: the compositum of abelian
/// fields is abelian.
pub fn full_level_abelian(e: &RationalCurve, n: u32) -> Result<bool> {
    full_level_abelian_capped(e, n, FULL_LEVEL_CAP)
}

/// As [`full_level_abelian`] with an explicit cap on tested field degrees.
pub fn full_level_abelian_capped(e: &RationalCurve, n: u32, cap: usize) -> Result<bool> {
    if ![2, 3, 4, 5].contains(&n) {
        return Err(Error::Input(format!("full level test is for n = 2, 3, 4, 5, not {n}")));
    }
    for m in (2..=n).filter(|m| n.is_multiple_of(*m)) {
        let prim = primitive_part(e, m)?;
        for (g, _) in factor_over_q(&prim)?.factors {
            let v = point_field_abelian(e, &g, cap)?;
            match v.decision() {
                Decision::Abelian => {}
                Decision::NonAbelian => return Ok(false),
                Decision::UndecidedAtCap => {
                    return Err(Error::Undecided(format!("a {m}-torsion field of degree {} exceeds the cap", v.point_field.degree)))
                }
            }
        }
    }
    Ok(true)
}

/// The quartics whose roots give the square roots needed to halve `target`
/// on `y^2 = x(x^2 + b x + d)`.
pub fn halving_x_coordinates(model: &TwoTorsionModel, target: &Point) -> Result<Vec<UniPoly>> {
    let (b, d) = (&model.b, &model.d);
    let zero = Rational::zero;
    let one = Rational::one;
    match target {
        Point::Affine(x, y) if y.is_zero() && x.is_zero() => Ok(vec![UniPoly::new(vec![d.clone(), zero(), -b, zero(), one()])]),
        Point::Affine(x, y) if y.is_zero() && (x * x + b * x + d).is_zero() => {
            let four = Rational::from_integer(BigInt::from(4));
            Ok(vec![
                UniPoly::new(vec![d.clone(), zero(), b.clone(), zero(), one()]),
                UniPoly::new(vec![-(b * b - four * d), zero(), zero(), zero(), one()]),
            ])
        }
        _ => Err(Error::Input("target is not a point of order 2 on the model".into())),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Order4Quick {
    /// `d` or `(b^2 - 4d) d` is a nonzero square.
    YesNotFull,
    /// Neither is, but full 4-torsion is not excluded.
    NeedsFullCheck,
    /// No point of order 4 over Q^ab.
    No,
}

pub fn order4_over_qab_quick(model: &TwoTorsionModel) -> Order4Quick {
    let (b, d) = (&model.b, &model.d);
    let four = Rational::from_integer(BigInt::from(4));
    let twisted = (b * b - four * d) * d;
    let nonzero_square = |q: &Rational| !q.is_zero() && is_square(q);
    if nonzero_square(d) || nonzero_square(&twisted) {
        return Order4Quick::YesNotFull;
    }
    // Full 4-torsion needs (0,0) halved, i.e. X^4 - b X^2 + d abelian; when
    // it is irreducible neither square condition leaves D4.
    let quartic = UniPoly::new(vec![d.clone(), Rational::zero(), -b, Rational::zero(), Rational::one()]);
    if is_irreducible(&quartic) {
        Order4Quick::No
    } else {
        Order4Quick::NeedsFullCheck
    }
}
