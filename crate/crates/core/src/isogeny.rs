//! Rational isogenies of prime degree, isogeny classes and the multiset of
//! cyclic isogeny degrees.

use std::collections::{BTreeMap, BinaryHeap};
use std::cmp::Reverse;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use qab_arith::integer::prime_divisors;
use qab_arith::{factors_up_to_degree, parse_rational, rat, rational_roots, Rational, UniPoly};
use serde::Serialize;

use crate::curve::{curve_from_j, Point, RationalCurve, ShortIsomorphism};
use crate::divpoly::DivisionPolynomials;
use crate::error::{Error, Result};

/// Primes whose isogenies are found by factoring division polynomials.
pub const SEARCH_PRIMES: [u32; 5] = [2, 3, 5, 7, 13];
/// Primes whose isogenies are read off the finite j-table.
pub const SPORADIC_PRIMES: [u32; 7] = [11, 17, 19, 37, 43, 67, 163];
/// Degrees of cyclic rational isogenies that occur over Q.
pub const ADMISSIBLE_DEGREES: [u64; 26] =
    [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18, 19, 21, 25, 27, 37, 43, 67, 163];
pub const MAX_CLASS_SIZE: usize = 8;

/// Bound on primes used for Frobenius traces in the reducibility prefilter.
const TRACE_BOUND: u64 = 600;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KernelPolynomial {
    pub ell: u32,
    #[serde(serialize_with = "crate::report::ser_poly")]
    pub poly: UniPoly,
}

impl KernelPolynomial {
    pub fn expected_degree(ell: u32) -> usize {
        if ell == 2 {
            1
        } else {
            (ell as usize - 1) / 2
        }
    }
}

/// A normalized isogeny with its x-map `X = num / den` and codomain.
#[derive(Clone, Debug)]
pub struct Isogeny {
    pub domain: RationalCurve,
    pub codomain: RationalCurve,
    pub kernel: KernelPolynomial,
    pub x_num: UniPoly,
    pub x_den: UniPoly,
}

impl Isogeny {
    pub fn map_point(&self, p: &Point) -> Point {
        let (x, y) = match p {
            Point::Infinity => return Point::Infinity,
            Point::Affine(x, y) => (x, y),
        };
        let den = self.x_den.eval(x);
        if den.is_zero() {
            return Point::Infinity;
        }
        let xx = self.x_num.eval(x) / &den;
        // X' = (num' den - num den') / den^2
        let dx = (self.x_num.derivative().eval(x) * &den - self.x_num.eval(x) * self.x_den.derivative().eval(x))
            / (&den * &den);
        let e = &self.domain;
        let c = &self.codomain;
        let s = rat(2) * y + &e.a1 * x + &e.a3;
        let big_s = s * dx;
        let yy = (big_s - &c.a1 * &xx - &c.a3) / rat(2);
        Point::Affine(xx, yy)
    }
}

/// Sum of `h(r)` over the roots `r` of the monic polynomial `psi`, through
/// Newton's identities.
fn root_power_sum(psi: &UniPoly, h: &UniPoly) -> Rational {
    let n = psi.degree();
    let c = psi.coeffs();
    let mut p: Vec<Rational> = vec![Rational::from_integer(BigInt::from(n))];
    for k in 1..=h.degree() {
        let mut acc = Rational::zero();
        for i in 1..k.min(n + 1) {
            acc += &c[n - i] * &p[k - i];
        }
        if k <= n {
            acc += Rational::from_integer(BigInt::from(k)) * &c[n - k];
        }
        p.push(-acc);
    }
    h.coeffs().iter().zip(p.iter()).map(|(a, b)| a * b).sum()
}

/// Vélu's construction from a kernel polynomial, with the identity check
/// `F(x) X'(x)^2 = F'(X(x))` that certifies the kernel.
pub fn velu(e: &RationalCurve, k: &KernelPolynomial) -> Result<Isogeny> {
    let expected = KernelPolynomial::expected_degree(k.ell);
    if !k.poly.is_monic() || k.poly.degree() != expected {
        return Err(Error::NotKernel(format!(
            "{} is not a monic polynomial of degree {expected} for l = {}",
            k.poly, k.ell
        )));
    }
    let mut dp = DivisionPolynomials::new(e);
    let torsion = dp.torsion_x_poly(k.ell)?;
    if !k.poly.divides(&torsion) {
        return Err(Error::NotKernel(format!("{} does not divide the {}-division polynomial", k.poly, k.ell)));
    }
    velu_unchecked(e, k)
}

fn velu_unchecked(e: &RationalCurve, k: &KernelPolynomial) -> Result<Isogeny> {
    let psi = &k.poly;
    let x = UniPoly::x();
    let f = e.two_division_poly();
    let (t, w, x_num, x_den);
    if k.ell == 2 {
        let x0 = -psi.coeff(0);
        let tq = (rat(6) * &x0 * &x0 + &e.b2 * &x0 + &e.b4) / rat(2);
        w = &x0 * &tq;
        t = tq.clone();
        x_num = &(&x * psi) + &UniPoly::constant(tq);
        x_den = psi.clone();
    } else {
        let t_poly = UniPoly::new(vec![e.b4.clone(), e.b2.clone(), rat(6)]);
        let u_poly = f.clone();
        t = root_power_sum(psi, &t_poly);
        w = root_power_sum(psi, &(&u_poly + &(&x * &t_poly)));
        let dpsi = psi.derivative();
        let n_t = (&t_poly * &dpsi).rem(psi);
        let n_u = (&u_poly * &dpsi).rem(psi);
        let psi2 = psi * psi;
        x_num = &(&(&(&x * &psi2) + &(&n_t * psi)) + &(&n_u * &dpsi)) - &(&n_u.derivative() * psi);
        x_den = psi2;
    }
    let a4 = &e.a4 - rat(5) * &t;
    let a6 = &e.a6 - &e.b2 * &t - rat(7) * &w;
    let codomain = RationalCurve::new(e.a1.clone(), e.a2.clone(), e.a3.clone(), a4, a6)
        .map_err(|err| Error::NotKernel(format!("codomain degenerate: {err}")))?;
    // F(x) (P'Q - PQ')^2 = Q (4P^3 + B2 P^2 Q + 2 B4 P Q^2 + B6 Q^3)
    let (p, q) = (&x_num, &x_den);
    let wr = &(&p.derivative() * q) - &(p * &q.derivative());
    let lhs = &f * &(&wr * &wr);
    let c = &codomain;
    let p2 = p * p;
    let q2 = q * q;
    let inner = &(&(&(&p2 * p).scale(&rat(4)) + &(&p2 * q).scale(&c.b2)) + (&(p * &q2).scale(&(rat(2) * &c.b4))))
        + &(&q2 * q).scale(&c.b6);
    let rhs = q * &inner;
    if lhs != rhs {
        return Err(Error::NotKernel(format!("Vélu identity fails for {} (l = {})", psi, k.ell)));
    }
    Ok(Isogeny { domain: e.clone(), codomain, kernel: k.clone(), x_num: x_num.clone(), x_den: x_den.clone() })
}

/// Necessary condition for a rational `ell`-isogeny: every good Frobenius
/// has a characteristic polynomial with a root mod `ell`, so
/// `a_p^2 - 4p` is a square mod `ell`. Returns the first prime violating it.
pub fn frobenius_obstruction(traces: &[(u64, i64)], ell: u32) -> Option<u64> {
    let l = ell as i64;
    let squares: Vec<bool> = {
        let mut s = vec![false; ell as usize];
        for v in 0..l {
            s[((v * v) % l) as usize] = true;
        }
        s
    };
    traces
        .iter()
        .filter(|(p, _)| *p != ell as u64)
        .find(|(p, a)| !squares[(a * a - 4 * *p as i64).rem_euclid(l) as usize])
        .map(|(p, _)| *p)
}

/// One kernel polynomial per rational cyclic subgroup of order `ell`.
pub fn prime_isogenies(e: &RationalCurve, ell: u32) -> Result<Vec<KernelPolynomial>> {
    if !SEARCH_PRIMES.contains(&ell) {
        return Err(Error::Input(format!("kernel search supports l in {SEARCH_PRIMES:?}, got {ell}")));
    }
    if ell == 2 {
        let roots = rational_roots(&e.two_division_poly())?;
        return Ok(roots
            .iter()
            .map(|r| KernelPolynomial { ell, poly: UniPoly::linear_root(r) })
            .collect());
    }
    let traces = e.frobenius_traces(TRACE_BOUND);
    prime_isogenies_with_traces(e, ell, &traces)
}

fn prime_isogenies_with_traces(e: &RationalCurve, ell: u32, traces: &[(u64, i64)]) -> Result<Vec<KernelPolynomial>> {
    if frobenius_obstruction(traces, ell).is_some() {
        return Ok(Vec::new());
    }
    let short = e.integral_short_model();
    let iso = ShortIsomorphism::between(e, &short);
    let half = KernelPolynomial::expected_degree(ell);
    let prim = DivisionPolynomials::new(&short).primitive_part(ell)?;
    let small: Vec<UniPoly> = factors_up_to_degree(&prim, half)?.into_iter().map(|(g, _)| g).collect();
    // x_short = s x + c on the source model
    let s = iso.x_scale();
    let c = iso.to_short(&Point::Affine(rat(0), rat(0))).x().cloned().expect("affine");
    let to_source = UniPoly::new(vec![c, s]);
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    subsets_of_degree(&small, half, 0, &mut chosen, &mut |subset: &[usize]| {
        let mut product = UniPoly::one();
        for &i in subset {
            product = &product * &small[i];
        }
        let candidate = product.compose(&to_source).monic();
        let k = KernelPolynomial { ell, poly: candidate };
        if velu_unchecked(e, &k).is_ok() {
            out.push(k);
        }
    });
    out.sort_by(|a, b| a.poly.canonical_cmp(&b.poly));
    Ok(out)
}

fn subsets_of_degree(
    items: &[UniPoly],
    target: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]),
) {
    if target == 0 {
        visit(chosen);
        return;
    }
    for i in start..items.len() {
        let d = items[i].degree();
        if d <= target {
            chosen.push(i);
            subsets_of_degree(items, target - d, i + 1, chosen, visit);
            chosen.pop();
        }
    }
}

struct SporadicRow {
    ell: u32,
    j: Rational,
    partner_j: Rational,
    /// Twist relating `curve_from_j(partner_j)` to the isogenous curve of
    /// `curve_from_j(j)`.
    delta: OnceLock<Rational>,
}

fn sporadic_table() -> &'static [SporadicRow] {
    static TABLE: OnceLock<Vec<SporadicRow>> = OnceLock::new();
    TABLE.get_or_init(|| {
        include_str!("../data/sporadic_j.txt")
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| {
                let cols: Vec<&str> = l.split_whitespace().collect();
                SporadicRow {
                    ell: cols[0].parse().expect("prime"),
                    j: parse_rational(cols[1]).expect("rational j"),
                    partner_j: parse_rational(cols[2]).expect("rational j"),
                    delta: OnceLock::new(),
                }
            })
            .collect()
    })
}

/// The j-values of the finite table, as `(l, j, partner j)`.
pub fn sporadic_j_table() -> Vec<(u32, Rational, Rational)> {
    sporadic_table().iter().map(|r| (r.ell, r.j.clone(), r.partner_j.clone())).collect()
}

fn legendre(a: &BigInt, p: u64) -> i64 {
    let r = u64::try_from(a.mod_floor(&BigInt::from(p))).unwrap();
    if r == 0 {
        0
    } else if qab_arith::integer::pow_mod_u64(r, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}


/// Finds the squarefree `delta` with `a_p(E'_delta) = a_p(E)` for all small
/// good primes, excluding `delta = 1` when the partner has the same j.
fn determine_twist(row: &SporadicRow) -> Rational {
    let e = curve_from_j(&row.j);
    let partner = curve_from_j(&row.partner_j);
    let te: BTreeMap<u64, i64> = e.frobenius_traces(TRACE_BOUND).into_iter().collect();
    let tp: BTreeMap<u64, i64> = partner.frobenius_traces(TRACE_BOUND).into_iter().collect();
    // both base curves have good reduction away from 2, 3 and the primes of
    // j and j - 1728, so the twist is supported there
    let mut support: Vec<BigInt> = vec![BigInt::from(-1), BigInt::from(2), BigInt::from(3)];
    for j in [&row.j, &row.partner_j] {
        let k = j - rat(1728);
        for n in [j.numer(), j.denom(), k.numer(), k.denom()] {
            if n.is_zero() {
                continue;
            }
            for q in prime_divisors(n) {
                if !support.contains(&q) {
                    support.push(q);
                }
            }
        }
    }
    let mut matches = Vec::new();
    for mask in 0u32..(1 << support.len()) {
        let mut d = BigInt::one();
        for (i, q) in support.iter().enumerate() {
            if mask & (1 << i) != 0 {
                d *= q;
            }
        }
        if row.j == row.partner_j && d.is_one() {
            continue;
        }
        let ok = te.iter().all(|(p, a)| match tp.get(p) {
            Some(b) => {
                let chi = legendre(&d, *p);
                chi == 0 || *a == chi * b
            }
            None => true,
        });
        if ok {
            matches.push(d);
        }
    }
    assert_eq!(matches.len(), 1, "twist for the {}-isogeny from j = {} is not unique", row.ell, row.j);
    Rational::from_integer(matches.pop().unwrap())
}

/// `(l, partner j)` for each sporadic isogeny of `e` read from the j-table.
pub fn sporadic_isogeny(e: &RationalCurve) -> Vec<(u32, Rational)> {
    sporadic_table().iter().filter(|r| r.j == e.j).map(|r| (r.ell, r.partner_j.clone())).collect()
}

/// The codomain of the sporadic `ell`-isogeny of `e` (a model of it).
pub fn sporadic_partner(e: &RationalCurve, ell: u32) -> Option<RationalCurve> {
    let row = sporadic_table().iter().find(|r| r.ell == ell && r.j == e.j)?;
    let delta = row.delta.get_or_init(|| determine_twist(row));
    let base = curve_from_j(&row.j);
    // e is the twist of base by r
    let r = (&e.c6 * &base.c4) / (&base.c6 * &e.c4);
    let partner0 = curve_from_j(&row.partner_j);
    Some(partner0.twist_by_rational(&(r * delta)).expect("nonzero twist").integral_short_model())
}

#[derive(Clone, Debug, Serialize)]
pub struct IsogenyEdge {
    pub source: usize,
    pub target: usize,
    pub degree: u32,
    /// `None` for edges read from the sporadic j-table.
    pub kernel: Option<KernelPolynomial>,
}

#[derive(Clone, Debug)]
pub struct IsogenyClass {
    pub curves: Vec<RationalCurve>,
    pub edges: Vec<IsogenyEdge>,
    pub base: usize,
}

/// Breadth-first closure under prime-degree isogenies.
pub fn isogeny_class(e: &RationalCurve) -> Result<IsogenyClass> {
    let mut curves = vec![e.clone()];
    let mut edges = Vec::new();
    let mut next = 0;
    while next < curves.len() {
        let source = curves[next].clone();
        let traces = source.frobenius_traces(TRACE_BOUND);
        let mut found: Vec<(u32, RationalCurve, Option<KernelPolynomial>)> = Vec::new();
        for ell in SEARCH_PRIMES {
            let kernels = if ell == 2 {
                prime_isogenies(&source, 2)?
            } else {
                prime_isogenies_with_traces(&source, ell, &traces)?
            };
            for k in kernels {
                let iso = velu_unchecked(&source, &k)?;
                found.push((ell, iso.codomain, Some(k)));
            }
        }
        for (ell, _) in sporadic_isogeny(&source) {
            let partner = sporadic_partner(&source, ell).expect("row exists");
            found.push((ell, partner, None));
        }
        for (ell, target, kernel) in found {
            let idx = match curves.iter().position(|c| c.is_isomorphic(&target)) {
                Some(i) => i,
                None => {
                    curves.push(target.integral_short_model());
                    curves.len() - 1
                }
            };
            if curves.len() > MAX_CLASS_SIZE {
                return Err(Error::InvariantBreach(format!(
                    "isogeny class of {e} exceeds {MAX_CLASS_SIZE} curves"
                )));
            }
            edges.push(IsogenyEdge { source: next, target: idx, degree: ell, kernel });
        }
        next += 1;
    }
    Ok(IsogenyClass { curves, edges, base: 0 })
}

/// Sorted multiset of cyclic isogeny degrees from the base curve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclicDegrees {
    pub degrees: Vec<u64>,
}

impl CyclicDegrees {
    pub fn new(mut degrees: Vec<u64>) -> Self {
        degrees.sort_unstable();
        CyclicDegrees { degrees }
    }

    pub fn max(&self) -> u64 {
        *self.degrees.last().unwrap_or(&1)
    }

    pub fn contains(&self, d: u64) -> bool {
        self.degrees.contains(&d)
    }

    /// The degrees that are powers of `p` (including 1).
    pub fn p_part(&self, p: u64) -> Vec<u64> {
        self.degrees.iter().copied().filter(|&d| is_power_of(d, p)).collect()
    }

    pub fn two_part(&self) -> Vec<u64> {
        self.p_part(2)
    }

    /// `C_p`: number of rational cyclic subgroups of `p`-power order.
    pub fn count(&self, p: u64) -> usize {
        self.p_part(p).len()
    }

    /// `C_p` for each prime dividing some degree, plus `C_2`, `C_3`.
    pub fn counts(&self) -> BTreeMap<u64, usize> {
        let mut out = BTreeMap::new();
        out.insert(2, self.count(2));
        out.insert(3, self.count(3));
        for &d in &self.degrees {
            let mut m = d;
            let mut p = 2;
            while m > 1 {
                if m % p == 0 {
                    out.insert(p, self.count(p));
                    while m % p == 0 {
                        m /= p;
                    }
                }
                p += 1;
            }
        }
        out
    }
}

fn is_power_of(mut d: u64, p: u64) -> bool {
    while d.is_multiple_of(p) {
        d /= p;
    }
    d == 1
}

/// Degree of the cyclic isogeny from the base to every curve of the class.
///
/// The class graph is a product of the per-prime trees, so the cheapest path
/// (by product of degrees) to a curve realizes the cyclic isogeny to it.
pub fn cyclic_degrees(class: &IsogenyClass) -> Result<CyclicDegrees> {
    let n = class.curves.len();
    let mut adj: Vec<Vec<(usize, u64)>> = vec![Vec::new(); n];
    for e in &class.edges {
        adj[e.source].push((e.target, e.degree as u64));
        adj[e.target].push((e.source, e.degree as u64));
    }
    let mut best: Vec<Option<u64>> = vec![None; n];
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((1u64, class.base)));
    while let Some(Reverse((d, v))) = heap.pop() {
        if best[v].is_some() {
            continue;
        }
        best[v] = Some(d);
        for &(w, l) in &adj[v] {
            if best[w].is_none() {
                heap.push(Reverse((d * l, w)));
            }
        }
    }
    let mut degrees = Vec::with_capacity(n);
    for (i, b) in best.iter().enumerate() {
        let d = b.ok_or_else(|| Error::InvariantBreach(format!("curve {i} of the isogeny class is unreachable")))?;
        if !ADMISSIBLE_DEGREES.contains(&d) {
            return Err(Error::InvariantBreach(format!("cyclic isogeny of inadmissible degree {d}")));
        }
        degrees.push(d);
    }
    Ok(CyclicDegrees::new(degrees))
}

/// The isogeny class and its degree multiset in one call.
pub fn cyclic_degrees_of(e: &RationalCurve) -> Result<(IsogenyClass, CyclicDegrees)> {
    let class = isogeny_class(e)?;
    let degrees = cyclic_degrees(&class)?;
    Ok((class, degrees))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KenkuReport {
    pub counts: BTreeMap<u64, usize>,
    pub class_size: usize,
    pub violations: Vec<String>,
}

impl KenkuReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Upper bound on `C_p` over Q.
pub fn kenku_bound(p: u64) -> usize {
    match p {
        2 => 8,
        3 => 4,
        5 => 3,
        7 | 11 | 13 | 17 | 19 | 37 | 43 | 67 | 163 => 2,
        _ => 1,
    }
}

/// Checks the per-prime bounds and the joint constraints between them.
pub fn kenku_check_counts(counts: &BTreeMap<u64, usize>, class_size: usize) -> KenkuReport {
    let c = |p: u64| counts.get(&p).copied().unwrap_or(1);
    let mut v = Vec::new();
    for (&p, &n) in counts {
        if n > kenku_bound(p) {
            v.push(format!("C_{p} = {n} exceeds {}", kenku_bound(p)));
        }
    }
    if class_size > MAX_CLASS_SIZE {
        v.push(format!("class has {class_size} curves, more than {MAX_CLASS_SIZE}"));
    }
    let others_trivial = |p: u64| counts.iter().all(|(&q, &n)| q == p || n == 1);
    for (&p, &n) in counts {
        if p >= 11 && n == 2 && !others_trivial(p) {
            v.push(format!("C_{p} = 2 requires C_q = 1 for every other prime q"));
        }
    }
    let small_mix = c(3) <= 2 && c(2) == 1 || c(3) == 1 && c(2) <= 2;
    if c(7) == 2 && !(c(5) == 1 && small_mix) {
        v.push("C_7 = 2 requires C_5 = 1 and (C_3 <= 2, C_2 = 1) or (C_3 = 1, C_2 <= 2)".into());
    }
    if c(5) == 3 && !others_trivial(5) {
        v.push("C_5 = 3 requires C_p = 1 for every p != 5".into());
    }
    if c(5) == 2 && !small_mix {
        v.push("C_5 = 2 requires (C_3 <= 2, C_2 = 1) or (C_3 = 1, C_2 <= 2)".into());
    }
    if c(3) == 4 && c(2) != 1 {
        v.push("C_3 = 4 requires C_2 = 1".into());
    }
    if c(3) == 3 && c(2) > 2 {
        v.push("C_3 = 3 requires C_2 <= 2".into());
    }
    if c(3) == 2 && c(2) > 4 {
        v.push("C_3 = 2 requires C_2 <= 4".into());
    }
    if class_size == 8 && !(c(2) == 8 || (c(3) == 2 && c(2) == 4)) {
        v.push("a class of 8 curves needs C_2 = 8 or (C_3 = 2, C_2 = 4)".into());
    }
    KenkuReport { counts: counts.clone(), class_size, violations: v }
}

pub fn kenku_check(class: &IsogenyClass) -> Result<KenkuReport> {
    let degrees = cyclic_degrees(class)?;
    let mut report = kenku_check_counts(&degrees.counts(), class.curves.len());
    if degrees.count(3) == 4 && !class_has_cyclic_degree(class, 27)? {
        report.violations.push("C_3 = 4 but no curve in the class has a 27-isogeny".into());
    }
    Ok(report)
}

fn class_has_cyclic_degree(class: &IsogenyClass, d: u64) -> Result<bool> {
    for i in 0..class.curves.len() {
        let rebased = IsogenyClass { curves: class.curves.clone(), edges: class.edges.clone(), base: i };
        if cyclic_degrees(&rebased)?.contains(d) {
            return Ok(true);
        }
    }
    Ok(false)
}
