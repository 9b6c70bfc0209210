//! Factorization of polynomials over Q.
//!
//! Squarefree decomposition, then for each squarefree part: reduction
//! modulo a well-chosen word prime, Cantor–Zassenhaus over F_p, Hensel
//! lifting and recombination of the lifted factors by subset search with a
//! degree sieve over several primes.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::hensel::multifactor_lift;
use crate::integer::binomial;
use crate::modp;
use crate::poly::UniPoly;
use crate::rational::Rational;
use crate::zpoly::ZPoly;
use crate::ArithError;

/// `unit * prod factor_i^mult_i`, factors monic irreducible over Q, sorted by
/// degree and then coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorList {
    pub unit: Rational,
    pub factors: Vec<(UniPoly, u32)>,
}

impl FactorList {
    pub fn expand(&self) -> UniPoly {
        let mut acc = UniPoly::constant(self.unit.clone());
        for (f, e) in &self.factors {
            acc = &acc * &f.pow(*e);
        }
        acc
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }

    /// Irreducible factors of the given degree, without multiplicity.
    pub fn of_degree(&self, d: usize) -> Vec<UniPoly> {
        self.factors.iter().filter(|(f, _)| f.degree() == d).map(|(f, _)| f.clone()).collect()
    }
}

/// Complete factorization over Q.
pub fn factor_over_q(f: &UniPoly) -> Result<FactorList, ArithError> {
    if f.is_zero() {
        return Err(ArithError::ZeroPolynomial);
    }
    let unit = f.leading_coeff();
    let mut factors = Vec::new();
    for (part, mult) in f.squarefree_decomposition() {
        let (_, z) = part.primitive_integer();
        for g in factor_squarefree_z(&z, z.degree()).found {
            factors.push((g.to_monic_unipoly(), mult));
        }
    }
    factors.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    Ok(FactorList { unit, factors })
}

/// Monic irreducible factors of degree at most `max_degree`, with
/// multiplicity. Cheaper than a full factorization when the small factors
/// are all that is needed.
pub fn factors_up_to_degree(f: &UniPoly, max_degree: usize) -> Result<Vec<(UniPoly, u32)>, ArithError> {
    if f.is_zero() {
        return Err(ArithError::ZeroPolynomial);
    }
    let mut out = Vec::new();
    for (part, mult) in f.squarefree_decomposition() {
        let (_, z) = part.primitive_integer();
        for g in factor_squarefree_z(&z, max_degree).found {
            out.push((g.to_monic_unipoly(), mult));
        }
    }
    out.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    Ok(out)
}

/// Rational roots with multiplicity, ascending.
pub fn rational_roots(f: &UniPoly) -> Result<Vec<Rational>, ArithError> {
    let mut roots = Vec::new();
    for (g, mult) in factors_up_to_degree(f, 1)? {
        let r = -g.coeff(0);
        for _ in 0..mult {
            roots.push(r.clone());
        }
    }
    roots.sort();
    Ok(roots)
}

pub fn has_rational_root(f: &UniPoly) -> bool {
    if f.is_zero() {
        return true;
    }
    f.degree() > 0 && !rational_roots(f).map(|r| r.is_empty()).unwrap_or(true)
}

pub fn is_irreducible(f: &UniPoly) -> bool {
    if f.degree() == 0 {
        return false;
    }
    if !f.is_squarefree() {
        return false;
    }
    let (_, z) = f.primitive_integer();
    let res = factor_squarefree_z(&z, z.degree());
    res.found.len() == 1
}

/// Result of a (possibly degree-bounded) factor search on a squarefree
/// primitive integer polynomial: the irreducible factors found and the
/// cofactor left over (all of whose irreducible factors exceed the bound).
pub struct BoundedFactors {
    pub found: Vec<ZPoly>,
    pub cofactor: ZPoly,
}

fn sieve_prime_count(n: usize) -> usize {
    match n {
        0..=40 => 20,
        41..=120 => 12,
        121..=300 => 6,
        _ => 3,
    }
}

/// All subset sums of a multiset of degrees.
fn subset_sums(degrees: &[usize], cap: usize) -> BTreeSet<usize> {
    let mut reach = vec![false; cap + 1];
    reach[0] = true;
    for &d in degrees {
        for s in (d..=cap).rev() {
            if reach[s - d] {
                reach[s] = true;
            }
        }
    }
    reach.iter().enumerate().filter(|(_, &r)| r).map(|(i, _)| i).collect()
}

/// Factor search on a squarefree primitive `f` in Z[x] with positive
/// leading coefficient. Finds every irreducible factor of degree at most
/// `max_degree`; when `max_degree >= deg f / 2` the cofactor is known to be
/// irreducible (or 1), so this is then a complete factorization.
pub fn factor_squarefree_z(f: &ZPoly, max_degree: usize) -> BoundedFactors {
    let f = f.primitive();
    let n = f.degree();
    let complete = 2 * max_degree >= n;
    if n == 0 {
        return BoundedFactors { found: Vec::new(), cofactor: f };
    }
    if n == 1 {
        return if max_degree >= 1 {
            BoundedFactors { found: vec![f], cofactor: ZPoly::one() }
        } else {
            BoundedFactors { found: Vec::new(), cofactor: f }
        };
    }
    // Pull out the factor x, which keeps the constant-term test below sharp.
    if f.coeff(0).is_zero() {
        let rest = f.div_exact(&ZPoly::from_ints(&[0, 1])).expect("x divides");
        let mut inner = factor_squarefree_z(&rest, max_degree);
        if max_degree >= 1 {
            inner.found.insert(0, ZPoly::from_ints(&[0, 1]));
        } else {
            inner.cofactor = &inner.cofactor * &ZPoly::from_ints(&[0, 1]);
        }
        return inner;
    }
    if max_degree == 1 {
        return linear_factors(&f);
    }

    let lc = f.leading_coeff();
    let mut allowed: Option<BTreeSet<usize>> = None;
    let mut best: Option<(u64, Vec<usize>)> = None;
    let wanted = sieve_prime_count(n);
    let mut tried = 0;
    for p in modp::word_primes() {
        if tried >= wanted {
            break;
        }
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = f.to_modp(p);
        if !modp::is_squarefree(&fp, p) {
            continue;
        }
        tried += 1;
        let degs = modp::factor_degrees(&fp, p);
        let sums = subset_sums(&degs, n);
        allowed = Some(match allowed {
            None => sums,
            Some(a) => a.intersection(&sums).copied().collect(),
        });
        if best.as_ref().is_none_or(|(_, d)| degs.len() < d.len()) {
            best = Some((p, degs));
        }
        let proper = allowed.as_ref().unwrap().iter().filter(|&&d| d >= 1 && d <= max_degree && d < n).count();
        if proper == 0 {
            break;
        }
    }
    let allowed = allowed.expect("some good prime");
    let bounded_max = max_degree.min(n);
    let proper_small = allowed.iter().any(|&d| d >= 1 && d <= bounded_max && d < n);
    if !proper_small {
        return if complete && n <= max_degree {
            BoundedFactors { found: vec![f], cofactor: ZPoly::one() }
        } else {
            BoundedFactors { found: Vec::new(), cofactor: f }
        };
    }
    let (p, _) = best.expect("some good prime");
    let fp = f.to_modp(p);
    let local = modp::factor_squarefree(&fp, p);

    let search_degree = if complete { n - 1 } else { max_degree };
    let bound = coefficient_bound(&f, search_degree);
    let target = BigInt::from(bound) * 2 + 1;
    let big_p = BigInt::from(p);
    let mut modulus = big_p.clone();
    while modulus <= target {
        modulus *= &modulus.clone();
    }
    let lifted = multifactor_lift(&f, &local, p, &modulus);
    recombine(f, lifted, &modulus, max_degree, complete, &allowed)
}

fn linear_factors(f: &ZPoly) -> BoundedFactors {
    // A squarefree reduction without linear factors rules out rational roots.
    let lc = f.leading_coeff();
    for p in modp::word_primes().take(3) {
        let fp = f.to_modp(p);
        if !(&lc % BigInt::from(p)).is_zero() && modp::is_squarefree(&fp, p) && !modp::factor_degrees(&fp, p).contains(&1) {
            return BoundedFactors { found: Vec::new(), cofactor: f.clone() };
        }
    }
    general_linear(f)
}

fn general_linear(f: &ZPoly) -> BoundedFactors {
    let n = f.degree();
    let lc = f.leading_coeff();
    let p = modp::word_primes()
        .find(|&p| !(&lc % BigInt::from(p)).is_zero() && modp::is_squarefree(&f.to_modp(p), p))
        .expect("good prime");
    let local = modp::factor_squarefree(&f.to_modp(p), p);
    let bound = coefficient_bound(f, 1);
    let target = BigInt::from(bound) * 2 + 1;
    let mut modulus = BigInt::from(p);
    while modulus <= target {
        modulus *= &modulus.clone();
    }
    let lifted = multifactor_lift(f, &local, p, &modulus);
    let allowed: BTreeSet<usize> = (0..=n).collect();
    recombine(f.clone(), lifted, &modulus, 1, false, &allowed)
}

/// Bound on the coefficients of `lc(f) * g / lc(g)` for any factor `g` of
/// `f` of degree at most `d`: the minimum of the Mignotte-type bound and the
/// bound from elementary symmetric functions of roots.
fn coefficient_bound(f: &ZPoly, d: usize) -> BigUint {
    let lc = f.leading_coeff().magnitude().clone();
    let norm = f.l2_norm_ceil();
    let root = f.root_bound();
    let d64 = d as u64;
    let mut mignotte = BigUint::zero();
    let mut roots = BigUint::zero();
    let mut rpow = BigUint::one();
    for i in 0..=d64 {
        let b = binomial(d64, i);
        let m = &b * &norm;
        if m > mignotte {
            mignotte = m;
        }
        let r = &b * &rpow;
        if r > roots {
            roots = r;
        }
        rpow *= &root;
    }
    lc * mignotte.min(roots)
}

fn product_mod(factors: &[&Vec<BigInt>], lc: &BigInt, m: &BigInt) -> Vec<BigInt> {
    let mut acc = vec![lc.mod_floor(m)];
    for g in factors {
        let mut out = vec![BigInt::zero(); acc.len() + g.len() - 1];
        for (i, a) in acc.iter().enumerate() {
            for (j, b) in g.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        acc = out.into_iter().map(|c| c.mod_floor(m)).collect();
    }
    acc
}

fn symmetric(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

/// Subset recombination of lifted factors.
fn recombine(
    mut f: ZPoly,
    mut lifted: Vec<Vec<BigInt>>,
    m: &BigInt,
    max_degree: usize,
    complete: bool,
    allowed: &BTreeSet<usize>,
) -> BoundedFactors {
    let mut found = Vec::new();
    let mut big = ZPoly::one();
    let mut s = 1;
    loop {
        let r = lifted.len();
        if r == 0 {
            break;
        }
        if complete && 2 * s > r {
            break;
        }
        if s > r {
            break;
        }
        let degs: Vec<usize> = lifted.iter().map(|g| g.len() - 1).collect();
        let mut sorted = degs.clone();
        sorted.sort();
        let min_sum: usize = sorted.iter().take(s).sum();
        if !complete && min_sum > max_degree {
            break;
        }
        let mut hit: Option<(Vec<usize>, ZPoly)> = None;
        let n = f.degree();
        let lc = f.leading_coeff();
        let f0 = f.coeff(0);
        let lcf0 = &lc * &f0;
        for_each_subset(r, s, &mut |idx: &[usize]| {
            let d: usize = idx.iter().map(|&i| degs[i]).sum();
            let out_of_range = if complete {
                d >= n
            } else {
                d > max_degree || (d == n && idx.len() != r)
            };
            if out_of_range {
                return false;
            }
            if !allowed.contains(&d) {
                return false;
            }
            // Constant-term test before forming the product.
            let mut c = lc.mod_floor(m);
            for &i in idx {
                c = (c * &lifted[i][0]).mod_floor(m);
            }
            let c = symmetric(&c, m);
            if c.is_zero() || !(&lcf0 % &c).is_zero() {
                return false;
            }
            let parts: Vec<&Vec<BigInt>> = idx.iter().map(|&i| &lifted[i]).collect();
            let prod = product_mod(&parts, &lc, m);
            let g = ZPoly::new(prod.iter().map(|c| symmetric(c, m)).collect()).primitive();
            if let Some(q) = f.div_exact(&g) {
                hit = Some((idx.to_vec(), g));
                // Keep the quotient for the caller.
                f = q;
                return true;
            }
            false
        });
        match hit {
            Some((idx, g)) => {
                let keep: Vec<Vec<BigInt>> = lifted
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !idx.contains(i))
                    .map(|(_, g)| g)
                    .collect();
                lifted = keep;
                if g.degree() <= max_degree {
                    found.push(g);
                } else {
                    big = &big * &g;
                }
                f = f.primitive();
            }
            None => s += 1,
        }
    }
    if complete && f.degree() > 0 && f.degree() <= max_degree {
        found.push(f.primitive());
        f = ZPoly::one();
    }
    found.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.coeffs().cmp(b.coeffs())));
    BoundedFactors { found, cofactor: (&big * &f).primitive() }
}

/// Calls `visit` on each `k`-subset of `0..n` in lexicographic order until
/// it returns true.
fn for_each_subset(n: usize, k: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    if k > n {
        return false;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if visit(&idx) {
            return true;
        }
        let mut i = k;
        loop {
            if i == 0 {
                return false;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return false;
            }
        }
        if idx[i] == i + n - k {
            return false;
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    #[test]
    fn difference_of_squares() {
        let fl = factor_over_q(&p(&[-1, 0, 1])).unwrap();
        assert_eq!(fl.factors, vec![(p(&[-1, 1]), 1), (p(&[1, 1]), 1)]);
        assert_eq!(fl.unit, rat(1));
    }

    #[test]
    fn x4_plus_1_is_irreducible() {
        let fl = factor_over_q(&p(&[1, 0, 0, 0, 1])).unwrap();
        assert!(fl.is_irreducible());
    }

    #[test]
    fn three_torsion_polynomial_of_j0_curve() {
        let fl = factor_over_q(&p(&[0, 12, 0, 0, 3])).unwrap();
        assert_eq!(fl.unit, rat(3));
        assert_eq!(fl.factors, vec![(p(&[0, 1]), 1), (p(&[4, 0, 0, 1]), 1)]);
    }

    #[test]
    fn roots() {
        assert_eq!(rational_roots(&p(&[-4, 0, 1])).unwrap(), vec![rat(-2), rat(2)]);
        assert!(rational_roots(&p(&[1, 0, 1])).unwrap().is_empty());
        assert!(rational_roots(&p(&[4, 0, 0, 1])).unwrap().is_empty());
        assert!(rational_roots(&UniPoly::zero()).is_err());
    }

    #[test]
    fn swinnerton_dyer_like_product() {
        // (x^2 - 2)(x^2 - 3)(x^4 - 10x^2 + 1): many local factors, few global.
        let f = &(&p(&[-2, 0, 1]) * &p(&[-3, 0, 1])) * &p(&[1, 0, -10, 0, 1]);
        let fl = factor_over_q(&f).unwrap();
        assert_eq!(fl.factors.len(), 3);
        assert_eq!(fl.expand(), f);
    }

    #[test]
    fn multiplicities_and_content() {
        let f = (&p(&[1, 2]).pow(3) * &p(&[5, 0, 1])).scale(&Rational::new(7.into(), 3.into()));
        let fl = factor_over_q(&f).unwrap();
        assert_eq!(fl.expand(), f);
        assert_eq!(fl.factors[0].1, 3);
    }

    #[test]
    fn bounded_search_finds_small_factor_only() {
        let big = p(&[3, 1, 0, 0, 0, 0, 0, 1]);
        let f = &big * &p(&[-2, 0, 1]);
        let small = factors_up_to_degree(&f, 2).unwrap();
        assert_eq!(small, vec![(p(&[-2, 0, 1]), 1)]);
    }

    #[test]
    fn subsets_enumerate_all() {
        let mut count = 0;
        for_each_subset(6, 3, &mut |_| {
            count += 1;
            false
        });
        assert_eq!(count, 20);
    }
}
