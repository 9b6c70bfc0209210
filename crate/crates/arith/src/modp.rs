//! Polynomials over prime fields of word size, and the modular algorithms
//! built on them: gcd and resultant over Z by Chinese remaindering, and
//! factorization of squarefree polynomials over F_p.
//!
//! Polynomials are `Vec<u64>`, lowest degree first, trimmed, with
//! coefficients in `0..p`. All primes used here are below 2^31 so products of
//! two residues fit in a `u64`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::integer::is_prime_u64;
use crate::zpoly::ZPoly;

pub type PolyP = Vec<u64>;

/// Primes below 2^31 in decreasing order, starting from the largest.
pub fn word_primes() -> impl Iterator<Item = u64> {
    (1u64..(1 << 31)).rev().filter(|&n| n % 2 == 1 && is_prime_u64(n))
}

fn trim(a: &mut PolyP) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub fn degree(a: &PolyP) -> usize {
    a.len().saturating_sub(1)
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    crate::integer::pow_mod_u64(a, p - 2, p)
}

pub fn add(a: &PolyP, b: &PolyP, p: u64) -> PolyP {
    let n = a.len().max(b.len());
    let mut out: PolyP = (0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p)
        .collect();
    trim(&mut out);
    out
}

pub fn sub(a: &PolyP, b: &PolyP, p: u64) -> PolyP {
    let n = a.len().max(b.len());
    let mut out: PolyP = (0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
        .collect();
    trim(&mut out);
    out
}

pub fn scale(a: &PolyP, c: u64, p: u64) -> PolyP {
    let mut out: PolyP = a.iter().map(|x| x * c % p).collect();
    trim(&mut out);
    out
}

pub fn mul(a: &PolyP, b: &PolyP, p: u64) -> PolyP {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    // Residues are < 2^31, so each product is < 2^62 and sixteen of them fit
    // in a u128 accumulator many times over; reduce once per output slot.
    let mut acc = vec![0u128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            acc[i + j] += (x * y) as u128;
        }
    }
    let mut out: PolyP = acc.into_iter().map(|v| (v % p as u128) as u64).collect();
    trim(&mut out);
    out
}

pub fn monic(a: &PolyP, p: u64) -> PolyP {
    match a.last() {
        None => Vec::new(),
        Some(&lc) => scale(a, inv_mod(lc, p), p),
    }
}

pub fn div_rem(a: &PolyP, b: &PolyP, p: u64) -> (PolyP, PolyP) {
    assert!(!b.is_empty(), "division by zero polynomial mod p");
    if a.len() < b.len() {
        return (Vec::new(), a.clone());
    }
    let db = b.len() - 1;
    let inv = inv_mod(b[db], p);
    let mut rem = a.clone();
    let mut quo = vec![0u64; a.len() - db];
    for i in (0..quo.len()).rev() {
        let c = rem[i + db] * inv % p;
        if c != 0 {
            for (j, &d) in b.iter().enumerate() {
                rem[i + j] = (rem[i + j] + p - c * d % p) % p;
            }
        }
        quo[i] = c;
    }
    rem.truncate(db);
    trim(&mut rem);
    trim(&mut quo);
    (quo, rem)
}

pub fn rem(a: &PolyP, b: &PolyP, p: u64) -> PolyP {
    div_rem(a, b, p).1
}

pub fn gcd(a: &PolyP, b: &PolyP, p: u64) -> PolyP {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    monic(&x, p)
}

/// `(g, s, t)` with `s a + t b = g`, `g` monic.
pub fn ext_gcd(a: &PolyP, b: &PolyP, p: u64) -> (PolyP, PolyP, PolyP) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1): (PolyP, PolyP) = (vec![1], Vec::new());
    let (mut t0, mut t1): (PolyP, PolyP) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (q, r) = div_rem(&r0, &r1, p);
        let s = sub(&s0, &mul(&q, &s1, p), p);
        let t = sub(&t0, &mul(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    let inv = inv_mod(*r0.last().expect("nonzero gcd"), p);
    (scale(&r0, inv, p), scale(&s0, inv, p), scale(&t0, inv, p))
}

pub fn derivative(a: &PolyP, p: u64) -> PolyP {
    let mut out: PolyP = a.iter().enumerate().skip(1).map(|(i, c)| (i as u64 % p) * c % p).collect();
    trim(&mut out);
    out
}

pub fn pow_mod(base: &PolyP, exp: &BigUint, f: &PolyP, p: u64) -> PolyP {
    let mut acc: PolyP = rem(&vec![1], f, p);
    let base = rem(base, f, p);
    for i in (0..exp.bits()).rev() {
        acc = rem(&mul(&acc, &acc, p), f, p);
        if exp.bit(i) {
            acc = rem(&mul(&acc, &base, p), f, p);
        }
    }
    acc
}

/// The Frobenius map `a -> a^p` on F_p[x]/(f), stored as the images of the
/// basis monomials.
pub struct Frobenius {
    rows: Vec<PolyP>,
    p: u64,
}

impl Frobenius {
    pub fn new(f: &PolyP, p: u64) -> Self {
        let n = degree(f);
        let xp = pow_mod(&vec![0, 1], &BigUint::from(p), f, p);
        let mut rows = Vec::with_capacity(n);
        let mut cur: PolyP = vec![1];
        for _ in 0..n {
            rows.push(cur.clone());
            cur = rem(&mul(&cur, &xp, p), f, p);
        }
        Frobenius { rows, p }
    }

    pub fn apply(&self, a: &PolyP) -> PolyP {
        let p = self.p;
        let n = self.rows.len();
        let mut acc = vec![0u128; n];
        for (i, &c) in a.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (k, &r) in self.rows[i].iter().enumerate() {
                acc[k] += (c * r) as u128;
            }
        }
        let mut out: PolyP = acc.into_iter().map(|v| (v % p as u128) as u64).collect();
        trim(&mut out);
        out
    }
}

/// Distinct-degree factorization of a monic squarefree `f`: pairs
/// `(d, g_d)` where `g_d` is the product of the irreducible factors of
/// degree `d`.
pub fn distinct_degree(f: &PolyP, p: u64) -> (Frobenius, Vec<(usize, PolyP)>) {
    let frob = Frobenius::new(f, p);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let x: PolyP = vec![0, 1];
    let mut h = rem(&x, f, p);
    let mut d = 0;
    while degree(&rest) >= 2 * (d + 1) {
        d += 1;
        h = frob.apply(&h);
        let g = gcd(&rest, &sub(&h, &x, p), p);
        if degree(&g) > 0 {
            rest = div_rem(&rest, &g, p).0;
            h = rem(&h, &rest, p);
            out.push((d, g));
        }
    }
    if degree(&rest) > 0 {
        out.push((degree(&rest), rest));
    }
    (frob, out)
}

/// Degrees of the irreducible factors of a squarefree `f` modulo `p`,
/// sorted ascending.
pub fn factor_degrees(f: &PolyP, p: u64) -> Vec<usize> {
    let f = monic(f, p);
    let (_, ddf) = distinct_degree(&f, p);
    let mut out = Vec::new();
    for (d, g) in ddf {
        for _ in 0..degree(&g) / d {
            out.push(d);
        }
    }
    out
}

/// Splits `g`, a product of distinct monic irreducibles of degree `d`,
/// into its factors (Cantor–Zassenhaus). `frob` must be the Frobenius map
/// modulo a multiple of `g`.
fn equal_degree(g: &PolyP, d: usize, p: u64, frob: &Frobenius, rng: &mut ChaCha8Rng) -> Vec<PolyP> {
    let n = degree(g);
    if n == d {
        return vec![g.clone()];
    }
    let half = BigUint::from((p - 1) / 2);
    loop {
        let a: PolyP = {
            let mut v: PolyP = (0..n).map(|_| rng.gen_range(0..p)).collect();
            trim(&mut v);
            v
        };
        if degree(&a) == 0 {
            continue;
        }
        // a^((p^d - 1)/2) = (a * a^p * ... * a^(p^(d-1)))^((p - 1)/2)
        let mut b = a.clone();
        let mut norm = rem(&a, g, p);
        for _ in 1..d {
            b = rem(&frob.apply(&b), g, p);
            norm = rem(&mul(&norm, &b, p), g, p);
        }
        let t = pow_mod(&norm, &half, g, p);
        let cand = gcd(g, &sub(&t, &vec![1], p), p);
        let k = degree(&cand);
        if k > 0 && k < n {
            let other = div_rem(g, &cand, p).0;
            let mut out = equal_degree(&cand, d, p, frob, rng);
            out.extend(equal_degree(&monic(&other, p), d, p, frob, rng));
            return out;
        }
    }
}

/// Monic irreducible factors of a squarefree `f` over F_p, `p` odd.
pub fn factor_squarefree(f: &PolyP, p: u64) -> Vec<PolyP> {
    let f = monic(f, p);
    let (frob, ddf) = distinct_degree(&f, p);
    let mut rng = ChaCha8Rng::seed_from_u64(p ^ (degree(&f) as u64).rotate_left(32));
    let mut out = Vec::new();
    for (d, g) in ddf {
        out.extend(equal_degree(&g, d, p, &frob, &mut rng));
    }
    out.sort();
    out
}

pub fn is_squarefree(f: &PolyP, p: u64) -> bool {
    let df = derivative(f, p);
    !df.is_empty() && degree(&gcd(f, &df, p)) == 0
}

/// Resultant over F_p. Degrees of the inputs are taken at face value.
pub fn resultant(a: &PolyP, b: &PolyP, p: u64) -> u64 {
    if a.is_empty() || b.is_empty() {
        return 0;
    }
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut acc = 1u64;
    loop {
        let n = degree(&a) as u64;
        let m = degree(&b) as u64;
        if m == 0 {
            return acc * crate::integer::pow_mod_u64(b[0], n, p) % p;
        }
        if n == 0 {
            return acc * crate::integer::pow_mod_u64(a[0], m, p) % p;
        }
        let r = rem(&a, &b, p);
        if r.is_empty() {
            return 0;
        }
        // Res(a, b) = (-1)^(nm) lc(b)^(n - deg r) Res(b, r)
        if (n * m) % 2 == 1 {
            acc = (p - acc) % p;
        }
        let lc = *b.last().unwrap();
        acc = acc * crate::integer::pow_mod_u64(lc, n - degree(&r) as u64, p) % p;
        a = b;
        b = r;
    }
}

fn crt_step(acc: &mut [BigInt], modulus: &BigInt, residues: &[u64], p: u64) {
    let big_p = BigInt::from(p);
    let m_mod_p = u64::try_from(modulus.mod_floor(&big_p)).unwrap();
    let inv = BigInt::from(inv_mod(m_mod_p, p));
    for (i, slot) in acc.iter_mut().enumerate() {
        let r = BigInt::from(residues.get(i).copied().unwrap_or(0));
        let cur = slot.mod_floor(&big_p);
        let delta = ((r - cur) * &inv).mod_floor(&big_p);
        *slot += modulus * delta;
    }
}

/// Gcd of two primitive integer polynomials, primitive with positive
/// leading coefficient. Modular algorithm with a divisibility check.
pub fn modular_gcd(f: &ZPoly, g: &ZPoly) -> ZPoly {
    if f.degree() == 0 || g.degree() == 0 {
        return ZPoly::one();
    }
    let lc_gcd = f.leading_coeff().gcd(&g.leading_coeff());
    let mut best_deg = usize::MAX;
    let mut acc: Vec<BigInt> = Vec::new();
    let mut modulus = BigInt::one();
    let mut last: Option<ZPoly> = None;
    for p in word_primes() {
        let big_p = BigInt::from(p);
        if (f.leading_coeff() % &big_p).is_zero() || (g.leading_coeff() % &big_p).is_zero() {
            continue;
        }
        let fp = f.to_modp(p);
        let gp = g.to_modp(p);
        let h = gcd(&fp, &gp, p);
        let d = degree(&h);
        if d == 0 {
            return ZPoly::one();
        }
        if d > best_deg {
            continue;
        }
        let scale_p = u64::try_from(lc_gcd.mod_floor(&big_p)).unwrap();
        let h = scale(&h, scale_p, p);
        if d < best_deg {
            best_deg = d;
            acc = vec![BigInt::zero(); d + 1];
            modulus = BigInt::one();
            last = None;
        }
        crt_step(&mut acc, &modulus, &h, p);
        modulus *= &big_p;
        let cand = ZPoly::from_symmetric(&acc, &modulus).primitive();
        if last.as_ref() == Some(&cand)
            && f.div_exact(&cand).is_some() && g.div_exact(&cand).is_some() {
                return cand;
            }
        last = Some(cand);
    }
    unreachable!("prime supply exhausted")
}

/// Resultant of two nonzero integer polynomials by CRT against the
/// Hadamard bound.
pub fn modular_resultant(f: &ZPoly, g: &ZPoly) -> BigInt {
    let n = f.degree();
    let m = g.degree();
    if n == 0 {
        return num_traits::pow(f.leading_coeff(), m);
    }
    if m == 0 {
        return num_traits::pow(g.leading_coeff(), n);
    }
    let bound = num_traits::pow(f.l2_norm_ceil(), m) * num_traits::pow(g.l2_norm_ceil(), n);
    let target = BigInt::from(bound) * 2 + 1;
    let mut acc = vec![BigInt::zero()];
    let mut modulus = BigInt::one();
    for p in word_primes() {
        if modulus > target {
            break;
        }
        let big_p = BigInt::from(p);
        if (f.leading_coeff() % &big_p).is_zero() || (g.leading_coeff() % &big_p).is_zero() {
            continue;
        }
        let r = resultant(&f.to_modp(p), &g.to_modp(p), p);
        crt_step(&mut acc, &modulus, &[r], p);
        modulus *= &big_p;
    }
    ZPoly::from_symmetric(&acc, &modulus).coeff(0)
}
