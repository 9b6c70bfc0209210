//! Multifactor Hensel lifting.
//!
//! Given `f` in Z[x] and monic pairwise coprime factors of `f mod p`, lifts
//! them to monic factors modulo `p^k` with `f = lc(f) * prod g_i mod p^k`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::modp::{self, PolyP};
use crate::zpoly::ZPoly;

/// Polynomial with coefficients reduced into `0..m`.
type PolyM = Vec<BigInt>;

fn trim(a: &mut PolyM) {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
}

fn reduce(a: &[BigInt], m: &BigInt) -> PolyM {
    let mut out: PolyM = a.iter().map(|c| c.mod_floor(m)).collect();
    trim(&mut out);
    out
}

fn add(a: &PolyM, b: &PolyM, m: &BigInt) -> PolyM {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    let sum: Vec<BigInt> =
        (0..n).map(|i| a.get(i).unwrap_or(&zero) + b.get(i).unwrap_or(&zero)).collect();
    reduce(&sum, m)
}

fn sub(a: &PolyM, b: &PolyM, m: &BigInt) -> PolyM {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    let diff: Vec<BigInt> =
        (0..n).map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero)).collect();
    reduce(&diff, m)
}

fn mul(a: &PolyM, b: &PolyM, m: &BigInt) -> PolyM {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    reduce(&out, m)
}

/// Division by a monic polynomial modulo `m`.
fn div_rem_monic(a: &PolyM, b: &PolyM, m: &BigInt) -> (PolyM, PolyM) {
    if a.len() < b.len() {
        return (Vec::new(), a.clone());
    }
    let db = b.len() - 1;
    let mut rem = a.clone();
    let mut quo = vec![BigInt::zero(); a.len() - db];
    for i in (0..quo.len()).rev() {
        let c = rem[i + db].mod_floor(m);
        if !c.is_zero() {
            for (j, d) in b.iter().enumerate() {
                rem[i + j] -= &c * d;
            }
        }
        quo[i] = c;
    }
    rem.truncate(db);
    (reduce(&quo, m), reduce(&rem, m))
}

fn lift_word(a: &PolyP) -> PolyM {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

/// One quadratic Hensel step: from `f = g h`, `s g + t h = 1` modulo `m`
/// (with `h` monic) to the same relations modulo `m^2`.
fn hensel_step(
    f: &PolyM,
    g: &PolyM,
    h: &PolyM,
    s: &PolyM,
    t: &PolyM,
    m: &BigInt,
) -> (PolyM, PolyM, PolyM, PolyM) {
    let m2 = m * m;
    let e = sub(f, &mul(g, h, &m2), &m2);
    let (q, r) = div_rem_monic(&mul(s, &e, &m2), h, &m2);
    let g_new = add(g, &add(&mul(t, &e, &m2), &mul(&q, g, &m2), &m2), &m2);
    let h_new = add(h, &r, &m2);
    let b = sub(&add(&mul(s, &g_new, &m2), &mul(t, &h_new, &m2), &m2), &vec![BigInt::one()], &m2);
    let (c, d) = div_rem_monic(&mul(s, &b, &m2), &h_new, &m2);
    let s_new = sub(s, &d, &m2);
    let t_new = sub(&sub(t, &mul(t, &b, &m2), &m2), &mul(&c, &g_new, &m2), &m2);
    (g_new, h_new, s_new, t_new)
}

/// Lifts the monic factorization `f = lc * prod factors (mod p)` to a monic
/// factorization modulo `modulus`, a power of `p` at least `p`. Returns the
/// lifted factors in the input order, coefficients in `0..modulus`.
pub fn multifactor_lift(f: &ZPoly, factors: &[PolyP], p: u64, modulus: &BigInt) -> Vec<PolyM> {
    let fm = reduce(f.coeffs(), modulus);
    lift_rec(&fm, factors, p, modulus)
}

fn lift_rec(f: &PolyM, factors: &[PolyP], p: u64, modulus: &BigInt) -> Vec<PolyM> {
    if factors.len() == 1 {
        let lc = f.last().expect("nonzero").clone();
        let inv = lc.modinv(modulus).expect("leading coefficient is a unit");
        let monic: Vec<BigInt> = f.iter().map(|c| c * &inv).collect();
        return vec![reduce(&monic, modulus)];
    }
    let k = factors.len() / 2;
    let (left, right) = factors.split_at(k);
    let big_p = BigInt::from(p);
    let f_p: PolyP = f.iter().map(|c| u64::try_from(c.mod_floor(&big_p)).unwrap()).collect();
    let lc_p = *f_p.iter().rev().find(|&&c| c != 0).expect("lc is a unit mod p");
    let g0 = left.iter().fold(vec![lc_p], |acc, g| modp::mul(&acc, g, p));
    let h0 = right.iter().fold(vec![1u64], |acc, g| modp::mul(&acc, g, p));
    let (one, s0, t0) = modp::ext_gcd(&g0, &h0, p);
    debug_assert_eq!(one, vec![1]);
    let (mut g, mut h, mut s, mut t) = (lift_word(&g0), lift_word(&h0), lift_word(&s0), lift_word(&t0));
    let mut m = big_p.clone();
    while &m < modulus {
        let f_here = reduce(f, &(&m * &m));
        let next = hensel_step(&f_here, &g, &h, &s, &t, &m);
        g = next.0;
        h = next.1;
        s = next.2;
        t = next.3;
        m = &m * &m;
    }
    let g = reduce(&g, modulus);
    let h = reduce(&h, modulus);
    let mut out = lift_rec(&g, left, p, modulus);
    out.extend(lift_rec(&h, right, p, modulus));
    out
}
