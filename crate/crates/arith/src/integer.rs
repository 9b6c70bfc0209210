//! Integer helpers: primality, factorization and a few small utilities.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Primes below `limit`, by a plain sieve.
pub fn primes_below(limit: u64) -> Vec<u64> {
    if limit < 3 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n];
    let mut out = Vec::new();
    for i in 2..n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j < n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Miller–Rabin with fixed bases; deterministic below 3.3e24 and a strong
/// probable-prime test beyond.
pub fn is_probable_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    let one = BigUint::one();
    let two = BigUint::from(2u32);
    for p in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        if (n % p).is_zero() {
            return false;
        }
    }
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53] {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_brent(n: &BigUint, seed: u64) -> Option<BigUint> {
    let one = BigUint::one();
    let c = BigUint::from(seed);
    let f = |x: &BigUint| (x * x + &c) % n;
    let mut y = BigUint::from(seed + 1) % n;
    let m = 64u64;
    let mut g = one.clone();
    let mut r = 1u64;
    let mut q = one.clone();
    let mut x = y.clone();
    let mut ys = y.clone();
    let mut rounds = 0u64;
    while g == one {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g == one {
            ys = y.clone();
            for _ in 0..m.min(r - k) {
                y = f(&y);
                let diff = if x > y { &x - &y } else { &y - &x };
                q = (q * diff) % n;
            }
            g = q.gcd(n);
            k += m;
        }
        r *= 2;
        rounds += 1;
        if rounds > 40 {
            return None;
        }
    }
    if &g == n {
        loop {
            ys = f(&ys);
            let diff = if x > ys { &x - &ys } else { &ys - &x };
            g = diff.gcd(n);
            if g != one {
                break;
            }
        }
    }
    if &g == n {
        None
    } else {
        Some(g)
    }
}

fn split_composite(n: &BigUint, out: &mut Vec<BigUint>) {
    if n.is_one() {
        return;
    }
    if is_probable_prime(n) {
        out.push(n.clone());
        return;
    }
    let r = num_integer::Roots::sqrt(n);
    if &(&r * &r) == n {
        split_composite(&r, out);
        split_composite(&r, out);
        return;
    }
    for seed in 1u64.. {
        if let Some(d) = pollard_brent(n, seed) {
            let other = n / &d;
            split_composite(&d, out);
            split_composite(&other, out);
            return;
        }
    }
}

/// Prime factorization of `|n|` as sorted `(prime, exponent)` pairs.
/// `factor_integer(0)` and `factor_integer(±1)` are empty.
pub fn factor_integer(n: &BigInt) -> Vec<(BigUint, u32)> {
    let mut rest = n.magnitude().clone();
    let mut found: Vec<BigUint> = Vec::new();
    if rest.is_zero() {
        return Vec::new();
    }
    for p in SMALL_PRIMES.iter() {
        let p = *p as u32;
        while (&rest % p).is_zero() {
            rest /= p;
            found.push(BigUint::from(p));
        }
        if rest.is_one() {
            break;
        }
    }
    if !rest.is_one() {
        split_composite(&rest, &mut found);
    }
    found.sort();
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    for p in found {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

const SMALL_PRIMES: [u16; 168] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89,
    97, 101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191,
    193, 197, 199, 211, 223, 227, 229, 233, 239, 241, 251, 257, 263, 269, 271, 277, 281, 283, 293,
    307, 311, 313, 317, 331, 337, 347, 349, 353, 359, 367, 373, 379, 383, 389, 397, 401, 409, 419,
    421, 431, 433, 439, 443, 449, 457, 461, 463, 467, 479, 487, 491, 499, 503, 509, 521, 523, 541,
    547, 557, 563, 569, 571, 577, 587, 593, 599, 601, 607, 613, 617, 619, 631, 641, 643, 647, 653,
    659, 661, 673, 677, 683, 691, 701, 709, 719, 727, 733, 739, 743, 751, 757, 761, 769, 773, 787,
    797, 809, 811, 821, 823, 827, 829, 839, 853, 857, 859, 863, 877, 881, 883, 887, 907, 911, 919,
    929, 937, 941, 947, 953, 967, 971, 977, 983, 991, 997,
];

/// Distinct prime divisors of `|n|`.
pub fn prime_divisors(n: &BigInt) -> Vec<BigInt> {
    factor_integer(n)
        .into_iter()
        .map(|(p, _)| BigInt::from_biguint(Sign::Plus, p))
        .collect()
}

/// Signed squarefree kernel: the unique squarefree `s` with `n = s * m^2`.
pub fn squarefree_part(n: &BigInt) -> BigInt {
    if n.is_zero() {
        return BigInt::zero();
    }
    let mut s = BigInt::one();
    for (p, e) in factor_integer(n) {
        if e % 2 == 1 {
            s *= BigInt::from_biguint(Sign::Plus, p);
        }
    }
    if n.is_negative() {
        -s
    } else {
        s
    }
}

/// Largest `m >= 0` with `m^k <= x` for a non-negative `x`.
pub fn floor_root(x: &BigUint, k: u32) -> BigUint {
    num_integer::Roots::nth_root(x, k)
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factors_products_of_large_primes() {
        let p = BigInt::from(1_000_000_007u64);
        let q = BigInt::from(998_244_353u64);
        let n = &p * &q * &p * BigInt::from(12);
        let f = factor_integer(&n);
        let rebuilt: BigInt = f.iter().fold(BigInt::one(), |acc, (p, e)| {
            acc * num_traits::pow(BigInt::from_biguint(Sign::Plus, p.clone()), *e as usize)
        });
        assert_eq!(rebuilt, n);
        assert_eq!(f.len(), 4);
        assert!(f.iter().all(|(p, _)| is_probable_prime(p)));
    }

    #[test]
    fn squarefree_kernel() {
        assert_eq!(squarefree_part(&BigInt::from(-72)), BigInt::from(-2));
        assert_eq!(squarefree_part(&BigInt::from(49)), BigInt::from(1));
    }

    #[test]
    fn sieve_agrees_with_miller_rabin() {
        let sieve = primes_below(5000);
        let mr: Vec<u64> = (0..5000).filter(|n| is_prime_u64(*n)).collect();
        assert_eq!(sieve, mr);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(10, 3), BigUint::from(120u32));
        assert_eq!(binomial(5, 7), BigUint::zero());
    }
}
