use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use qab_arith::{factor_over_q, is_square, poly_gcd, rat, Rational, UniPoly};

fn poly_strategy(max_degree: usize) -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(-50i64..=50, 1..=max_degree + 1)
        .prop_map(|c| UniPoly::from_ints(&c))
        .prop_filter("nonzero", |p| !p.is_zero())
}

fn isqrt_i128(n: i128) -> Option<i128> {
    if n < 0 {
        return None;
    }
    let mut lo: i128 = 0;
    let mut hi: i128 = 1 << 40;
    while lo < hi {
        let mid = (lo + hi + 1) / 2;
        if mid * mid <= n {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    if lo * lo == n {
        Some(lo)
    } else {
        None
    }
}

fn divisors_i64(n: i64) -> Vec<i64> {
    let n = n.abs();
    (1..=n).filter(|d| n % d == 0).collect()
}

/// Remainder-free division test for integer polynomials (lowest degree first).
fn divides_int(f: &[i64], g: &[i64]) -> bool {
    let mut rem: Vec<i128> = f.iter().map(|&c| c as i128).collect();
    let dg = g.len() - 1;
    let lc = g[dg] as i128;
    if rem.len() < g.len() {
        return rem.iter().all(|c| *c == 0);
    }
    for i in (0..=rem.len() - g.len()).rev() {
        let top = rem[i + dg];
        if top % lc != 0 {
            return false;
        }
        let q = top / lc;
        for (j, &c) in g.iter().enumerate() {
            rem[i + j] -= q * c as i128;
        }
    }
    rem.iter().all(|c| *c == 0)
}

/// Independent exhaustive search for a quadratic factor of an integer
/// quartic, using the divisor constraints on the outer coefficients and the
/// value at 1 to prune the middle one.
fn has_integer_quadratic_factor(f: &[i64]) -> bool {
    let lc = f[4];
    let c0 = f[0];
    if c0 == 0 {
        return true;
    }
    let f1: i64 = f.iter().sum();
    let norm = (f.iter().map(|c| (c * c) as f64).sum::<f64>()).sqrt();
    let bound = (2.0 * norm).ceil() as i64 + 1;
    for a in divisors_i64(lc) {
        for c_abs in divisors_i64(c0) {
            for c in [c_abs, -c_abs] {
                for b in -bound..=bound {
                    let g1 = a + b + c;
                    if f1 != 0 && (g1 == 0 || f1 % g1 != 0) {
                        continue;
                    }
                    if divides_int(f, &[c, b, a]) {
                        return true;
                    }
                }
            }
        }
    }
    false
}

fn rational_root_exists(f: &[i64]) -> bool {
    if f[0] == 0 {
        return true;
    }
    let lc = *f.last().unwrap();
    for p in divisors_i64(f[0]) {
        for q in divisors_i64(lc) {
            for s in [p, -p] {
                // f(s/q) * q^n
                let n = f.len() - 1;
                let mut acc: i128 = 0;
                for (i, &c) in f.iter().enumerate() {
                    acc += c as i128 * (s as i128).pow(i as u32) * (q as i128).pow((n - i) as u32);
                }
                if acc == 0 {
                    return true;
                }
            }
        }
    }
    false
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn factorization_multiplies_back(f in poly_strategy(12)) {
        let fl = factor_over_q(&f).unwrap();
        prop_assert_eq!(fl.expand(), f);
        for w in fl.factors.windows(2) {
            prop_assert!(w[0].0.canonical_cmp(&w[1].0) == std::cmp::Ordering::Less);
        }
        for (g, e) in &fl.factors {
            prop_assert!(g.is_monic());
            prop_assert!(*e >= 1);
        }
    }

    #[test]
    fn square_test_matches_integer_roots(n in -1_000_000i64..1_000_000, d in 1i64..1_000_000) {
        let q = Rational::new(BigInt::from(n), BigInt::from(d));
        let num: i128 = q.numer().try_into().unwrap();
        let den: i128 = q.denom().try_into().unwrap();
        let expected = isqrt_i128(num).is_some() && isqrt_i128(den).is_some();
        prop_assert_eq!(is_square(&q), expected);
        let sq = &q * &q;
        prop_assert!(is_square(&sq));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn irreducible_quartic_factors_pass_exhaustion(
        c in prop::collection::vec(-50i64..=50, 4),
        lc in prop::sample::select(vec![-3i64, -2, -1, 1, 2, 3, 5]),
    ) {
        let coeffs = vec![c[0], c[1], c[2], c[3], lc];
        let f = UniPoly::from_ints(&coeffs);
        let fl = factor_over_q(&f).unwrap();
        let reported_irreducible = fl.is_irreducible() && fl.factors[0].0.degree() == 4;
        let reducible_by_search = rational_root_exists(&coeffs) || has_integer_quadratic_factor(&coeffs);
        prop_assert_eq!(reported_irreducible, !reducible_by_search);
        for (g, _) in &fl.factors {
            if g.degree() >= 2 {
                let (_, z) = g.primitive_integer();
                let zi: Vec<i64> = z.coeffs().iter().map(|c| c.try_into().unwrap()).collect();
                prop_assert!(!rational_root_exists(&zi));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn resultant_vanishes_iff_common_factor(
        f in poly_strategy(5),
        g in poly_strategy(5),
        common in prop::option::of(poly_strategy(2)),
    ) {
        let (f, g) = match common {
            Some(h) if h.degree() >= 1 => (&f * &h, &g * &h),
            _ => (f, g),
        };
        let res = f.resultant(&g);
        let gcd = poly_gcd(&f, &g);
        let both_constant = f.degree() == 0 && g.degree() == 0;
        prop_assume!(!both_constant);
        prop_assert_eq!(res.is_zero(), gcd.degree() >= 1);
    }

    #[test]
    fn gcd_divides_both(f in poly_strategy(6), g in poly_strategy(6), h in poly_strategy(3)) {
        let a = &f * &h;
        let b = &g * &h;
        let d = poly_gcd(&a, &b);
        prop_assert!(d.divides(&a));
        prop_assert!(d.divides(&b));
        prop_assert!(h.divides(&(&d * &UniPoly::constant(rat(1)))) || h.degree() == 0);
    }
}

#[test]
fn gcd_with_zero_is_monic_self() {
    let f = UniPoly::from_ints(&[6, -4, 2]);
    let g = poly_gcd(&f, &UniPoly::zero());
    assert!(g.is_monic());
    assert_eq!(g.scale(&rat(2)), f);
    assert!(f.leading_coeff().is_positive());
}
