//! Factorizations whose answers were computed with PARI/GP and pasted here.

use qab_arith::{factor_over_q, rational_roots, resultant, BiPoly, UniPoly, Var};

fn p(c: &[i64]) -> UniPoly {
    UniPoly::from_ints(c)
}

#[test]
fn swinnerton_dyer_sixteen_is_irreducible() {
    // Minimal polynomial of sqrt2 + sqrt3 + sqrt5 + sqrt7: splits into linear
    // or quadratic factors modulo every prime.
    let f = p(&[
        46225, 0, -5596840, 0, 13950764, 0, -7453176, 0, 1513334, 0, -141912, 0, 6476, 0, -136, 0, 1,
    ]);
    assert!(factor_over_q(&f).unwrap().is_irreducible());
}

#[test]
fn mixed_product_with_repeated_factor() {
    let sd8 = p(&[576, 0, -960, 0, 352, 0, -40, 0, 1]);
    let x8m2 = p(&[-2, 0, 0, 0, 0, 0, 0, 0, 1]);
    let phi15 = p(&[1, -1, 0, 1, -1, 1, 0, -1, 1]);
    let x4p1 = p(&[1, 0, 0, 0, 1]);
    let quint = p(&[11, -7, 0, 0, 0, 3]);
    let f = &(&(&(&sd8 * &x8m2) * &phi15) * &x4p1.pow(2)) * &quint;
    let fl = factor_over_q(&f).unwrap();
    let shape: Vec<(usize, u32)> = fl.factors.iter().map(|(g, e)| (g.degree(), *e)).collect();
    assert_eq!(shape, vec![(4, 2), (5, 1), (8, 1), (8, 1), (8, 1)]);
    assert_eq!(fl.expand(), f);
    assert!(fl.factors.contains(&(phi15, 1)));
    assert!(fl.factors.contains(&(sd8, 1)));
}

#[test]
fn large_coefficients() {
    // (x - 10^20)(x + 3/7)(x^3 - 2)
    let big = num_bigint::BigInt::from(10u64).pow(20);
    let lin = UniPoly::linear_root(&qab_arith::Rational::from_integer(big.clone()));
    let f = &(&lin * &UniPoly::linear_root(&qab_arith::ratio(-3, 7))) * &p(&[-2, 0, 0, 1]);
    let roots = rational_roots(&f).unwrap();
    assert_eq!(roots, vec![qab_arith::ratio(-3, 7), qab_arith::Rational::from_integer(big)]);
}

#[test]
fn resultant_of_circle_and_line_in_both_orders() {
    let f = BiPoly::from_terms(&[
        (2, 0, qab_arith::rat(1)),
        (0, 2, qab_arith::rat(1)),
        (0, 0, qab_arith::rat(-1)),
    ]);
    let g = BiPoly::from_terms(&[(1, 0, qab_arith::rat(1)), (0, 0, qab_arith::rat(-1)), (0, 1, qab_arith::rat(1))]);
    let rx = resultant(&f, &g, Var::X).unwrap();
    // x = 1 - y: (1 - y)^2 + y^2 - 1 = 2y^2 - 2y
    assert_eq!(rx, p(&[0, -2, 2]));
}
