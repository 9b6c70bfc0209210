use proptest::prelude::*;
use qab_arith::{parse_rational, rat, Rational, UniPoly};
use qab_torsion::galois::*;
use qab_torsion::{curve_from_j, RationalCurve};

fn p(c: &[i64]) -> UniPoly {
    UniPoly::from_ints(c)
}

fn j(s: &str) -> RationalCurve {
    curve_from_j(&parse_rational(s).unwrap())
}

#[test]
fn cubic_examples() {
    assert_eq!(cubic_class(&p(&[0, -1, 0, 1])).unwrap(), CubicClass::Split);
    assert_eq!(cubic_class(&p(&[-2, 0, 0, 1])).unwrap(), CubicClass::IrreducibleNonsquareDisc);
    assert_eq!(cubic_class(&p(&[-1, -3, 0, 1])).unwrap(), CubicClass::IrreducibleSquareDisc);
    assert_eq!(cubic_class(&p(&[-1, 0, 0, 1])).unwrap(), CubicClass::OneRoot);
    assert!(cubic_class(&p(&[0, 0, 1, 1])).is_err());
}

#[test]
fn quartic_examples() {
    assert_eq!(biquadratic_quartic_class(&rat(0), &rat(1)).unwrap(), QuarticClass::V);
    assert_eq!(biquadratic_quartic_class(&rat(0), &rat(-2)).unwrap(), QuarticClass::D4);
    assert_eq!(biquadratic_quartic_class(&rat(5), &rat(5)).unwrap(), QuarticClass::C4);
    // x^4 - 5x^2 + 4 = (x^2 - 1)(x^2 - 4)
    assert!(biquadratic_quartic_class(&rat(-5), &rat(4)).is_err());
}

/// Cycle-type oracle: splitting patterns of X^4 + bX^2 + d modulo 80
/// primes. D4 has Frobenius classes of type (1,1,2); C4 has 4-cycles and no
/// such type; V has neither.
fn quartic_oracle(b: i64, d: i64) -> QuarticClass {
    let mut saw_112 = false;
    let mut saw_4 = false;
    let mut count = 0;
    for q in qab_arith::integer::primes_below(100_000).into_iter().skip(2) {
        if count == 80 {
            break;
        }
        let f = |x: i64| ((x * x % q as i64 * x % q as i64 * x + b * x % q as i64 * x + d) % q as i64 + q as i64) % q as i64;
        let disc = (b * b - 4 * d) * d;
        if disc % q as i64 == 0 {
            continue;
        }
        count += 1;
        let roots = (0..q as i64).filter(|&x| f(x) == 0).count();
        if roots == 2 {
            saw_112 = true;
        }
        if roots == 0 {
            // irreducible iff no root and no factor x^2 + ux + v: brute force
            let qi = q as i64;
            let mut has_quadratic = false;
            'outer: for u in 0..qi {
                for v in 0..qi {
                    // divide x^4 + b x^2 + d by x^2 + u x + v modulo q
                    let c = [d.rem_euclid(qi), 0, b.rem_euclid(qi), 0, 1];
                    let mut r = c.to_vec();
                    for i in (2..5).rev() {
                        let t = r[i];
                        r[i] = 0;
                        r[i - 1] = (r[i - 1] - t * u).rem_euclid(qi);
                        r[i - 2] = (r[i - 2] - t * v).rem_euclid(qi);
                    }
                    if r[0] == 0 && r[1] == 0 {
                        has_quadratic = true;
                        break 'outer;
                    }
                }
            }
            if !has_quadratic {
                saw_4 = true;
            }
        }
    }
    if saw_112 {
        QuarticClass::D4
    } else if saw_4 {
        QuarticClass::C4
    } else {
        QuarticClass::V
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]
    #[test]
    fn quartic_class_matches_cycle_types(b in -30i64..=30, d in -30i64..=30) {
        let f = UniPoly::new(vec![rat(d), rat(0), rat(b), rat(0), rat(1)]);
        prop_assume!(d != 0 && qab_arith::is_irreducible(&f));
        prop_assert_eq!(biquadratic_quartic_class(&rat(b), &rat(d)).unwrap(), quartic_oracle(b, d));
    }
}

#[test]
fn abelian_field_examples() {
    let v = is_abelian_field(&p(&[-2, 0, 1]), 48).unwrap();
    assert!(v.is_abelian());
    assert_eq!(v.order, Some(2));
    let v = is_abelian_field(&p(&[1, 1, 1, 1, 1]), 48).unwrap();
    assert!(v.is_abelian());
    assert_eq!(v.order, Some(4));
    for f in [p(&[-2, 0, 0, 1]), p(&[-2, 0, 0, 0, 1]), p(&[-2, 0, 0, 0, 0, 1])] {
        assert_eq!(is_abelian_field(&f, 48).unwrap().decision, Decision::NonAbelian, "{f}");
    }
    // Q(sqrt2, sqrt3, sqrt5) is (Z/2)^3; Q(sqrt(2 + sqrt2)) is cyclic of order 4.
    let v = is_abelian_field(&p(&[576, 0, -960, 0, 352, 0, -40, 0, 1]), 48).unwrap();
    assert_eq!((v.decision, v.order), (Decision::Abelian, Some(8)));
    assert!(is_abelian_field(&p(&[2, 0, -4, 0, 1]), 48).unwrap().is_abelian());
    // Splitting field of x^3 - 2: normal of degree 6, group S3.
    let v = is_abelian_field(&p(&[9, 9, 0, 3, 6, 3, 1]), 48).unwrap();
    assert_eq!(v.decision, Decision::NonAbelian);
    assert_ne!(v.reason, Some(VerdictReason::NormalityPrefilterFail));
    // Non-rational coefficients and a non-monic input.
    assert!(is_abelian_field(&UniPoly::new(vec![rat(1), rat(0), qab_arith::ratio(9, 4)]), 48).unwrap().is_abelian());
    assert!(is_abelian_field(&p(&[1, 0, 0, 1, 0, 1]), 4).unwrap().decision == Decision::UndecidedAtCap);
    assert!(is_abelian_field(&p(&[-1, 0, 1]), 48).is_err());
}

/// Minimal polynomial of 2cos(2pi/n), rounded from floating point.
fn real_cyclotomic(n: u32) -> UniPoly {
    let mut coeffs = vec![1.0f64];
    for k in 1..=n / 2 {
        if num_integer::gcd(k, n) != 1 {
            continue;
        }
        let r = 2.0 * (2.0 * std::f64::consts::PI * k as f64 / n as f64).cos();
        let mut next = vec![0.0; coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c * r;
        }
        coeffs = next;
    }
    UniPoly::new(coeffs.iter().map(|c| rat(c.round() as i64)).collect())
}

#[test]
fn real_cyclotomic_fields_are_abelian() {
    for n in 3..=20 {
        let f = real_cyclotomic(n);
        let v = is_abelian_field(&f, 48).unwrap();
        assert!(v.is_abelian(), "n = {n}: {f}");
        assert_eq!(v.order, Some(f.degree()));
    }
}

#[test]
fn three_torsion_of_x3_plus_1() {
    let e = RationalCurve::from_ints([0, 0, 0, 0, 1]).unwrap();
    assert!(point_field_abelian(&e, &p(&[0, 1]), 12).unwrap().is_abelian());
    assert!(!point_field_abelian(&e, &p(&[4, 0, 0, 1]), 12).unwrap().is_abelian());
}

#[test]
fn order_eight_points() {
    let e = j("12721^3/(3*5*7*11^2)");
    assert!(exists_abelian_point_of_order(&e, 8, ORDER8_CAP).unwrap().found);
    let e = j("11^6/(3*5*7)");
    assert!(exists_abelian_point_of_order(&e, 4, ORDER4_CAP).unwrap().found);
    assert!(!exists_abelian_point_of_order(&e, 8, ORDER8_CAP).unwrap().found);
}

#[test]
fn full_levels() {
    assert!(full_level_abelian(&j("19^6/(3^2*5^2*7^2)"), 4).unwrap());
    let e = j("-2^18*7^3/19^3");
    assert!(full_level_abelian(&e, 3).unwrap());
    assert!(!full_level_abelian(&e, 2).unwrap());
    // 11a1 twist with Z/5 x Z/5 over Q^ab, and 11a3 with only Z/5
    assert!(full_level_abelian(&j("-2^12*31^3/11^5"), 5).unwrap());
    assert!(!full_level_abelian(&j("-2^12/11"), 5).unwrap());
    assert!(full_level_abelian(&e, 6).is_err());
}

#[test]
fn halving_quartics() {
    let e = RationalCurve::from_ints([0, 0, 0, -1, 0]).unwrap();
    let model = e.two_torsion_model_at(&rat(0)).unwrap();
    assert_eq!((model.b.clone(), model.d.clone()), (rat(0), rat(-1)));
    let qs = halving_x_coordinates(&model, &qab_torsion::Point::affine(rat(0), rat(0))).unwrap();
    assert_eq!(qs, vec![p(&[-1, 0, 0, 0, 1])]);
    let qs = halving_x_coordinates(&model, &qab_torsion::Point::affine(rat(1), rat(0))).unwrap();
    assert_eq!(qs, vec![p(&[-1, 0, 0, 0, 1]), p(&[-4, 0, 0, 0, 1])]);
    assert!(halving_x_coordinates(&model, &qab_torsion::Point::affine(rat(2), rat(0))).is_err());
}

#[test]
fn quick_order_four_filter() {
    let m = model;
    assert_eq!(order4_over_qab_quick(&m(1, 2)), Order4Quick::No);
    // x^2 + 3x + 2 splits: (-1, 0) halves over Q(i)
    assert_eq!(order4_over_qab_quick(&m(3, 2)), Order4Quick::NeedsFullCheck);
    let e = RationalCurve::from_ints([0, 3, 0, 2, 0]).unwrap();
    assert!(exists_abelian_point_of_order(&e, 4, ORDER4_CAP).unwrap().found);
    assert_eq!(order4_over_qab_quick(&m(1, 4)), Order4Quick::YesNotFull);
    // y^2 = x^3 + s x, s not plus or minus a square
    for s in [2, 3, -2, 5, 6, -7] {
        assert_eq!(order4_over_qab_quick(&m(0, s)), Order4Quick::No, "s = {s}");
    }
    // the verdict agrees with the full search
    let e = RationalCurve::from_ints([0, 1, 0, 2, 0]).unwrap();
    assert!(!exists_abelian_point_of_order(&e, 4, ORDER4_CAP).unwrap().found);
}

fn model(b: i64, d: i64) -> qab_torsion::TwoTorsionModel {
    let e = RationalCurve::new(rat(0), rat(b), rat(0), rat(d), rat(0)).unwrap();
    e.two_torsion_model_at(&Rational::from_integer(0.into())).unwrap()
}
