use proptest::prelude::*;
use qab_arith::{rat, ratio, UniPoly};
use qab_modular::expr::{parse_ratfunc, parse_ypoly};
use qab_modular::RatFunc;

fn poly() -> impl Strategy<Value = UniPoly> {
    prop::collection::vec((-20i64..20, 1i64..5), 0..6)
        .prop_map(|c| UniPoly::new(c.into_iter().map(|(n, d)| ratio(n, d)).collect()))
}

proptest! {
    #[test]
    fn display_parses_back(n in poly(), d in poly()) {
        prop_assume!(!d.is_zero());
        let f = RatFunc::new(n, d);
        prop_assert_eq!(parse_ratfunc(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn evaluation_commutes_with_arithmetic(a in poly(), b in poly(), h in -9i64..9) {
        let fa = RatFunc::poly(a.clone());
        let fb = RatFunc::poly(b.clone());
        let h = rat(h);
        prop_assert_eq!(fa.mul(&fb).eval(&h), Some(a.eval(&h) * b.eval(&h)));
        prop_assert_eq!(fa.sub(&fb).eval(&h), Some(a.eval(&h) - b.eval(&h)));
    }
}

#[test]
fn notation() {
    let a = parse_ratfunc("h^{12} \u{2013} 8h^9").unwrap();
    let b = parse_ratfunc("x^(12) - 8 * x^9").unwrap();
    assert_eq!(a, b);
    assert_eq!(parse_ratfunc("(h+1)(h-1)").unwrap(), parse_ratfunc("h^2 - 1").unwrap());
    assert_eq!(parse_ratfunc("2h z^2").unwrap(), parse_ratfunc("2h").unwrap());
    assert!(parse_ratfunc("h/(h-h)").is_err());
    assert!(parse_ratfunc("y").is_err());
    assert!(parse_ratfunc("(h+1").is_err());
    assert!(parse_ypoly("xy^2 + y").is_ok());
}
