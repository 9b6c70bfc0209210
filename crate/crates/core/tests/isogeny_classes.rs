//! Isogeny classes against degree lists computed independently with PARI/GP
//! (`ellisomat` on a minimal model of the same curve).

use qab_arith::{parse_rational, rat, UniPoly};
use qab_torsion::curve::{curve_from_j, RationalCurve};
use qab_torsion::isogeny::{
    cyclic_degrees_of, isogeny_class, kenku_check, prime_isogenies, velu, KernelPolynomial,
};
use qab_torsion::Error;

fn by_j(j: &str) -> RationalCurve {
    curve_from_j(&parse_rational(j).unwrap())
}

const BY_J: &[(&str, &[u64])] = &[
    ("-11*131^3", &[1, 11]),
    ("-2^15", &[1, 11]),
    ("-11^2", &[1, 11]),
    ("-5^2/2", &[1, 3, 5, 15]),
    ("-5^2*241^3/2^3", &[1, 3, 5, 15]),
    ("-5*29^3/2^5", &[1, 3, 5, 15]),
    ("5*211^3/2^15", &[1, 3, 5, 15]),
    ("-17^2*101^3/2", &[1, 17]),
    ("-17*373^3/2^17", &[1, 17]),
    ("-2^15*3^3", &[1, 19]),
    ("-3^2*5^6/2^3", &[1, 3, 7, 21]),
    ("3^3*5^3/2", &[1, 3, 7, 21]),
    ("-3^2*5^3*101^3/2^21", &[1, 3, 7, 21]),
    ("-3^3*5^3*383^3/2^7", &[1, 3, 7, 21]),
    ("-2^15*3*5^3", &[1, 3, 9, 27]),
    ("-7*11^3", &[1, 37]),
    ("-7*137^3*2083^3", &[1, 37]),
    ("-2^18*3^3*5^3", &[1, 43]),
    ("-2^15*3^3*5^3*11^3", &[1, 67]),
    ("-2^18*3^3*5^3*23^3*29^3", &[1, 163]),
    ("-3^3*5^3", &[1, 2, 7, 14]),
    ("3^3*5^3*17^3", &[1, 2, 7, 14]),
    ("-3^3*5^3*17^3", &[1]),
    ("2^12*3^3/37", &[1]),
    ("2^13/11", &[1, 3]),
    ("-1/(2^5*19)", &[1, 5]),
    ("3^3*4^3/(2^7*13)", &[1]),
    ("-3^3*43^3/(2^7*13)", &[1, 7]),
    ("-3*73^3/2^9", &[1, 3, 9]),
    ("-2^12*7/3", &[1, 13]),
    ("-2^12/11", &[1, 5, 25]),
    ("-5^6/(3^2*23)", &[1, 2]),
    ("11^6/(3*5*7)", &[1, 2, 4, 4]),
    ("2^8*7", &[1, 3]),
    ("12721^3/(3*5*7*11^2)", &[1, 2, 4, 4, 8, 8]),
    ("2161^3/(2^10*3^5*11)", &[1, 2, 5, 10]),
    ("71^3/(2^4*3^3*5)", &[1, 2, 3, 4, 4, 6, 12, 12]),
    ("103681^3/(3^4*5)", &[1, 2, 4, 4, 8, 8, 16, 16]),
    ("-5^3*1637^3/(2^18*7)", &[1, 2, 3, 6, 9, 18]),
    ("-2^18*7^3/19^3", &[1, 3, 3]),
    ("19^6/(3^2*5^2*7^2)", &[1, 2, 2, 2]),
    ("37^3*109^3/(2^4*3^4*7^2)", &[1, 2, 2, 2, 4, 4]),
    ("7^3*127^3/(2^2*3^6*5^2)", &[1, 2, 2, 2, 3, 6, 6, 6]),
    ("241^3/(3^2*5^2)", &[1, 2, 2, 2, 4, 4, 8, 8]),
    ("-2^12*31^3/11^5", &[1, 5, 5]),
    ("13^3*17^3/(3^4*5^4)", &[1]),
    ("13^3*37^3/(3^4*5^4)", &[1, 2, 2, 2, 4, 4, 4, 4]),
];

const BY_COEFFS: &[([i64; 5], &[u64])] = &[
    ([1, 0, 1, 4, -6], &[1, 2, 3, 3, 6, 6]),
    ([0, 0, 1, 0, -7], &[1, 3, 3, 9]),
    ([0, 0, 1, 0, 0], &[1, 3, 3, 9]),
    ([1, -1, 0, -2, -1], &[1, 2, 7, 14]),
];

#[test]
fn degree_multisets_match_oracle() {
    let mut failures = Vec::new();
    let curves = BY_J
        .iter()
        .map(|(j, d)| (j.to_string(), by_j(j), *d))
        .chain(BY_COEFFS.iter().map(|(a, d)| (format!("{a:?}"), RationalCurve::from_ints(*a).unwrap(), *d)));
    for (name, e, expected) in curves {
        let (class, degrees) = cyclic_degrees_of(&e).unwrap();
        if degrees.degrees != expected {
            failures.push(format!("{name}: got {:?}, expected {expected:?}", degrees.degrees));
        }
        let report = kenku_check(&class).unwrap();
        assert!(report.passed(), "{name}: {:?}", report.violations);
    }
    assert!(failures.is_empty(), "{failures:#?}");
}

#[test]
fn every_edge_has_a_dual_back_to_its_source() {
    for j in ["-2^12/11", "71^3/(2^4*3^3*5)", "-3^2*5^6/2^3", "-2^12*7/3"] {
        let class = isogeny_class(&by_j(j)).unwrap();
        for edge in &class.edges {
            let Some(k) = &edge.kernel else { continue };
            let source = &class.curves[edge.source];
            let iso = velu(source, k).unwrap();
            let back = prime_isogenies(&iso.codomain, edge.degree).unwrap();
            assert!(
                back.iter().any(|kb| velu(&iso.codomain, kb).unwrap().codomain.is_isomorphic(source)),
                "{j}: no dual for an edge of degree {}",
                edge.degree
            );
        }
    }
}

#[test]
fn five_isogeny_of_11a3() {
    let kernels = prime_isogenies(&by_j("-2^12/11"), 5).unwrap();
    assert_eq!(kernels.len(), 1);
    assert_eq!(kernels[0].poly.degree(), 2);
}

#[test]
fn trivial_class() {
    let e = by_j("2^12*3^3/37");
    for ell in [2, 3, 5, 7, 13] {
        assert!(prime_isogenies(&e, ell).unwrap().is_empty());
    }
    assert_eq!(isogeny_class(&e).unwrap().curves.len(), 1);
    assert!(prime_isogenies(&e, 11).is_err());
}

#[test]
fn non_kernels_are_rejected() {
    // y^2 = x^3 + 1 has psi_3 = 3x(x^3 + 4): x gives a 3-isogeny, x + 1 does
    // not divide psi_3.
    let e = RationalCurve::from_ints([0, 0, 0, 0, 1]).unwrap();
    assert!(velu(&e, &KernelPolynomial { ell: 3, poly: UniPoly::x() }).is_ok());
    let bad = KernelPolynomial { ell: 3, poly: UniPoly::from_ints(&[1, 1]) };
    assert!(matches!(velu(&e, &bad), Err(Error::NotKernel(_))));
    // 11a1: a single rational 5-torsion x-coordinate has the wrong degree.
    let e = RationalCurve::from_ints([0, -1, 1, -10, -20]).unwrap();
    let prim = qab_torsion::primitive_part(&e, 5).unwrap();
    let lin: Vec<UniPoly> = qab_arith::factors_up_to_degree(&prim, 1)
        .unwrap()
        .into_iter()
        .map(|(g, _)| g)
        .collect();
    assert_eq!(lin.len(), 2);
    assert!(matches!(velu(&e, &KernelPolynomial { ell: 5, poly: lin[0].clone() }), Err(Error::NotKernel(_))));
    let both = KernelPolynomial { ell: 5, poly: &lin[0] * &lin[1] };
    assert!(prime_isogenies(&e, 5).unwrap().contains(&both));
    assert!(velu(&e, &both).is_ok());
    let _ = rat(0);
}
