//! Certification of printed point lists.

use num_integer::{Integer, Roots};
use num_traits::{ToPrimitive, Zero};
use qab_arith::{rat, Rational};
use qab_torsion::{Point, RationalCurve};
use rayon::prelude::*;
use serde::Serialize;

use crate::families::{is_cusp, Family};
use crate::model::{CurvePoint, PlaneCurveModel};

pub const DEFAULT_HEIGHT_BOUND: i64 = 10_000;

#[derive(Clone, Debug, Serialize)]
pub struct PointListReport {
    pub curve: String,
    pub expected: Vec<CurvePoint>,
    pub on_curve: bool,
    /// Rational torsion of the model, as points.
    pub torsion: Vec<CurvePoint>,
    pub torsion_matches: bool,
    pub height_bound: i64,
    /// Points found by the bounded search that are not listed.
    pub extra_points: Vec<CurvePoint>,
    /// `(h, is a zero of the j-denominator)` for each listed affine point.
    pub cusps: Vec<(String, bool)>,
    pub rank_zero: &'static str,
}

impl PointListReport {
    pub fn passed(&self) -> bool {
        self.on_curve && self.torsion_matches && self.extra_points.is_empty() && self.cusps.iter().all(|c| c.1)
    }
}

fn integral_coeffs(model: &PlaneCurveModel) -> Option<Vec<i128>> {
    model
        .rhs
        .coeffs()
        .iter()
        .map(|c| c.is_integer().then(|| c.to_integer().to_i128()).flatten())
        .collect()
}

fn is_square_i128(v: i128) -> Option<i128> {
    if v < 0 {
        return None;
    }
    // squares mod 64 lie in {0, 1, 4, 9, 16, 17, 25, 33, 36, 41, 49, 57}
    if (0x0202_0212_0203_0213u64 >> (v & 63)) & 1 == 0 {
        return None;
    }
    let r = v.sqrt();
    (r * r == v).then_some(r)
}

/// Affine rational points of `Y^2 = F(h)` (integral monic `F` of odd
/// degree `n`) with `h = a / e^2` for cubics and `h = a / e` otherwise,
/// `|a| <= bound`, `e` up to `sqrt(bound)` for cubics and `bound` otherwise.
pub fn bounded_search(model: &PlaneCurveModel, bound: i64) -> Vec<CurvePoint> {
    let f = integral_coeffs(model).expect("integral model");
    let n = f.len() - 1;
    assert!(f[n] == 1, "monic model");
    let cubic = n == 3;
    let e_max = if cubic { (bound as f64).sqrt() as i64 } else { bound };
    let mut out: Vec<CurvePoint> = (1..=e_max)
        .into_par_iter()
        .flat_map_iter(|e| {
            let f = &f;
            let ee = if cubic { (e * e) as i128 } else { e as i128 };
            let pows: Vec<i128> = (0..=n).map(|i| ee.pow(i as u32)).collect();
            (-bound..=bound).filter_map(move |a| {
                if a.gcd(&e) != 1 {
                    return None;
                }
                // cubic: (e^3 y)^2 = sum f_i a^i e^(2(3 - i));
                // otherwise e^(n+1) y^2 = e sum f_i a^i e^(n - i)
                let a = a as i128;
                let mut v: i128 = 0;
                let mut ap: i128 = 1;
                for i in 0..=n {
                    v += f[i] * ap * pows[n - i];
                    ap *= a;
                }
                let (v, denom) = if cubic { (v, ee * e as i128) } else { (v * e as i128, ee.pow(n.div_ceil(2) as u32)) };
                let r = is_square_i128(v)?;
                let h = Rational::new(a.into(), ee.into());
                let y = Rational::new(r.into(), denom.into());
                Some((h, y))
            })
            .collect::<Vec<_>>()
        })
        .flat_map(|(h, y)| {
            if y.is_zero() {
                vec![CurvePoint::Affine(h, y)]
            } else {
                vec![CurvePoint::Affine(h.clone(), -y.clone()), CurvePoint::Affine(h, y)]
            }
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Checks a printed point list on a genus-one model `Y^2 = F(h)` with `F`
/// monic and integral.
pub fn certify_point_list(model: &PlaneCurveModel, expected: &[CurvePoint], height_bound: i64, family: Option<Family>) -> PointListReport {
    assert_eq!(model.genus, 1, "genus-one model expected");
    let mut expected = expected.to_vec();
    expected.sort();
    let on_curve = expected.iter().all(|p| model.contains(p));
    let c = |i: usize| model.rhs.coeff(i);
    let e = RationalCurve::new(rat(0), c(2), rat(0), c(1), c(0)).expect("nonsingular model");
    let mut torsion: Vec<CurvePoint> = e
        .rational_torsion()
        .1
        .into_iter()
        .map(|p| match p {
            Point::Infinity => CurvePoint::Infinity,
            Point::Affine(x, y) => CurvePoint::Affine(x, y),
        })
        .collect();
    torsion.sort();
    let extra_points = bounded_search(model, height_bound).into_iter().filter(|p| !expected.contains(p)).collect();
    let cusps = match family {
        Some(f) => expected.iter().filter_map(|p| p.h()).map(|h| (h.to_string(), is_cusp(f, h))).collect(),
        None => Vec::new(),
    };
    PointListReport {
        curve: model.to_string(),
        torsion_matches: torsion == expected,
        expected,
        on_curve,
        torsion,
        height_bound,
        extra_points,
        cusps,
        rank_zero: "trusted: rank 0 is taken as given",
    }
}
