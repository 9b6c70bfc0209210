//! Serialization helpers shared by the JSON reports.

use qab_arith::rational::format_rational;
use qab_arith::{Rational, UniPoly};
use serde::Serializer;

pub fn ser_poly<S: Serializer>(p: &UniPoly, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

pub fn ser_rational<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(q))
}

pub fn ser_rationals<S: Serializer>(qs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(qs.iter().map(format_rational))
}
