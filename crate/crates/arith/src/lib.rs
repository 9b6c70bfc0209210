//! Exact arithmetic over Q: rationals, dense univariate polynomials, their
//! factorization, and resultants of bivariate polynomials.

pub mod bipoly;
pub mod factor;
pub mod hensel;
pub mod integer;
pub mod modp;
pub mod parse;
pub mod poly;
pub mod rational;
pub mod zpoly;

pub use bipoly::{resultant, BiPoly, Var};
pub use factor::{factor_over_q, factors_up_to_degree, is_irreducible, rational_roots, FactorList};
pub use poly::UniPoly;
pub use rational::{is_square, parse_rational, rat, ratio, Rational};
pub use zpoly::ZPoly;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("cannot parse {0:?}")]
    Parse(String),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("degenerate input: {0}")]
    Degenerate(String),
}

/// Monic gcd of two polynomials; `poly_gcd(0, 0) = 0`.
pub fn poly_gcd(f: &UniPoly, g: &UniPoly) -> UniPoly {
    f.gcd(g)
}
