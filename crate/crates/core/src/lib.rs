//! Torsion of elliptic curves over Q in the maximal abelian extension.

pub mod algorithm;
pub mod corpus;
pub mod curve;
pub mod divpoly;
pub mod error;
pub mod galois;
pub mod group;

pub use curve::{curve_from_j, Point, RationalCurve, TwoTorsionModel};
pub use divpoly::{division_polynomial, primitive_part, DivisionPolynomials};
pub use error::{Error, Result};
pub use group::TorsionGroup;
pub mod isogeny;
pub mod report;

pub use isogeny::{cyclic_degrees, isogeny_class, prime_isogenies, velu, CyclicDegrees, IsogenyClass, KernelPolynomial};
pub use algorithm::{classification_gate, torsion_over_qab, torsion_over_qab_with_caps, AlgorithmTrace, Caps};
