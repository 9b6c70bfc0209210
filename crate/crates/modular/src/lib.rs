//! Desk-scale checks of the modular-curve eliminations in the
//! classification of `E(Q^ab)_tors`: printed maps, point lists on the
//! condition curves, and the j-invariant bookkeeping behind them.

pub mod expr;
pub mod families;
pub mod linalg;
pub mod model;
pub mod paper;
pub mod points;
pub mod ratfunc;
pub mod series;

pub use model::{CurvePoint, PlaneCurveModel, RationalMap};
pub use ratfunc::RatFunc;
pub use paper::{verify_paper, PaperReport};
