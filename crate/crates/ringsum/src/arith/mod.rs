//! Exact arithmetic: rationals, cyclotomic numbers, parameter fields,
//! univariate polynomials and rational functions, integer lattices.

pub mod constant;
pub mod cyc;
pub mod dispersion;
pub mod field;
pub mod frac;
pub mod introots;
pub mod lattice;
pub mod linalg;
pub mod poly;
pub mod units;

pub use constant::Const;
pub use cyc::Cyc;
pub use field::Field;
pub use frac::Frac;
pub use lattice::Lattice;
pub use poly::Poly;

/// Polynomials in the summation variable `k` over the constant field.
pub type KPoly = Poly<Const>;
/// Rational functions in `k`; the base difference field K(k).
pub type RatFun = Frac<Const>;
