//! Exact arithmetic substrate: sparse multivariate polynomials over
//! arbitrary-precision integers or rationals, and truncated univariate
//! power series.

pub mod coeff;
pub mod poly;
pub mod series;

pub use coeff::{int, rat, Coeff, Integer, Rational};
pub use poly::{Monomial, Prune, SerializedTerm, SparsePoly, VarContext};
pub use series::TruncatedSeries;
