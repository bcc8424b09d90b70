//! Exact arithmetic substrate: rationals, polynomials, truncated power
//! series and rational functions.

pub mod poly;
pub mod rat;
pub mod ratfunc;
pub mod roots;
pub mod series;

pub use poly::Poly;
pub use rat::{fmt_rat, parse_rat, rat, ratio, Int, Rat};
pub use ratfunc::RatFunc;
pub use roots::{rational_roots, RationalRoots};
pub use series::{PowerSeries, SeriesError};
