//! Exact arithmetic: rationals, polynomials in `lambda` and in the coordinate
//! generators, and truncated Laurent series over any of them.

pub mod coeff;
pub mod lambda;
pub mod poly;
pub mod rational;
pub mod series;

pub use coeff::Coeff;
pub use lambda::LambdaPoly;
pub use poly::{Family, Gen, Monomial, Poly};
pub use rational::{fmt_rational, int, parse_rational, rat, GaussianRational, Rational};
pub use series::{Part, Point, Series};
