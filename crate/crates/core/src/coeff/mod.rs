//! Exact coefficient arithmetic: multivariate rational functions over Q in
//! the independent variables, grid spacings and named constants.

mod gcd;
mod grid;
mod poly;
mod rational;
mod series;
mod symbol;

pub use gcd::gcd;
pub use grid::{Axis, Grid, Step};
pub use poly::{Monom, MultiPoly, Q};
pub use rational::RationalFunction;
pub use series::{rf_series, SpacingExps, TruncatedSeries};
pub use symbol::{Symbol, SymbolKind, SymbolTable};

pub(crate) use poly::fmt_q;
pub(crate) use series::{spacing_monomial, weight_of};
