//! Scalars, univariate polynomials, truncated series and Newton sums.

pub mod crt;
pub mod dense;
pub mod field;
pub mod poly;
pub mod ratfunc;
pub mod series;
pub mod sqf;

pub use field::{rat, rat_frac, Field, PrimeField, Rational, Rationals};
pub use poly::UniPoly;
pub use ratfunc::{RatFunc, RatFuncs};
pub use series::{
    hadamard, newton_series, poly_from_newton, series_exp, series_integrate, series_inv,
    series_log, TruncSeries,
};
pub use sqf::{squarefree_uni, SqfDecompUni};
