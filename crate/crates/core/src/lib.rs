//! Exact annihilating polynomials for residues, composed sums and diagonals of
//! bivariate rational functions, plus fast expansion of lattice-walk series.

pub mod bivar;
pub mod cli;
pub mod composed;
pub mod corealg;
pub mod diagonal;
pub mod error;
pub mod residues;
pub mod telescope;
pub mod walks;

pub use bivar::{BiPoly, BiRational};
pub use corealg::{Rational, TruncSeries, UniPoly};
pub use error::{Error, ErrorClass, Result};
