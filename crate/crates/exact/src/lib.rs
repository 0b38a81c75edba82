//! Exact scalar substrate: rationals, cyclotomic fields Q(ζ_N), polynomials
//! over them with factorization, and dense linear algebra.

pub mod cyclotomic;
pub mod error;
pub mod factor;
mod intpoly;
pub mod matrix;
pub mod poly;
pub mod rational;
pub mod sparse;

pub use cyclotomic::Cyclotomic;
pub use error::{ExactError, Result};
pub use factor::{factor_poly, factor_poly_bounded, Factored, DEFAULT_DEGREE_BOUND};
pub use intpoly::factor_squarefree_rational;
pub use matrix::{ExactMatrix, Insert, RowEchelon};
pub use poly::Polynomial;
pub use rational::Rational;
pub use sparse::{SparseEchelon, SparseRref, SparseVec};

/// ζ_N^k.
pub fn root_of_unity(n: u32, k: i64) -> Cyclotomic { Cyclotomic::root_of_unity(n, k) }
