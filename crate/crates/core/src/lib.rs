//! Bicovariant differential calculi on finite bicrossproduct Hopf algebras
//! k(M)◀▸kG built from group factorizations X = GM.

pub mod cartan;
pub mod error;
pub mod exterior;
pub mod groups;
pub mod hopf;
pub mod rep;
pub mod tangent;

pub use error::{CoreError, Result};
pub use groups::{catalog, ConjugacyClass, Factorization, FiniteGroup, Perm};
