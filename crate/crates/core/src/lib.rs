//! Exact braid-group representations on multiset-permutation orbits.
//!
//! A seed tuple `z` determines the orbit `X` of its coordinate permutations;
//! a q-table assigns a nonzero scalar to each ordered pair of values; and the
//! generator `τ_k` acts by `v_x ↦ q(x_k, x_{k+1})·v_{σ_k(x)}`. This crate
//! builds those representations with exact Laurent-polynomial entries,
//! checks the braid relations, certifies irreducibility and computes coranks.

pub mod analysis;
pub mod cli;
pub mod error;
pub mod export;
pub mod golden;
pub mod linalg;
pub mod monomial;
pub mod orbit;
pub mod rep;
pub mod scalar;

pub use error::Error;
pub use monomial::{DenseMatrix, MonomialMatrix, RankMode};
pub use orbit::{OrbitIndex, ValueTuple};
pub use rep::{BraidWord, QTable, Representation};
pub use scalar::{GaussianRational, Rational, Scalar};
