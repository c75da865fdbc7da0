//! Set-graded non-commutative Poisson algebras over the rationals.
//!
//! An algebra carries a Lie bracket and an associative product on a
//! finite-dimensional space split into labelled blocks. This crate checks the
//! axioms, computes the connection relation on labels, the graded ideals it
//! induces, the resulting decomposition, and decides gr-simplicity.

pub mod algebra;
pub mod analysis;
pub mod catalog;
pub mod corpus;
pub mod document;
pub mod error;
pub mod ideals;
pub mod linalg;
pub mod report;
pub mod support;

pub use algebra::{ExtLabel, GradedAlgebra, LabelId, Product};
pub use error::{Error, Result};
pub use linalg::{Rational, Subspace, Vector};
pub use support::CheckedAlgebra;
