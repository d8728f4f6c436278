//! Exact computer algebra for elementary Lie algebras of order 3.
//!
//! An algebra is `g = g0 ⊕ g1` with a Lie bracket on `g0`, a `g0`-module
//! structure on `g1` and a totally symmetric, equivariant 3-bracket
//! `S³(g1) → g0`. Everything is computed over the Gaussian rationals.

pub mod algebra;
pub mod catalog;
pub mod cli;
pub mod contraction;
pub mod deformation;
pub mod error;
pub mod json;
pub mod linalg;
pub mod rep;
pub mod scalar;
pub mod solver;

pub use algebra::{AlgebraOrder3, BasisChange, BracketTriple, GradedDims, JacobiResiduals, Which};
pub use error::{Error, Result};
pub use linalg::{Matrix, Subspace};
pub use scalar::{GaussRational, RatExp, Rational, TruncPoly};
