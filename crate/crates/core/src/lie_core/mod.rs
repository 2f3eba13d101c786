//! Graded Lie algebras over ℚ given by structure constants.

mod algebra;
mod json;

pub use algebra::{AlgebraElement, BasisElement, BracketRow, GradedAlgebra, JacobiFailure, JacobiReport, EAGER_JACOBI_LIMIT};
pub use json::{AlgebraJson, BasisJson, BracketJson, TermJson};
