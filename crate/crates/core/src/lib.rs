//! Exact computation of Tanaka prolongations of graded nilpotent Lie
//! algebras, together with the rank-3 symbol family `m(k)`, its Heisenberg
//! companion `n ⊕ s`, the contact-polynomial model and the Hankel-minor
//! description of secant ideals of the rational normal curve.

pub mod contact_poly;
pub mod error;
pub mod exact_linalg;
pub mod lie_core;
pub mod paper_models;
pub mod prolongation;
pub mod verify;

pub use error::{Error, Result};
pub use exact_linalg::{RatMatrix, Scalar, SparseVec, Subspace};
pub use lie_core::{AlgebraElement, BasisElement, GradedAlgebra};
