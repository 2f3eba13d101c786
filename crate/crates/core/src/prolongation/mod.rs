//! Tanaka prolongation and the classical prolongation of linear maps.

mod standard;
mod tanaka;
mod tower;

pub use standard::{column_major, hessian_space, polynomial_to_tensor, tensor_to_polynomial, LinearMapSpace};

pub use tanaka::{
    assemble, degree_zero_matrices, der0, prolong_step, split_nonpositive, tanaka, tanaka_nonpositive,
    ProlongationResult, TanakaOptions, Termination, DEFAULT_MAX_DEGREE,
};
pub use tower::{Component, ProlongElement, SolveMode, StepStats, Tower};
