//! Exact rational linear algebra: sparse vectors, matrices, canonical
//! subspaces and the elimination kernels behind them.

pub mod elim;
mod matrix;
mod sparse;
mod subspace;

pub use matrix::{RatMatrix, SPARSE_DENSITY_THRESHOLD};
pub use sparse::SparseVec;
pub use subspace::Subspace;

use num_bigint::BigInt;

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Scalar = num_rational::BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> Scalar {
    Scalar::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_scalar(s: &str) -> Option<Scalar> {
    s.trim().parse::<Scalar>().ok()
}
