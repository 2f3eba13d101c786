use num_traits::One;

use crate::error::{Error, Result};
use crate::exact_linalg::{int, RatMatrix, Scalar};
use crate::lie_core::GradedAlgebra;

fn check_k(k: usize, min: usize) -> Result<()> {
    if k < min {
        return Err(Error::InvalidParameter(format!("k = {k}, need k >= {min}")));
    }
    Ok(())
}

pub(crate) fn sign(i: usize) -> Scalar {
    if i.is_multiple_of(2) {
        Scalar::one()
    } else {
        -Scalar::one()
    }
}

pub fn e(i: usize) -> String {
    format!("E_{i}")
}

pub fn f(i: usize) -> String {
    format!("F_{i}")
}

/// The rank-3 symbol `m(k)` on `X, E_1..E_k, F_{k-1}, F_k, N`.
pub fn make_m(k: usize) -> Result<GradedAlgebra> {
    check_k(k, 2)?;
    let mut basis = vec![("X".to_string(), -1)];
    basis.extend((1..=k).map(|i| (e(i), -(i as i32))));
    basis.push((f(k - 1), -1));
    basis.push((f(k), -2));
    basis.push(("N".to_string(), -2));
    let mut brackets = Vec::new();
    for i in 1..k {
        brackets.push(("X".to_string(), e(i), vec![(e(i + 1), int(1))]));
    }
    brackets.push(("X".to_string(), f(k - 1), vec![(f(k), int(1))]));
    brackets.push((f(k - 1), e(1), vec![("N".to_string(), int(1))]));
    GradedAlgebra::build_owned(basis, brackets)
}

/// `g'(k)` on `E_0..E_k, F_0..F_k, N, X`.
pub fn make_gprime(k: usize) -> Result<GradedAlgebra> {
    check_k(k, 2)?;
    let mut basis: Vec<(String, i32)> = (0..=k).map(|i| (e(i), -(i as i32))).collect();
    basis.extend((0..=k).map(|i| (f(i), k as i32 - 2 - i as i32)));
    basis.push(("N".to_string(), -2));
    basis.push(("X".to_string(), -1));
    let mut brackets = Vec::new();
    for i in 0..=k {
        brackets.push((e(i), f(k - i), vec![("N".to_string(), sign(i))]));
    }
    for i in 0..k {
        brackets.push(("X".to_string(), e(i), vec![(e(i + 1), int(1))]));
        brackets.push(("X".to_string(), f(i), vec![(f(i + 1), int(1))]));
    }
    GradedAlgebra::build_owned(basis, brackets)
}

/// Heisenberg algebra on `E_0..E_k, F_0..F_k, N` with `[E_i, F_{k-i}] = (-1)^i N`,
/// and the matrix of the symplectic form in the basis `E_0..E_k, F_0..F_k`.
pub fn make_heisenberg(k: usize) -> Result<(GradedAlgebra, RatMatrix)> {
    check_k(k, 2)?;
    let mut basis: Vec<(String, i32)> = (0..=k).map(|i| (e(i), -1)).collect();
    basis.extend((0..=k).map(|i| (f(i), -1)));
    basis.push(("N".to_string(), -2));
    let brackets = (0..=k)
        .map(|i| (e(i), f(k - i), vec![("N".to_string(), sign(i))]))
        .collect();
    let alg = GradedAlgebra::build_owned(basis, brackets)?;
    let n = k + 1;
    let mut rows = vec![vec![int(0); 2 * n]; 2 * n];
    for i in 0..n {
        rows[i][n + k - i] = sign(i);
        rows[n + k - i][i] = -sign(i);
    }
    Ok((alg, RatMatrix::from_rows(2 * n, rows)))
}
