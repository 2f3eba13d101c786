use num_traits::Zero;

use super::elim::{is_rref, rref_sparse};
use super::{RatMatrix, Scalar, SparseVec};
use crate::error::{Error, Result};

/// Subspace of ℚⁿ held by its reduced row-echelon basis. The basis is
/// canonical, so `==` is subspace equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<SparseVec>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: (0..ambient_dim).map(SparseVec::unit).collect(),
        }
    }

    /// Span of an arbitrary (possibly dependent) family.
    pub fn span(ambient_dim: usize, vectors: impl IntoIterator<Item = SparseVec>) -> Self {
        let rows: Vec<SparseVec> = vectors.into_iter().collect();
        debug_assert!(rows.iter().all(|v| v.max_index().is_none_or(|i| i < ambient_dim)));
        Self {
            ambient_dim,
            basis: rref_sparse(rows),
        }
    }

    pub(crate) fn from_rref_unchecked(ambient_dim: usize, basis: Vec<SparseVec>) -> Self {
        debug_assert!(is_rref(&basis));
        Self { ambient_dim, basis }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.basis.iter().map(|b| b.leading().expect("nonzero basis vector").0).collect()
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is outside.
    pub fn coordinates(&self, v: &SparseVec) -> Option<Vec<Scalar>> {
        let coords: Vec<Scalar> = self.pivots().iter().map(|&p| v.get(p)).collect();
        let mut residual = v.clone();
        for (c, b) in coords.iter().zip(&self.basis) {
            residual = residual.add_scaled(&-c, b);
        }
        residual.is_zero().then_some(coords)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// Reduces `v` modulo the subspace onto the non-pivot coordinates.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut r = v.clone();
        for b in &self.basis {
            let p = b.leading().expect("nonzero").0;
            let c = r.get(p);
            if !c.is_zero() {
                r = r.add_scaled(&-c, b);
            }
        }
        r
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        Ok(Subspace::span(
            self.ambient_dim,
            self.basis.iter().chain(&other.basis).cloned(),
        ))
    }

    /// `A ∩ B` through the kernel of `[A | -B]`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.ambient_dim));
        }
        let cols: Vec<SparseVec> = self
            .basis
            .iter()
            .cloned()
            .chain(other.basis.iter().map(SparseVec::neg))
            .collect();
        let m = RatMatrix::from_sparse_cols(self.ambient_dim, cols);
        let kernel = m.nullspace();
        let da = self.dim();
        let vectors = kernel.basis().iter().map(|k| {
            k.iter()
                .filter(|(i, _)| *i < da)
                .fold(SparseVec::new(), |acc, (i, c)| acc.add_scaled(c, &self.basis[*i]))
        });
        Ok(Subspace::span(self.ambient_dim, vectors))
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::Dimension(format!(
                "ambient dimensions differ: {} vs {}",
                self.ambient_dim, other.ambient_dim
            )));
        }
        Ok(())
    }
}
