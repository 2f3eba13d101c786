use num_traits::Zero;

use super::elim::{kernel_from_rref, rref_bareiss, rref_sparse};
use super::{Scalar, SparseVec, Subspace};
use crate::error::{Error, Result};

/// Matrices with fewer nonzero entries than this fraction are stored sparsely.
pub const SPARSE_DENSITY_THRESHOLD: f64 = 0.10;

#[derive(Clone, Debug)]
enum Storage {
    Dense(Vec<Scalar>),
    Sparse(Vec<SparseVec>),
}

/// Rational matrix. Storage is picked by density at construction and is not
/// observable through any operation.
#[derive(Clone, Debug)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    storage: Storage,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            storage: Storage::Sparse(vec![SparseVec::new(); rows]),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_sparse_rows(n, (0..n).map(SparseVec::unit).collect())
    }

    /// Builds from dense rows; all rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Scalar>>) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix rows");
        let sparse: Vec<SparseVec> = rows.iter().map(|r| SparseVec::from_dense(r)).collect();
        Self::from_sparse_rows(cols, sparse)
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&v| Scalar::from_integer(v.into())).collect())
                .collect(),
        )
    }

    pub fn from_sparse_rows(cols: usize, rows: Vec<SparseVec>) -> Self {
        assert!(
            rows.iter().all(|r| r.max_index().is_none_or(|i| i < cols)),
            "sparse row index out of bounds"
        );
        let n = rows.len();
        let nnz: usize = rows.iter().map(SparseVec::nnz).sum();
        let cells = (n * cols).max(1);
        let storage = if (nnz as f64) < SPARSE_DENSITY_THRESHOLD * cells as f64 {
            Storage::Sparse(rows)
        } else {
            let mut dense = vec![Scalar::zero(); n * cols];
            for (i, r) in rows.iter().enumerate() {
                for (j, v) in r.iter() {
                    dense[i * cols + j] = v.clone();
                }
            }
            Storage::Dense(dense)
        };
        Self {
            rows: n,
            cols,
            storage,
        }
    }

    /// Builds with every column given as a sparse vector of length `rows`.
    pub fn from_sparse_cols(rows: usize, cols: Vec<SparseVec>) -> Self {
        let mut by_row: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); rows];
        for (j, col) in cols.iter().enumerate() {
            for (i, v) in col.iter() {
                by_row[*i].push((j, v.clone()));
            }
        }
        Self::from_sparse_rows(cols.len(), by_row.into_iter().map(SparseVec::from_pairs).collect())
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_sparse(&self) -> bool {
        matches!(self.storage, Storage::Sparse(_))
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        assert!(i < self.rows && j < self.cols, "matrix index out of bounds");
        match &self.storage {
            Storage::Dense(d) => d[i * self.cols + j].clone(),
            Storage::Sparse(r) => r[i].get(j),
        }
    }

    pub fn row(&self, i: usize) -> SparseVec {
        match &self.storage {
            Storage::Dense(d) => SparseVec::from_dense(&d[i * self.cols..(i + 1) * self.cols]),
            Storage::Sparse(r) => r[i].clone(),
        }
    }

    pub fn sparse_rows(&self) -> Vec<SparseVec> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn dense_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_dense(self.cols)).collect()
    }

    pub fn column(&self, j: usize) -> SparseVec {
        (0..self.rows)
            .map(|i| (i, self.get(i, j)))
            .filter(|(_, v)| !v.is_zero())
            .collect()
    }

    pub fn transpose(&self) -> RatMatrix {
        RatMatrix::from_sparse_cols(self.cols, self.sparse_rows())
    }

    pub fn is_zero(&self) -> bool {
        (0..self.rows).all(|i| self.row(i).is_zero())
    }

    pub fn mul_vec(&self, v: &SparseVec) -> SparseVec {
        (0..self.rows)
            .map(|i| (i, self.row(i).dot(v)))
            .filter(|(_, x)| !x.is_zero())
            .collect()
    }

    pub fn mul(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let cols: Vec<SparseVec> = (0..other.cols).map(|j| self.mul_vec(&other.column(j))).collect();
        Ok(RatMatrix::from_sparse_cols(self.rows, cols))
    }

    pub fn scale(&self, c: &Scalar) -> RatMatrix {
        RatMatrix::from_sparse_rows(self.cols, self.sparse_rows().iter().map(|r| r.scale(c)).collect())
    }

    pub fn add(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RatMatrix::from_sparse_rows(
            self.cols,
            (0..self.rows).map(|i| self.row(i).add(&other.row(i))).collect(),
        )
    }

    pub fn sub(&self, other: &RatMatrix) -> RatMatrix {
        self.add(&other.scale(&-Scalar::from_integer(1.into())))
    }

    /// Row-major flattening.
    pub fn flatten(&self) -> SparseVec {
        let mut pairs = Vec::new();
        for i in 0..self.rows {
            for (j, v) in self.row(i).iter() {
                pairs.push((i * self.cols + j, v.clone()));
            }
        }
        SparseVec::from_pairs(pairs)
    }

    pub fn unflatten(rows: usize, cols: usize, v: &SparseVec) -> RatMatrix {
        let mut by_row: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); rows];
        for (k, x) in v.iter() {
            by_row[k / cols].push((k % cols, x.clone()));
        }
        RatMatrix::from_sparse_rows(cols, by_row.into_iter().map(SparseVec::from_pairs).collect())
    }

    /// Reduced row-echelon form as sparse rows; the kernel follows storage.
    pub fn rref(&self) -> Vec<SparseVec> {
        match &self.storage {
            Storage::Dense(_) => rref_bareiss(&self.dense_rows(), self.cols),
            Storage::Sparse(r) => rref_sparse(r.clone()),
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().len()
    }

    pub fn nullspace(&self) -> Subspace {
        let rref = self.rref();
        Subspace::from_rref_unchecked(self.cols, canonical_kernel(&rref, self.cols))
    }

    /// Some `x` with `self * x = b`, free variables set to zero; `None` when
    /// the system is inconsistent.
    pub fn solve(&self, b: &SparseVec) -> Result<Option<SparseVec>> {
        if b.max_index().is_some_and(|i| i >= self.rows) {
            return Err(Error::Dimension(format!(
                "right-hand side longer than {} rows",
                self.rows
            )));
        }
        let aug: Vec<SparseVec> = (0..self.rows)
            .map(|i| {
                let mut r = self.row(i).into_entries();
                let bi = b.get(i);
                if !bi.is_zero() {
                    r.push((self.cols, bi));
                }
                SparseVec::from_pairs(r)
            })
            .collect();
        let aug = RatMatrix::from_sparse_rows(self.cols + 1, aug);
        let rref = aug.rref();
        let mut x = Vec::new();
        for row in &rref {
            let (p, _) = row.leading().expect("nonzero row");
            if *p == self.cols {
                return Ok(None);
            }
            let rhs = row.get(self.cols);
            if !rhs.is_zero() {
                x.push((*p, rhs));
            }
        }
        Ok(Some(SparseVec::from_pairs(x)))
    }
}

impl PartialEq for RatMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && (0..self.rows).all(|i| self.row(i) == other.row(i))
    }
}

impl Eq for RatMatrix {}

/// Kernel basis brought into canonical RREF.
fn canonical_kernel(rref: &[SparseVec], cols: usize) -> Vec<SparseVec> {
    rref_sparse(kernel_from_rref(rref, cols))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::{frac, int};

    #[test]
    fn identity_has_trivial_kernel() {
        let k = RatMatrix::identity(2).nullspace();
        assert_eq!(k.dim(), 0);
        assert_eq!(RatMatrix::identity(5).rank(), 5);
    }

    #[test]
    fn zero_row_kernel_is_full() {
        let m = RatMatrix::zeros(1, 3);
        assert_eq!(m.nullspace().dim(), 3);
        assert_eq!(m.rank(), 0);
    }

    #[test]
    fn rank_one_kernel_echelon() {
        let m = RatMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        let k = m.nullspace();
        assert_eq!(k.dim(), 1);
        // span of (-2, 1), leading one
        assert_eq!(k.basis()[0], SparseVec::from_pairs(vec![(0, int(1)), (1, frac(-1, 2))]));
        assert!(m.mul_vec(&k.basis()[0]).is_zero());
    }

    #[test]
    fn solve_examples() {
        let m = RatMatrix::from_i64(&[&[2, 0], &[0, 3]]);
        let b = SparseVec::from_dense(&[int(1), int(1)]);
        let x = m.solve(&b).unwrap().unwrap();
        assert_eq!(x.to_dense(2), vec![frac(1, 2), frac(1, 3)]);

        let z = RatMatrix::zeros(2, 2);
        assert_eq!(z.solve(&b).unwrap(), None);

        let id = RatMatrix::identity(3);
        let b = SparseVec::from_dense(&[int(4), frac(-2, 7), int(0)]);
        assert_eq!(id.solve(&b).unwrap().unwrap(), b);
    }

    #[test]
    fn storage_choice_is_invisible() {
        let mut rows = vec![vec![int(0); 20]; 20];
        rows[3][7] = int(2);
        rows[9][7] = int(4);
        rows[9][1] = int(1);
        let sparse = RatMatrix::from_rows(20, rows.clone());
        assert!(sparse.is_sparse());
        let dense_rows: Vec<Vec<Scalar>> = vec![vec![int(1); 3], vec![int(2); 3]];
        let dense = RatMatrix::from_rows(3, dense_rows);
        assert!(!dense.is_sparse());
        assert_eq!(sparse.rank(), 2);
        assert_eq!(sparse.nullspace().dim(), 18);
    }
}
