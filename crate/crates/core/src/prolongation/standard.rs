//! Classical prolongation of a space of linear maps `L ⊂ Hom(V, W)`.
//!
//! Maps are `dim_W × dim_V` matrices. A map is identified with its
//! column-major vector, so an element of `L^{(i)} ⊂ Hom(V, Hom(V, ...))`
//! becomes a tensor indexed by `(v_1, ..., v_{i+1}, w)` in lexicographic order.

use num_traits::Zero;

use crate::contact_poly::{Monomial, WeightedPolynomial};
use crate::error::{Error, Result};
use crate::exact_linalg::{RatMatrix, Scalar, SparseVec, Subspace};
use crate::paper_models::factorial;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMapSpace {
    dim_v: usize,
    dim_w: usize,
    span: Subspace,
}

/// Column-major vector of a matrix.
pub fn column_major(m: &RatMatrix) -> SparseVec {
    let rows = m.nrows();
    SparseVec::from_pairs(
        (0..m.ncols())
            .flat_map(|v| m.column(v).into_entries().into_iter().map(move |(w, c)| (v * rows + w, c)))
            .collect(),
    )
}

impl LinearMapSpace {
    /// Span of the given `dim_w × dim_v` matrices.
    pub fn new(dim_v: usize, dim_w: usize, matrices: &[RatMatrix]) -> Result<Self> {
        if let Some(m) = matrices.iter().find(|m| m.nrows() != dim_w || m.ncols() != dim_v) {
            return Err(Error::Dimension(format!(
                "expected {dim_w}x{dim_v} maps, got {}x{}",
                m.nrows(),
                m.ncols()
            )));
        }
        Ok(Self::from_vectors(dim_v, dim_w, matrices.iter().map(column_major)))
    }

    pub fn from_vectors(dim_v: usize, dim_w: usize, vectors: impl IntoIterator<Item = SparseVec>) -> Self {
        Self {
            dim_v,
            dim_w,
            span: Subspace::span(dim_v * dim_w, vectors),
        }
    }

    pub fn full(dim_v: usize, dim_w: usize) -> Self {
        Self {
            dim_v,
            dim_w,
            span: Subspace::full(dim_v * dim_w),
        }
    }

    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    pub fn dim_w(&self) -> usize {
        self.dim_w
    }

    pub fn dim(&self) -> usize {
        self.span.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.span.is_zero()
    }

    /// Column-major vectors of the canonical basis.
    pub fn span(&self) -> &Subspace {
        &self.span
    }

    pub fn matrix(&self, i: usize) -> RatMatrix {
        let v = &self.span.basis()[i];
        let cols = (0..self.dim_v)
            .map(|c| {
                SparseVec::from_pairs(
                    v.iter()
                        .filter(|(j, _)| j / self.dim_w == c)
                        .map(|(j, x)| (j % self.dim_w, x.clone()))
                        .collect(),
                )
            })
            .collect();
        RatMatrix::from_sparse_cols(self.dim_w, cols)
    }

    pub fn basis(&self) -> Vec<RatMatrix> {
        (0..self.dim()).map(|i| self.matrix(i)).collect()
    }

    pub fn contains(&self, m: &RatMatrix) -> bool {
        m.nrows() == self.dim_w && m.ncols() == self.dim_v && self.span.contains(&column_major(m))
    }

    /// `L^{(1)} = (V*⊗L) ∩ (Sym²V*⊗W)`, as a subspace of `Hom(V, Hom(V, W))`.
    pub fn standard_prolongation(&self) -> LinearMapSpace {
        let (n, dw, d) = (self.dim_v, self.dim_w, self.dim());
        let basis = self.span.basis();
        // entry (v, w) of each basis map
        let entry = |l: usize, v: usize, w: usize| basis[l].get(v * dw + w);
        let mut rows = Vec::new();
        for v1 in 0..n {
            for v2 in v1 + 1..n {
                for w in 0..dw {
                    let mut pairs = Vec::new();
                    for l in 0..d {
                        let a = entry(l, v2, w);
                        if !a.is_zero() {
                            pairs.push((v1 * d + l, a));
                        }
                        let b = entry(l, v1, w);
                        if !b.is_zero() {
                            pairs.push((v2 * d + l, -b));
                        }
                    }
                    let row = SparseVec::from_pairs(pairs);
                    if !row.is_zero() {
                        rows.push(row);
                    }
                }
            }
        }
        let kernel = RatMatrix::from_sparse_rows(n * d, rows).nullspace();
        let vectors = kernel.basis().iter().map(|a| {
            let mut pairs = Vec::new();
            for (idx, c) in a.iter() {
                let (v1, l) = (idx / d, idx % d);
                for (j, x) in basis[l].iter() {
                    pairs.push((v1 * n * dw + j, c * x));
                }
            }
            SparseVec::from_pairs(pairs)
        });
        LinearMapSpace::from_vectors(n, n * dw, vectors.collect::<Vec<_>>())
    }

    /// `L^{(i)}` by iterating the first prolongation.
    pub fn prolongation(&self, i: usize) -> LinearMapSpace {
        (0..i).fold(self.clone(), |l, _| l.standard_prolongation())
    }

    /// `L^{(i)} = (V*)^{⊗i}⊗L ∩ Sym^{i+1}V*⊗W`, solved as one system.
    pub fn direct_prolongation(&self, i: usize) -> LinearMapSpace {
        if i == 0 {
            return self.clone();
        }
        let (n, dw, d) = (self.dim_v, self.dim_w, self.dim());
        let basis = self.span.basis();
        let tuples = n.pow(i as u32);
        // T(v_1..v_{i+1}, w) as a linear form in the unknowns a_{(v_1..v_i), l}
        let form = |prefix: usize, v: usize, w: usize| -> SparseVec {
            SparseVec::from_pairs(
                (0..d)
                    .map(|l| (prefix * d + l, basis[l].get(v * dw + w)))
                    .filter(|(_, c)| !c.is_zero())
                    .collect(),
            )
        };
        let digits = |mut t: usize, len: usize| -> Vec<usize> {
            let mut out = vec![0; len];
            for slot in out.iter_mut().rev() {
                *slot = t % n;
                t /= n;
            }
            out
        };
        let encode = |ds: &[usize]| ds.iter().fold(0, |acc, &x| acc * n + x);
        let mut rows = Vec::new();
        for t in 0..tuples * n {
            let vs = digits(t, i + 1);
            for j in 0..i {
                if vs[j] >= vs[j + 1] {
                    continue;
                }
                let mut sw = vs.clone();
                sw.swap(j, j + 1);
                for w in 0..dw {
                    let a = form(encode(&vs[..i]), vs[i], w);
                    let b = form(encode(&sw[..i]), sw[i], w);
                    let row = a.sub(&b);
                    if !row.is_zero() {
                        rows.push(row);
                    }
                }
            }
        }
        let kernel = RatMatrix::from_sparse_rows(tuples * d, rows).nullspace();
        let vectors: Vec<SparseVec> = kernel
            .basis()
            .iter()
            .map(|a| {
                let mut pairs = Vec::new();
                for (idx, c) in a.iter() {
                    let (prefix, l) = (idx / d, idx % d);
                    for (j, x) in basis[l].iter() {
                        pairs.push((prefix * n * dw + j, c * x));
                    }
                }
                SparseVec::from_pairs(pairs)
            })
            .collect();
        LinearMapSpace::from_vectors(n, tuples * dw, vectors)
    }

    /// Reads each basis tensor as a symmetric tensor of order `degree` on
    /// `V = W` and returns the polynomials `Σ T(α)/α! x^α` in `x_0..x_k`.
    pub fn symmetric_polynomials(&self, k: usize, degree: usize) -> Result<Vec<WeightedPolynomial>> {
        let n = self.dim_v;
        if n != k + 1 || n.pow(degree as u32) != self.dim_v * self.dim_w {
            return Err(Error::Dimension(format!(
                "space of {}x{} maps is not a space of order-{degree} tensors on a {}-dimensional space",
                self.dim_w,
                self.dim_v,
                k + 1
            )));
        }
        Ok(self
            .span
            .basis()
            .iter()
            .map(|t| tensor_to_polynomial(k, degree, t))
            .collect())
    }
}

fn multi_index(n: usize, degree: usize, mut t: usize) -> Vec<usize> {
    let mut out = vec![0; degree];
    for slot in out.iter_mut().rev() {
        *slot = t % n;
        t /= n;
    }
    out
}

fn alpha_factorial(exps: &[u16]) -> Scalar {
    exps.iter().fold(Scalar::from_integer(1.into()), |acc, &e| acc * factorial(e as usize))
}

/// `Σ T(α)/α! x^α` over sorted index tuples of a symmetric tensor.
pub fn tensor_to_polynomial(k: usize, degree: usize, t: &SparseVec) -> WeightedPolynomial {
    let n = k + 1;
    let terms = t.iter().filter_map(|(idx, c)| {
        let ix = multi_index(n, degree, *idx);
        if ix.windows(2).any(|w| w[0] > w[1]) {
            return None;
        }
        let mut exps = vec![0u16; 2 * k + 3];
        for &v in &ix {
            exps[v] += 1;
        }
        let coef = c / alpha_factorial(&exps[..n]);
        Some((Monomial::from_exponents(exps), coef))
    });
    WeightedPolynomial::from_terms(k, terms)
}

/// Symmetric tensor `T(v_1..v_d) = α!·coef_α` of a form of degree `d` in `x_0..x_k`.
pub fn polynomial_to_tensor(k: usize, degree: usize, p: &WeightedPolynomial) -> Result<SparseVec> {
    let n = k + 1;
    let mut pairs = Vec::new();
    for t in 0..n.pow(degree as u32) {
        let ix = multi_index(n, degree, t);
        let mut exps = vec![0u16; 2 * k + 3];
        for &v in &ix {
            exps[v] += 1;
        }
        let m = Monomial::from_exponents(exps);
        let c = p.coeff(&m);
        if !c.is_zero() {
            pairs.push((t, c * alpha_factorial(&m.exponents()[..n])));
        }
    }
    let back = tensor_to_polynomial(k, degree, &SparseVec::from_pairs(pairs.clone()));
    if &back != p {
        return Err(Error::InvalidParameter(format!(
            "polynomial is not a form of degree {degree} in the x variables"
        )));
    }
    Ok(SparseVec::from_pairs(pairs))
}

/// The space of Hessians of the given quadratic forms in `x_0..x_k`.
pub fn hessian_space(k: usize, quadrics: &[WeightedPolynomial]) -> Result<LinearMapSpace> {
    let vectors = quadrics
        .iter()
        .map(|q| polynomial_to_tensor(k, 2, q))
        .collect::<Result<Vec<_>>>()?;
    Ok(LinearMapSpace::from_vectors(k + 1, k + 1, vectors))
}
