//! Spans of polynomials as subspaces over a monomial basis.

use std::collections::HashMap;

use num_traits::{One, Zero};
use rayon::prelude::*;

use super::{Monomial, WeightedPolynomial};
use crate::exact_linalg::elim::rref_sparse;
use crate::exact_linalg::{RatMatrix, Scalar, SparseVec};

/// Indexes monomials so that polynomials become sparse vectors.
#[derive(Clone, Debug)]
pub struct MonomialIndex {
    k: usize,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl MonomialIndex {
    pub fn new(k: usize) -> Self {
        Self {
            k,
            monomials: Vec::new(),
            index: HashMap::new(),
        }
    }

    /// Fixed index over the given monomials, in the given order.
    pub fn from_monomials(k: usize, monomials: Vec<Monomial>) -> Self {
        let index = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        Self { k, monomials, index }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn get(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn insert(&mut self, m: &Monomial) -> usize {
        if let Some(&i) = self.index.get(m) {
            return i;
        }
        let i = self.monomials.len();
        self.monomials.push(m.clone());
        self.index.insert(m.clone(), i);
        i
    }

    pub fn encode(&mut self, p: &WeightedPolynomial) -> SparseVec {
        SparseVec::from_pairs(p.terms().map(|(m, c)| (self.insert(m), c.clone())).collect())
    }

    /// Encodes without growing the index; `None` if a monomial is missing.
    pub fn try_encode(&self, p: &WeightedPolynomial) -> Option<SparseVec> {
        let pairs: Option<Vec<(usize, Scalar)>> = p.terms().map(|(m, c)| Some((self.get(m)?, c.clone()))).collect();
        pairs.map(SparseVec::from_pairs)
    }

    pub fn decode(&self, v: &SparseVec) -> WeightedPolynomial {
        WeightedPolynomial::from_terms(self.k, v.iter().map(|(i, c)| (self.monomials[*i].clone(), c.clone())))
    }
}

/// Canonical basis of the span: reduced echelon form with monomials ordered
/// from the largest down, leading coefficients 1.
pub fn echelon_basis(k: usize, polys: &[WeightedPolynomial]) -> Vec<WeightedPolynomial> {
    let mut monos: Vec<Monomial> = polys.iter().flat_map(|p| p.terms().map(|(m, _)| m.clone())).collect();
    monos.sort_by(|a, b| b.cmp(a));
    monos.dedup();
    let mut index = MonomialIndex::from_monomials(k, monos);
    let rows: Vec<SparseVec> = polys.iter().map(|p| index.encode(p)).collect();
    rref_sparse(rows).iter().map(|v| index.decode(v)).collect()
}

/// Dimension of the span.
pub fn span_dim(k: usize, polys: &[WeightedPolynomial]) -> usize {
    echelon_basis(k, polys).len()
}

pub fn same_span(k: usize, a: &[WeightedPolynomial], b: &[WeightedPolynomial]) -> bool {
    echelon_basis(k, a) == echelon_basis(k, b)
}

/// Coordinates of `p` in the (independent) family `basis`, if it lies in the span.
pub fn coordinates(k: usize, basis: &[WeightedPolynomial], p: &WeightedPolynomial) -> Option<Vec<Scalar>> {
    let mut index = MonomialIndex::new(k);
    let cols: Vec<SparseVec> = basis.iter().map(|b| index.encode(b)).collect();
    let target = index.encode(p);
    let m = RatMatrix::from_sparse_cols(index.len(), cols);
    let x = m.solve(&target).ok()??;
    Some(x.to_dense(basis.len()))
}

/// A span of polynomials held by its canonical echelon basis, with fast
/// reduction modulo the span.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolySpan {
    k: usize,
    basis: Vec<WeightedPolynomial>,
}

impl PolySpan {
    pub fn new(k: usize, polys: &[WeightedPolynomial]) -> Self {
        Self {
            k,
            basis: echelon_basis(k, polys),
        }
    }

    pub fn zero(k: usize) -> Self {
        Self { k, basis: Vec::new() }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[WeightedPolynomial] {
        &self.basis
    }

    /// Remainder of `p` after clearing every pivot monomial of the span.
    pub fn reduce(&self, p: &WeightedPolynomial) -> WeightedPolynomial {
        let mut r = p.clone();
        for b in &self.basis {
            let (lead, _) = b.leading().expect("nonzero basis polynomial");
            let c = r.coeff(lead);
            if !c.is_zero() {
                r = r.add_scaled(&-c, b);
            }
        }
        r
    }

    pub fn contains(&self, p: &WeightedPolynomial) -> bool {
        self.reduce(p).is_zero()
    }

    pub fn union(&self, other: &PolySpan) -> PolySpan {
        let all: Vec<WeightedPolynomial> = self.basis.iter().chain(&other.basis).cloned().collect();
        PolySpan::new(self.k, &all)
    }
}

/// Linear map on polynomials used as a constraint.
pub type PolyMap<'a> = Box<dyn Fn(&WeightedPolynomial) -> WeightedPolynomial + Sync + 'a>;

/// All polynomials in the span of `domain` whose image under each map lies
/// in the paired span, as a canonical echelon basis.
pub fn constrained_span(k: usize, domain: &[Monomial], constraints: &[(PolyMap<'_>, &PolySpan)]) -> PolySpan {
    if domain.is_empty() {
        return PolySpan::zero(k);
    }
    let mut indices: Vec<MonomialIndex> = constraints.iter().map(|_| MonomialIndex::new(k)).collect();
    let residuals: Vec<Vec<WeightedPolynomial>> = domain
        .par_iter()
        .map(|m| {
            let p = WeightedPolynomial::from_terms(k, [(m.clone(), Scalar::one())]);
            constraints.iter().map(|(f, target)| target.reduce(&f(&p))).collect()
        })
        .collect();
    let mut cols: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); domain.len()];
    let mut offset = 0;
    for (c, index) in indices.iter_mut().enumerate() {
        for (col, res) in cols.iter_mut().zip(&residuals) {
            let v = index.encode(&res[c]);
            col.extend(v.iter().map(|(i, x)| (*i + offset, x.clone())));
        }
        offset += index.len();
    }
    let matrix = RatMatrix::from_sparse_cols(offset, cols.into_iter().map(SparseVec::from_pairs).collect());
    let kernel = matrix.nullspace();
    let domain_index = MonomialIndex::from_monomials(k, domain.to_vec());
    let polys: Vec<WeightedPolynomial> = kernel.basis().iter().map(|v| domain_index.decode(v)).collect();
    PolySpan::new(k, &polys)
}

/// Monomials with the given standard and second weights, largest first.
pub fn monomials_with_weights(k: usize, standard: i64, second: i64) -> Vec<Monomial> {
    fn go(k: usize, v: usize, w: i64, s: i64, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        let nv = 2 * k + 3;
        if v == nv {
            if w == 0 && s == 0 {
                out.push(Monomial::from_exponents(cur.clone()));
            }
            return;
        }
        if w < 0 || s < (2 - k as i64).min(0) * w || s > k as i64 * w {
            return;
        }
        let (vw, vs) = if v <= k {
            (1, v as i64)
        } else if v <= 2 * k + 1 {
            (1, 2 - (v - k - 1) as i64)
        } else {
            (2, 2)
        };
        let mut e = 0;
        while e * vw <= w {
            cur[v] = e as u16;
            go(k, v + 1, w - e * vw, s - e * vs, cur, out);
            e += 1;
        }
        cur[v] = 0;
    }
    let mut out = Vec::new();
    if standard >= 0 {
        go(k, 0, standard, second, &mut vec![0; 2 * k + 3], &mut out);
    }
    out.sort_by(|a, b| b.cmp(a));
    out
}

/// Range of second weights among monomials of a given standard weight.
pub fn second_weight_range(k: usize, standard: i64) -> (i64, i64) {
    ((2 - k as i64).min(0) * standard, k as i64 * standard)
}
