use std::collections::BTreeMap;

use num_traits::One;

use super::families::{e, f, make_heisenberg, sign};
use super::hankel::secant_ideal;
use crate::contact_poly::{
    contact_bracket, monomials_with_weights, second_weight_range, MonomialIndex, PolyMap, PolySpan,
    WeightedPolynomial,
};
use crate::error::{Error, Result};
use crate::exact_linalg::{int, RatMatrix, Scalar, SparseVec};
use crate::lie_core::{BasisElement, GradedAlgebra};
use crate::prolongation::LinearMapSpace;

type P = WeightedPolynomial;

/// Image of `N` under the polynomial embedding. With `E_i = y_i` and
/// `F_i = (-1)^i x_{k-i}`, the relation `[E_i, F_{k-i}] = (-1)^i N` forces
/// `N ↦ (-1)^{k+1}`.
pub fn center_sign(k: usize) -> i32 {
    if k % 2 == 1 {
        1
    } else {
        -1
    }
}

/// Polynomials for `E_0..E_k, F_0..F_k, N`.
pub fn heisenberg_polynomials(k: usize) -> Vec<(String, P)> {
    let mut out: Vec<(String, P)> = (0..=k).map(|i| (e(i), P::y(k, i))).collect();
    out.extend((0..=k).map(|i| (f(i), P::x(k, k - i).scale(&sign(i)))));
    out.push(("N".to_string(), P::constant(k, int(center_sign(k) as i64))));
    out
}

/// Polynomials for the degree-zero part: `X, H, Y, Z1, Z2` and the quadrics
/// `Q0, Q1, ...` cutting out the rational normal curve.
pub fn s_polynomials(k: usize) -> Result<Vec<(String, P)>> {
    if k < 3 {
        return Err(Error::InvalidParameter(format!("k = {k}, need k >= 3")));
    }
    let xy = |i: usize, j: usize| P::x(k, i).mul(&P::y(k, j));
    let sum = |terms: Vec<(Scalar, P)>| terms.into_iter().fold(P::zero(k), |acc, (c, p)| acc.add_scaled(&c, &p));
    let x = sum((0..k).map(|i| (Scalar::one(), xy(i, i + 1))).collect());
    let h = sum((0..=k).map(|i| (int(k as i64 - 2 * i as i64), xy(i, i))).collect());
    let y = sum((1..=k).map(|i| (int((i * (k + 1 - i)) as i64), xy(i, i - 1))).collect());
    let z1 = sum((0..=k).map(|i| (Scalar::one(), xy(i, i))).collect());
    let mut out = vec![
        ("X".to_string(), x),
        ("H".to_string(), h),
        ("Y".to_string(), y),
        ("Z1".to_string(), z1),
        ("Z2".to_string(), P::z(k)),
    ];
    for (n, q) in secant_ideal(k, 0)?.into_iter().enumerate() {
        out.push((format!("Q{n}"), q));
    }
    Ok(out)
}

/// `n ⊕ s` with its polynomial realization.
#[derive(Clone, Debug)]
pub struct NsModel {
    pub k: usize,
    /// Basis `E_0..E_k, F_0..F_k, N` in degrees -1, -2, then `s` in degree 0.
    pub algebra: GradedAlgebra,
    /// Polynomial of each basis element, in basis order.
    pub images: Vec<P>,
    /// Sign of the image of `N`.
    pub center_sign: i32,
}

impl NsModel {
    pub fn s_indices(&self) -> Vec<usize> {
        self.algebra.indices_of_degree(0)
    }

    pub fn s_polynomials(&self) -> Vec<P> {
        self.s_indices().into_iter().map(|i| self.images[i].clone()).collect()
    }

    /// Action of each element of `s` on `n_{-1}` in the basis `E_0..E_k, F_0..F_k`.
    pub fn s_matrices(&self) -> Vec<(String, RatMatrix)> {
        let n1 = 2 * self.k + 2;
        self.s_indices()
            .into_iter()
            .map(|u| {
                let cols = (0..n1).map(|b| self.algebra.bracket_basis(u, b)).collect();
                (self.algebra.name(u).to_string(), RatMatrix::from_sparse_cols(n1, cols))
            })
            .collect()
    }

    /// `s` as a space of maps on `n_{-1}`.
    pub fn s_map_space(&self) -> LinearMapSpace {
        let n1 = 2 * self.k + 2;
        let ms: Vec<RatMatrix> = self.s_matrices().into_iter().map(|(_, m)| m).collect();
        LinearMapSpace::new(n1, n1, &ms).expect("square maps")
    }
}

/// Lie algebra spanned by the given polynomials, with brackets read off the
/// contact bracket. Fails if the span is not closed.
pub fn algebra_from_polynomials(k: usize, elements: &[(String, i32, P)]) -> Result<GradedAlgebra> {
    let mut index = MonomialIndex::new(k);
    let cols: Vec<SparseVec> = elements.iter().map(|(_, _, p)| index.encode(p)).collect();
    let images: Vec<P> = elements.iter().map(|(_, _, p)| p.clone()).collect();
    let mut table = BTreeMap::new();
    let mut targets = Vec::new();
    for a in 0..elements.len() {
        for b in a + 1..elements.len() {
            let c = contact_bracket(&images[a], &images[b])?;
            if !c.is_zero() {
                targets.push(((a, b), index.encode(&c)));
            }
        }
    }
    let m = RatMatrix::from_sparse_cols(index.len(), cols);
    if m.rank() != elements.len() {
        return Err(Error::InvalidParameter("polynomials are linearly dependent".into()));
    }
    for ((a, b), t) in targets {
        let x = m.solve(&t)?.ok_or(Error::NotClosed)?;
        table.insert((a, b), x);
    }
    let basis = elements
        .iter()
        .enumerate()
        .map(|(i, (name, degree, _))| BasisElement {
            name: name.clone(),
            degree: *degree,
            index: i,
        })
        .collect();
    GradedAlgebra::from_table(basis, table)
}

/// `n ⊕ s` for `k >= 3`, validated against the Heisenberg algebra.
pub fn make_s(k: usize) -> Result<NsModel> {
    let s = s_polynomials(k)?;
    let mut elements: Vec<(String, i32, P)> = heisenberg_polynomials(k)
        .into_iter()
        .map(|(n, p)| {
            let d = if n == "N" { -2 } else { -1 };
            (n, d, p)
        })
        .collect();
    elements.extend(s.into_iter().map(|(n, p)| (n, 0, p)));
    let algebra = algebra_from_polynomials(k, &elements)?;
    let (heis, _) = make_heisenberg(k)?;
    let nh = heis.dim();
    for i in 0..nh {
        for j in i + 1..nh {
            if heis.bracket_basis(i, j) != algebra.bracket_basis(i, j) {
                return Err(Error::Consistency(format!(
                    "polynomial model disagrees with the Heisenberg algebra on [{}, {}]",
                    heis.name(i),
                    heis.name(j)
                )));
            }
        }
    }
    Ok(NsModel {
        k,
        algebra,
        images: elements.into_iter().map(|(_, _, p)| p).collect(),
        center_sign: center_sign(k),
    })
}

/// Largest graded subspace of the quadratic part whose negative part (for
/// the second grading) is `⟨X⟩` and which is stable under `{X, ·}` in the
/// sense `{X, u} ∈ P_{d-1}` for `u ∈ P_d`. Every graded subalgebra with
/// negative part `⟨X⟩` lies inside it.
pub fn maximal_extension(k: usize) -> Result<PolySpan> {
    let s = s_polynomials(k)?;
    let x = s[0].1.clone();
    let (lo, hi) = second_weight_range(k, 2);
    // degree d = second weight - 2; start from degree -1
    let mut prev = PolySpan::new(k, std::slice::from_ref(&x));
    let mut all = prev.clone();
    for w in 2.max(lo)..=hi {
        let domain = monomials_with_weights(k, 2, w);
        let xc = x.clone();
        let map: PolyMap = Box::new(move |p: &P| contact_bracket(&xc, p).expect("same k"));
        let next = crate::contact_poly::constrained_span(k, &domain, &[(map, &prev)]);
        all = all.union(&next);
        prev = next;
    }
    Ok(all)
}

/// Irreducible `gl(2)` acting on binary forms of degree `m-1` in the basis
/// `u^{m-1-i} v^i`: the span of `u∂_v`, `v∂_u`, `u∂_u - v∂_v` and the identity.
pub fn irreducible_gl2(m: usize) -> Result<LinearMapSpace> {
    if m == 0 {
        return Err(Error::InvalidParameter("representation dimension must be positive".into()));
    }
    let mut e_ = RatMatrix::zeros(m, m).dense_rows();
    let mut f_ = e_.clone();
    let mut h_ = e_.clone();
    for i in 0..m {
        if i > 0 {
            e_[i - 1][i] = int(i as i64);
        }
        if i + 1 < m {
            f_[i + 1][i] = int((m - 1 - i) as i64);
        }
        h_[i][i] = int(m as i64 - 1 - 2 * i as i64);
    }
    let ms = [
        RatMatrix::from_rows(m, e_),
        RatMatrix::from_rows(m, f_),
        RatMatrix::from_rows(m, h_),
        RatMatrix::identity(m),
    ];
    LinearMapSpace::new(m, m, &ms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contact_poly::{same_span, Grading, Weight};
    use num_traits::Zero;

    #[test]
    fn s3_dimensions() {
        let m = make_s(3).unwrap();
        assert_eq!(m.s_indices().len(), 8);
        assert_eq!(m.algebra.dim(), 17);
        assert!(m.algebra.check_jacobi().failures.is_empty());
    }

    #[test]
    fn k_below_three_rejected() {
        assert!(make_s(2).is_err());
    }

    #[test]
    fn h_coefficients() {
        let k = 5;
        let s = s_polynomials(k).unwrap();
        let h = &s[1].1;
        for i in 0..=k {
            let xy = P::x(k, i).mul(&P::y(k, i));
            let (m, _) = xy.leading().unwrap();
            assert_eq!(h.coeff(m), int(k as i64 - 2 * i as i64));
        }
    }

    #[test]
    fn x_and_y_close_on_h_and_z1() {
        let k = 4;
        let s = s_polynomials(k).unwrap();
        let xy = contact_bracket(&s[0].1, &s[2].1).unwrap();
        assert!(crate::contact_poly::coordinates(k, &[s[1].1.clone(), s[3].1.clone()], &xy).is_some());
    }

    #[test]
    fn quadrics_act_from_e_to_f() {
        let m = make_s(4).unwrap();
        let n = m.k + 1;
        for (name, mat) in m.s_matrices() {
            if !name.starts_with('Q') {
                continue;
            }
            for r in 0..2 * n {
                for c in 0..2 * n {
                    let lower_left = r >= n && c < n;
                    if !lower_left {
                        assert!(mat.get(r, c).is_zero(), "{name} has entry at ({r},{c})");
                    }
                }
            }
        }
    }

    #[test]
    fn second_grading_of_s() {
        let k = 5;
        let s = s_polynomials(k).unwrap();
        let w = |i: usize| s[i].1.weight(Grading::Second);
        assert_eq!(w(0), Weight::Homogeneous(1));
        assert_eq!(w(1), Weight::Homogeneous(2));
        assert_eq!(w(2), Weight::Homogeneous(3));
        assert_eq!(w(3), Weight::Homogeneous(2));
        assert_eq!(w(4), Weight::Homogeneous(2));
    }

    #[test]
    fn s_is_maximal() {
        for k in [3, 4] {
            let s: Vec<P> = s_polynomials(k).unwrap().into_iter().map(|(_, p)| p).collect();
            assert!(same_span(k, maximal_extension(k).unwrap().basis(), &s), "k = {k}");
        }
    }

    #[test]
    fn gl2_representation_closes() {
        let l = irreducible_gl2(4).unwrap();
        assert_eq!(l.dim(), 4);
        let b = l.basis();
        for x in &b {
            for y in &b {
                let c = x.mul(y).unwrap().sub(&y.mul(x).unwrap());
                assert!(l.contains(&c));
            }
        }
    }
}
