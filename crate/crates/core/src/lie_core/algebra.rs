use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact_linalg::{Scalar, SparseVec, Subspace};

/// Above this basis size the Jacobi identity is only checked on demand.
pub const EAGER_JACOBI_LIMIT: usize = 200;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub name: String,
    pub degree: i32,
    pub index: usize,
}

/// Finite-dimensional graded Lie algebra over ℚ given by structure constants.
///
/// A declared bracket `[a, b] = Σ c·e`.
pub type BracketRow<S> = (S, S, Vec<(S, Scalar)>);

/// Only `[e_i, e_j]` with `i < j` is stored; the other order is read off by
/// antisymmetry and `[e_i, e_i] = 0`.
#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    basis: Vec<BasisElement>,
    names: HashMap<String, usize>,
    brackets: BTreeMap<(usize, usize), SparseVec>,
}

/// A failing basis triple together with the Jacobi residual.
#[derive(Clone, Debug, PartialEq)]
pub struct JacobiFailure {
    pub triple: (String, String, String),
    pub residual: SparseVec,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct JacobiReport {
    pub failures: Vec<JacobiFailure>,
}

impl JacobiReport {
    pub fn is_empty(&self) -> bool {
        self.failures.is_empty()
    }
}

impl GradedAlgebra {
    /// Builds and validates an algebra from named data. Unlisted brackets are
    /// zero; a bracket may be declared in either order.
    pub fn build(
        basis: &[(&str, i32)],
        brackets: &[BracketRow<&str>],
    ) -> Result<Self> {
        let basis: Vec<(String, i32)> = basis.iter().map(|(n, d)| (n.to_string(), *d)).collect();
        let brackets: Vec<BracketRow<String>> = brackets
            .iter()
            .map(|(a, b, v)| {
                (
                    a.to_string(),
                    b.to_string(),
                    v.iter().map(|(n, c)| (n.to_string(), c.clone())).collect(),
                )
            })
            .collect();
        Self::build_owned(basis, brackets)
    }

    pub fn build_owned(
        basis: Vec<(String, i32)>,
        brackets: Vec<BracketRow<String>>,
    ) -> Result<Self> {
        let mut names = HashMap::new();
        for (i, (n, _)) in basis.iter().enumerate() {
            if names.insert(n.clone(), i).is_some() {
                return Err(Error::DuplicateName(n.clone()));
            }
        }
        let lookup = |n: &str| names.get(n).copied().ok_or_else(|| Error::UnknownName(n.to_string()));
        let mut table = BTreeMap::new();
        for (a, b, value) in &brackets {
            let (i, j) = (lookup(a)?, lookup(b)?);
            let mut pairs = Vec::with_capacity(value.len());
            for (n, c) in value {
                pairs.push((lookup(n)?, c.clone()));
            }
            let v = SparseVec::from_pairs(pairs);
            if i == j {
                if !v.is_zero() {
                    return Err(Error::SelfBracket(a.clone()));
                }
                continue;
            }
            let (key, v) = if i < j { ((i, j), v) } else { ((j, i), v.neg()) };
            if table.insert(key, v).is_some() {
                return Err(Error::InvalidParameter(format!("bracket [{a}, {b}] declared twice")));
            }
        }
        let basis = basis
            .into_iter()
            .enumerate()
            .map(|(index, (name, degree))| BasisElement { name, degree, index })
            .collect();
        Self::from_table(basis, table)
    }

    /// Validates grading and, below the eager limit, the Jacobi identity.
    pub fn from_table(basis: Vec<BasisElement>, brackets: BTreeMap<(usize, usize), SparseVec>) -> Result<Self> {
        let names = basis.iter().map(|b| (b.name.clone(), b.index)).collect();
        let mut brackets = brackets;
        brackets.retain(|_, v| !v.is_zero());
        let alg = Self { basis, names, brackets };
        alg.check_grading()?;
        if alg.dim() <= EAGER_JACOBI_LIMIT {
            if let Some(f) = alg.check_jacobi().failures.into_iter().next() {
                return Err(Error::Jacobi(f.triple.0, f.triple.1, f.triple.2));
            }
        }
        Ok(alg)
    }

    /// Checks the grading only.
    pub(crate) fn from_table_graded(basis: Vec<BasisElement>, brackets: BTreeMap<(usize, usize), SparseVec>) -> Result<Self> {
        let names = basis.iter().map(|b| (b.name.clone(), b.index)).collect();
        let mut brackets = brackets;
        brackets.retain(|_, v| !v.is_zero());
        let alg = Self { basis, names, brackets };
        alg.check_grading()?;
        Ok(alg)
    }

    fn check_grading(&self) -> Result<()> {
        for (&(i, j), v) in &self.brackets {
            let expected = self.basis[i].degree + self.basis[j].degree;
            for (t, _) in v.iter() {
                let found = self.basis[*t].degree;
                if found != expected {
                    return Err(Error::Grading {
                        left: self.basis[i].name.clone(),
                        right: self.basis[j].name.clone(),
                        target: self.basis[*t].name.clone(),
                        expected,
                        found,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.get(name).copied()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.basis[i].name
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.basis[i].degree
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.basis.iter().map(|b| b.degree).min()
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.basis.iter().map(|b| b.degree).max()
    }

    /// Stored structure constants (`i < j`, nonzero only).
    pub fn structure_constants(&self) -> &BTreeMap<(usize, usize), SparseVec> {
        &self.brackets
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> SparseVec {
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => SparseVec::new(),
            std::cmp::Ordering::Less => self.brackets.get(&(i, j)).cloned().unwrap_or_default(),
            std::cmp::Ordering::Greater => self.brackets.get(&(j, i)).map(SparseVec::neg).unwrap_or_default(),
        }
    }

    /// Bilinear extension of the structure constants to coordinate vectors.
    pub fn bracket_vec(&self, u: &SparseVec, v: &SparseVec) -> SparseVec {
        let mut pairs = Vec::new();
        for (i, a) in u.iter() {
            for (j, b) in v.iter() {
                if i == j {
                    continue;
                }
                let c = a * b;
                for (t, x) in self.bracket_basis(*i, *j).iter() {
                    pairs.push((*t, x * &c));
                }
            }
        }
        SparseVec::from_pairs(pairs)
    }

    pub fn element(&self, coeffs: SparseVec) -> Result<AlgebraElement<'_>> {
        AlgebraElement::new(self, coeffs)
    }

    pub fn basis_element(&self, name: &str) -> Result<AlgebraElement<'_>> {
        let i = self.index_of(name).ok_or_else(|| Error::UnknownName(name.to_string()))?;
        Ok(AlgebraElement {
            algebra: self,
            coeffs: SparseVec::unit(i),
        })
    }

    pub fn bracket<'a>(&'a self, u: &AlgebraElement<'a>, v: &AlgebraElement<'a>) -> Result<AlgebraElement<'a>> {
        if !std::ptr::eq(u.algebra, self) || !std::ptr::eq(v.algebra, self) {
            return Err(Error::AlgebraMismatch("elements belong to different algebras".into()));
        }
        Ok(AlgebraElement {
            algebra: self,
            coeffs: self.bracket_vec(&u.coeffs, &v.coeffs),
        })
    }

    /// Exhaustive Jacobi check over basis triples `i < j < l`.
    pub fn check_jacobi(&self) -> JacobiReport {
        let n = self.dim();
        let mut failures = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let ij = self.bracket_basis(i, j);
                for l in j + 1..n {
                    let jl = self.bracket_basis(j, l);
                    let li = self.bracket_basis(l, i);
                    if ij.is_zero() && jl.is_zero() && li.is_zero() {
                        continue;
                    }
                    let r = self
                        .bracket_vec(&ij, &SparseVec::unit(l))
                        .add(&self.bracket_vec(&jl, &SparseVec::unit(i)))
                        .add(&self.bracket_vec(&li, &SparseVec::unit(j)));
                    if !r.is_zero() {
                        failures.push(JacobiFailure {
                            triple: (self.name(i).into(), self.name(j).into(), self.name(l).into()),
                            residual: r,
                        });
                    }
                }
            }
        }
        JacobiReport { failures }
    }

    pub fn indices_of_degree(&self, d: i32) -> Vec<usize> {
        self.basis.iter().filter(|b| b.degree == d).map(|b| b.index).collect()
    }

    pub fn graded_component(&self, d: i32) -> Subspace {
        Subspace::span(self.dim(), self.indices_of_degree(d).into_iter().map(SparseVec::unit))
    }

    /// True iff the degree −1 part generates everything. Only defined for
    /// negatively graded algebras.
    pub fn is_fundamental(&self) -> Result<bool> {
        if let Some(b) = self.basis.iter().find(|b| b.degree >= 0) {
            return Err(Error::NonNegativeDegree(b.name.clone()));
        }
        let n = self.dim();
        let generators = self.indices_of_degree(-1);
        let mut layer = Subspace::span(n, generators.iter().map(|&g| SparseVec::unit(g)));
        let mut total = layer.dim();
        while !layer.is_zero() {
            let next: Vec<SparseVec> = generators
                .iter()
                .flat_map(|&g| {
                    layer
                        .basis()
                        .iter()
                        .map(move |y| (g, y))
                })
                .map(|(g, y)| self.bracket_vec(&SparseVec::unit(g), y))
                .collect();
            layer = Subspace::span(n, next);
            total += layer.dim();
        }
        Ok(total == n)
    }

    /// Copy with one stored structure constant replaced; skips validation.
    /// Intended for mutation tests of the validators.
    pub fn with_bracket_unchecked(&self, i: usize, j: usize, value: SparseVec) -> Self {
        let mut out = self.clone();
        let (key, v) = if i < j { ((i, j), value) } else { ((j, i), value.neg()) };
        out.brackets.insert(key, v);
        out.brackets.retain(|_, v| !v.is_zero());
        out
    }
}

/// Element of a specific algebra, as coordinates over its basis.
#[derive(Clone, Debug)]
pub struct AlgebraElement<'a> {
    algebra: &'a GradedAlgebra,
    coeffs: SparseVec,
}

impl<'a> AlgebraElement<'a> {
    pub fn new(algebra: &'a GradedAlgebra, coeffs: SparseVec) -> Result<Self> {
        if coeffs.max_index().is_some_and(|i| i >= algebra.dim()) {
            return Err(Error::Dimension("coefficient vector longer than basis".into()));
        }
        Ok(Self { algebra, coeffs })
    }

    pub fn coeffs(&self) -> &SparseVec {
        &self.coeffs
    }

    pub fn algebra(&self) -> &'a GradedAlgebra {
        self.algebra
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    pub fn coeff(&self, name: &str) -> Scalar {
        self.algebra
            .index_of(name)
            .map_or_else(Scalar::zero, |i| self.coeffs.get(i))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self {
            algebra: self.algebra,
            coeffs: self.coeffs.scale(c),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if !std::ptr::eq(self.algebra, other.algebra) {
            return Err(Error::AlgebraMismatch("elements belong to different algebras".into()));
        }
        Ok(Self {
            algebra: self.algebra,
            coeffs: self.coeffs.add(&other.coeffs),
        })
    }
}

impl PartialEq for AlgebraElement<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.algebra, other.algebra) && self.coeffs == other.coeffs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::int;

    fn heis() -> GradedAlgebra {
        GradedAlgebra::build(
            &[("P", -1), ("Q", -1), ("N", -2)],
            &[("P", "Q", vec![("N", int(1))])],
        )
        .unwrap()
    }

    #[test]
    fn one_dimensional_abelian() {
        let a = GradedAlgebra::build(&[("N", -2)], &[]).unwrap();
        assert_eq!(a.dim(), 1);
        assert!(a.check_jacobi().is_empty());
    }

    #[test]
    fn grading_violation_reported() {
        let err = GradedAlgebra::build(
            &[("A", -1), ("B", -1), ("C", -3)],
            &[("A", "B", vec![("C", int(1))])],
        )
        .unwrap_err();
        assert!(matches!(err, Error::Grading { expected: -2, found: -3, .. }));
    }

    #[test]
    fn duplicate_and_unknown_names() {
        assert!(matches!(
            GradedAlgebra::build(&[("A", -1), ("A", -2)], &[]),
            Err(Error::DuplicateName(_))
        ));
        assert!(matches!(
            GradedAlgebra::build(&[("A", -1)], &[("A", "Z", vec![])]),
            Err(Error::UnknownName(_))
        ));
    }

    #[test]
    fn reversed_declaration_is_negated() {
        let a = GradedAlgebra::build(
            &[("P", -1), ("Q", -1), ("N", -2)],
            &[("Q", "P", vec![("N", int(1))])],
        )
        .unwrap();
        let p = a.basis_element("P").unwrap();
        let q = a.basis_element("Q").unwrap();
        assert_eq!(a.bracket(&p, &q).unwrap().coeff("N"), int(-1));
        assert!(a.bracket(&p, &p).unwrap().is_zero());
    }

    #[test]
    fn cross_algebra_bracket_rejected() {
        let a = heis();
        let b = heis();
        let p = a.basis_element("P").unwrap();
        let q = b.basis_element("Q").unwrap();
        assert!(matches!(a.bracket(&p, &q), Err(Error::AlgebraMismatch(_))));
    }

    #[test]
    fn fundamental_checks() {
        assert!(heis().is_fundamental().unwrap());
        let ab = GradedAlgebra::build(&[("A", -1), ("B", -2)], &[]).unwrap();
        assert!(!ab.is_fundamental().unwrap());
        let nn = GradedAlgebra::build(&[("A", 0)], &[]).unwrap();
        assert!(matches!(nn.is_fundamental(), Err(Error::NonNegativeDegree(_))));
    }
}
