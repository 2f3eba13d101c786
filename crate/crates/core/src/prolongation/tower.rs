//! Degree-by-degree construction of the Tanaka prolongation.
//!
//! A degree-`p` element is a family of maps `g_{-j} -> g_{p-j}`, one per
//! negative degree, satisfying `φ([x,y]) = [φ(x),y] + [x,φ(y)]`. Components
//! are installed in order; each new one is the kernel of a linear system
//! whose coefficients come from the components already installed.

use std::time::Instant;

use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact_linalg::{RatMatrix, Scalar, SparseVec, Subspace};
use crate::lie_core::GradedAlgebra;

/// Which unknowns the degree-`p` system is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SolveMode {
    /// Unknowns are the maps out of `g_{-1}` only; deeper maps are derived
    /// through the derivation identity.
    #[default]
    Reduced,
    /// Unknowns are the maps out of every negative component.
    Full,
}

/// Element of a nonnegative component: `images[j-1][b]` is the image of the
/// `b`-th basis vector of `g_{-j}`, in coordinates of `g_{p-j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProlongElement {
    pub degree: usize,
    pub source_dims: Vec<usize>,
    pub target_dims: Vec<usize>,
    pub images: Vec<Vec<SparseVec>>,
}

impl ProlongElement {
    /// Coordinates: the maps `g_{-1} -> g_{p-1}`, `g_{-2} -> g_{p-2}`, ...
    /// each flattened row-major (target index, source index), concatenated.
    pub fn flatten(&self) -> SparseVec {
        let mut pairs = Vec::new();
        let mut offset = 0;
        for (j, imgs) in self.images.iter().enumerate() {
            let src = self.source_dims[j];
            for (b, img) in imgs.iter().enumerate() {
                for (t, v) in img.iter() {
                    pairs.push((offset + t * src + b, v.clone()));
                }
            }
            offset += src * self.target_dims[j];
        }
        SparseVec::from_pairs(pairs)
    }

    pub fn unflatten(degree: usize, source_dims: &[usize], target_dims: &[usize], v: &SparseVec) -> Self {
        let mut images: Vec<Vec<Vec<(usize, Scalar)>>> =
            source_dims.iter().map(|&s| vec![Vec::new(); s]).collect();
        let mut offsets = Vec::with_capacity(source_dims.len());
        let mut acc = 0;
        for (s, t) in source_dims.iter().zip(target_dims) {
            offsets.push(acc);
            acc += s * t;
        }
        for (k, x) in v.iter() {
            let j = offsets.partition_point(|&o| o <= *k) - 1;
            let local = k - offsets[j];
            let (t, b) = (local / source_dims[j], local % source_dims[j]);
            images[j][b].push((t, x.clone()));
        }
        Self {
            degree,
            source_dims: source_dims.to_vec(),
            target_dims: target_dims.to_vec(),
            images: images
                .into_iter()
                .map(|col| col.into_iter().map(SparseVec::from_pairs).collect())
                .collect(),
        }
    }

    /// The map `g_{-j} -> g_{p-j}` as a matrix.
    pub fn map(&self, j: usize) -> RatMatrix {
        RatMatrix::from_sparse_cols(self.target_dims[j - 1], self.images[j - 1].clone())
    }

    pub fn maps(&self) -> Vec<RatMatrix> {
        (1..=self.images.len()).map(|j| self.map(j)).collect()
    }

    /// True when the restriction to `g_{-1}` vanishes.
    pub fn kills_degree_minus_one(&self) -> bool {
        self.images.first().is_none_or(|imgs| imgs.iter().all(SparseVec::is_zero))
    }
}

/// One installed nonnegative component.
#[derive(Clone, Debug)]
pub struct Component {
    pub elements: Vec<ProlongElement>,
    pub span: Subspace,
}

impl Component {
    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    fn from_elements(elements: Vec<ProlongElement>, ambient: usize) -> Self {
        let span = Subspace::span(ambient, elements.iter().map(ProlongElement::flatten));
        debug_assert_eq!(span.dim(), elements.len());
        debug_assert!(elements.iter().zip(span.basis()).all(|(e, b)| &e.flatten() == b));
        Self { elements, span }
    }
}

/// Size and timing of one degree's linear system.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct StepStats {
    pub degree: usize,
    pub unknowns: usize,
    pub equations: usize,
    pub dim: usize,
    pub seconds: f64,
}

/// Linear form in the unknowns of the current system.
type Lin = SparseVec;

/// Element of a fixed degree whose coordinates are linear forms.
#[derive(Clone, Debug)]
struct Sym {
    degree: i32,
    coords: Vec<Lin>,
}

fn accumulate(out: &mut [Vec<(usize, Scalar)>], lin: &Lin, t: usize, c: &Scalar) {
    for (u, x) in lin.iter() {
        out[t].push((*u, x * c));
    }
}

fn finish(degree: i32, acc: Vec<Vec<(usize, Scalar)>>) -> Sym {
    Sym {
        degree,
        coords: acc.into_iter().map(SparseVec::from_pairs).collect(),
    }
}

/// A fundamental negatively graded algebra with the nonnegative components
/// computed so far.
#[derive(Clone, Debug)]
pub struct Tower {
    base: GradedAlgebra,
    depth: usize,
    /// `neg[j-1][b]` is the base index of the `b`-th basis vector of `g_{-j}`.
    neg: Vec<Vec<usize>>,
    local: Vec<usize>,
    /// `generation[j-2][b]`: `e_b = Σ c [x, y]` with `x ∈ g_{-1}`, `y ∈ g_{-(j-1)}`.
    generation: Vec<Vec<Vec<(usize, usize, Scalar)>>>,
    components: Vec<Component>,
}

impl Tower {
    pub fn new(base: GradedAlgebra) -> Result<Self> {
        if !base.is_fundamental()? {
            return Err(Error::NotFundamental);
        }
        let depth = base.min_degree().map_or(0, |d| (-d) as usize);
        let mut neg = vec![Vec::new(); depth];
        let mut local = vec![0; base.dim()];
        for b in base.basis() {
            let j = (-b.degree) as usize;
            local[b.index] = neg[j - 1].len();
            neg[j - 1].push(b.index);
        }
        let mut tower = Self {
            base,
            depth,
            neg,
            local,
            generation: Vec::new(),
            components: Vec::new(),
        };
        tower.generation = (2..=depth).map(|j| tower.generation_table(j)).collect::<Result<_>>()?;
        Ok(tower)
    }

    fn generation_table(&self, j: usize) -> Result<Vec<Vec<(usize, usize, Scalar)>>> {
        let pairs: Vec<(usize, usize)> = (0..self.neg[0].len())
            .flat_map(|x| (0..self.neg[j - 2].len()).map(move |y| (x, y)))
            .collect();
        let cols: Vec<SparseVec> = pairs.iter().map(|&(x, y)| self.neg_bracket(1, x, j - 1, y)).collect();
        let m = RatMatrix::from_sparse_cols(self.neg[j - 1].len(), cols);
        (0..self.neg[j - 1].len())
            .map(|b| {
                let sol = m.solve(&SparseVec::unit(b))?.ok_or(Error::NotFundamental)?;
                Ok(sol.iter().map(|(s, c)| (pairs[*s].0, pairs[*s].1, c.clone())).collect())
            })
            .collect()
    }

    pub fn base(&self) -> &GradedAlgebra {
        &self.base
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn negative_indices(&self, j: usize) -> &[usize] {
        &self.neg[j - 1]
    }

    pub fn local_index(&self, global: usize) -> usize {
        self.local[global]
    }

    /// Dimension of `g_d`; `None` for a nonnegative degree not yet installed.
    pub fn dim(&self, d: i32) -> Option<usize> {
        if d < 0 {
            Some(self.neg.get((-d - 1) as usize).map_or(0, Vec::len))
        } else {
            self.components.get(d as usize).map(Component::dim)
        }
    }

    fn dim_or_zero(&self, d: i32) -> usize {
        self.dim(d).unwrap_or(0)
    }

    pub fn source_dims(&self) -> Vec<usize> {
        self.neg.iter().map(Vec::len).collect()
    }

    pub fn target_dims(&self, p: usize) -> Vec<usize> {
        (1..=self.depth).map(|j| self.dim_or_zero(p as i32 - j as i32)).collect()
    }

    pub fn coordinate_dim(&self, p: usize) -> usize {
        self.source_dims().iter().zip(self.target_dims(p)).map(|(s, t)| s * t).sum()
    }

    /// `[x, y]` for basis vectors `x ∈ g_{-a}`, `y ∈ g_{-b}`, in local
    /// coordinates of `g_{-(a+b)}`.
    pub fn neg_bracket(&self, a: usize, x: usize, b: usize, y: usize) -> SparseVec {
        if a + b > self.depth {
            return SparseVec::new();
        }
        self.base
            .bracket_basis(self.neg[a - 1][x], self.neg[b - 1][y])
            .reindex(|g| Some(self.local[g]))
    }

    /// `[u, y]` for `u` with coordinates in `g_q` (q ≥ 0) and the `b`-th
    /// basis vector `y` of `g_{-j}`.
    pub fn act(&self, q: usize, u: &SparseVec, j: usize, b: usize) -> SparseVec {
        let comp = &self.components[q];
        u.iter().fold(SparseVec::new(), |acc, (c, x)| {
            acc.add_scaled(x, &comp.elements[*c].images[j - 1][b])
        })
    }

    /// `[s, y]` for a symbolic element `s` and the `b`-th basis vector of `g_{-j}`.
    fn sym_bracket_neg(&self, s: &Sym, j: usize, b: usize) -> Sym {
        let degree = s.degree - j as i32;
        let mut acc = vec![Vec::new(); self.dim_or_zero(degree)];
        if acc.is_empty() {
            return finish(degree, acc);
        }
        if s.degree >= 0 {
            let comp = &self.components[s.degree as usize];
            for (c, lin) in s.coords.iter().enumerate() {
                if lin.is_zero() {
                    continue;
                }
                for (t, v) in comp.elements[c].images[j - 1][b].iter() {
                    accumulate(&mut acc, lin, *t, v);
                }
            }
        } else {
            let a = (-s.degree) as usize;
            for (c, lin) in s.coords.iter().enumerate() {
                if lin.is_zero() {
                    continue;
                }
                for (t, v) in self.neg_bracket(a, c, j, b).iter() {
                    accumulate(&mut acc, lin, *t, v);
                }
            }
        }
        finish(degree, acc)
    }

    fn sym_combine(degree: i32, len: usize, terms: &[(Scalar, &Sym)]) -> Sym {
        let mut acc = vec![Vec::new(); len];
        for (c, s) in terms {
            debug_assert_eq!(s.degree, degree);
            for (t, lin) in s.coords.iter().enumerate() {
                accumulate(&mut acc, lin, t, c);
            }
        }
        finish(degree, acc)
    }

    /// Symbolic values of φ on every negative basis vector.
    fn symbolic_phi(&self, p: usize, mode: SolveMode) -> (usize, Vec<Vec<Sym>>) {
        let sources = self.source_dims();
        let targets = self.target_dims(p);
        match mode {
            SolveMode::Full => {
                let mut offset = 0;
                let mut phi = Vec::with_capacity(self.depth);
                for j in 1..=self.depth {
                    let (src, tgt) = (sources[j - 1], targets[j - 1]);
                    phi.push(
                        (0..src)
                            .map(|b| Sym {
                                degree: p as i32 - j as i32,
                                coords: (0..tgt).map(|t| SparseVec::unit(offset + t * src + b)).collect(),
                            })
                            .collect(),
                    );
                    offset += src * tgt;
                }
                (offset, phi)
            }
            SolveMode::Reduced => {
                let n1 = sources.first().copied().unwrap_or(0);
                let t1 = targets.first().copied().unwrap_or(0);
                let mut phi: Vec<Vec<Sym>> = vec![(0..n1)
                    .map(|b| Sym {
                        degree: p as i32 - 1,
                        coords: (0..t1).map(|t| SparseVec::unit(t * n1 + b)).collect(),
                    })
                    .collect()];
                for j in 2..=self.depth {
                    let degree = p as i32 - j as i32;
                    let len = targets[j - 1];
                    let layer: Vec<Sym> = self.generation[j - 2]
                        .iter()
                        .map(|expansion| {
                            let parts: Vec<(Scalar, Sym, Sym)> = expansion
                                .iter()
                                .map(|(x, y, c)| {
                                    // φ([x,y]) = [φx, y] - [φy, x]
                                    (
                                        c.clone(),
                                        self.sym_bracket_neg(&phi[0][*x], j - 1, *y),
                                        self.sym_bracket_neg(&phi[j - 2][*y], 1, *x),
                                    )
                                })
                                .collect();
                            let mut terms: Vec<(Scalar, &Sym)> = Vec::new();
                            for (c, a, b) in &parts {
                                terms.push((c.clone(), a));
                                terms.push((-c.clone(), b));
                            }
                            Self::sym_combine(degree, len, &terms)
                        })
                        .collect();
                    phi.push(layer);
                }
                (n1 * t1, phi)
            }
        }
    }

    /// Solves for the degree-`p` component given components `0..p`.
    pub fn solve_degree(&self, p: usize, mode: SolveMode) -> Result<(Vec<ProlongElement>, StepStats)> {
        if self.components.len() < p {
            return Err(Error::MissingComponents(format!(
                "degree {p} requested with {} components installed",
                self.components.len()
            )));
        }
        let start = Instant::now();
        let (unknowns, phi) = self.symbolic_phi(p, mode);
        let pairs: Vec<(usize, usize, usize, usize)> = (1..=self.depth)
            .flat_map(|a| (0..self.neg[a - 1].len()).map(move |x| (a, x)))
            .flat_map(|(a, x)| {
                (1..=self.depth).flat_map(move |b| (0..self.neg[b - 1].len()).map(move |y| (a, x, b, y)))
            })
            .filter(|&(a, x, b, y)| self.neg[a - 1][x] < self.neg[b - 1][y])
            .collect();
        let rows: Vec<SparseVec> = pairs
            .par_iter()
            .flat_map_iter(|&(a, x, b, y)| {
                let degree = p as i32 - (a + b) as i32;
                let len = self.dim_or_zero(degree);
                let lhs = if a + b <= self.depth && len > 0 {
                    let xy = self.neg_bracket(a, x, b, y);
                    let terms: Vec<(Scalar, &Sym)> =
                        xy.iter().map(|(t, c)| (c.clone(), &phi[a + b - 1][*t])).collect();
                    Self::sym_combine(degree, len, &terms)
                } else {
                    finish(degree, vec![Vec::new(); len])
                };
                let r1 = self.sym_bracket_neg(&phi[a - 1][x], b, y);
                let r2 = self.sym_bracket_neg(&phi[b - 1][y], a, x);
                let one = Scalar::from_integer(1.into());
                let res = Self::sym_combine(
                    degree,
                    len,
                    &[(one.clone(), &lhs), (-one.clone(), &r1), (one, &r2)],
                );
                res.coords.into_iter().filter(|l| !l.is_zero())
            })
            .collect();
        let equations = rows.len();
        let kernel = RatMatrix::from_sparse_rows(unknowns, rows).nullspace();
        let sources = self.source_dims();
        let targets = self.target_dims(p);
        let elements: Vec<ProlongElement> = kernel
            .basis()
            .iter()
            .map(|v| ProlongElement {
                degree: p,
                source_dims: sources.clone(),
                target_dims: targets.clone(),
                images: phi
                    .iter()
                    .map(|layer| {
                        layer
                            .iter()
                            .map(|s| {
                                s.coords
                                    .iter()
                                    .enumerate()
                                    .map(|(t, lin)| (t, lin.dot(v)))
                                    .filter(|(_, c)| !c.is_zero())
                                    .collect()
                            })
                            .collect()
                    })
                    .collect(),
            })
            .collect();
        let stats = StepStats {
            degree: p,
            unknowns,
            equations,
            dim: elements.len(),
            seconds: start.elapsed().as_secs_f64(),
        };
        Ok((elements, stats))
    }

    /// Installs the next component. Elements must be in canonical order (the
    /// echelon basis of their flattenings).
    pub fn install(&mut self, elements: Vec<ProlongElement>) -> Result<()> {
        let p = self.components.len();
        if let Some(e) = elements.iter().find(|e| e.degree != p) {
            return Err(Error::Consistency(format!(
                "element of degree {} installed at degree {p}",
                e.degree
            )));
        }
        let ambient = self.coordinate_dim(p);
        let comp = Component::from_elements(elements, ambient);
        if comp.span.dim() != comp.elements.len()
            || comp.elements.iter().zip(comp.span.basis()).any(|(e, b)| &e.flatten() != b)
        {
            return Err(Error::Consistency(format!("degree {p} basis is not canonical")));
        }
        self.components.push(comp);
        Ok(())
    }

    /// Builds degree-zero elements from a subspace of flattened coordinates.
    pub fn degree_zero_elements(&self, g0: &Subspace) -> Result<Vec<ProlongElement>> {
        if !self.components.is_empty() {
            return Err(Error::Consistency("degree zero already installed".into()));
        }
        if g0.ambient_dim() != self.coordinate_dim(0) {
            return Err(Error::Dimension(format!(
                "degree-zero subspace lives in dimension {}, expected {}",
                g0.ambient_dim(),
                self.coordinate_dim(0)
            )));
        }
        let (s, t) = (self.source_dims(), self.target_dims(0));
        Ok(g0.basis().iter().map(|v| ProlongElement::unflatten(0, &s, &t, v)).collect())
    }

    /// Coordinates of a prospective element in the installed component `q`.
    pub fn coordinates_in(&self, q: usize, flat: &SparseVec) -> Option<Vec<Scalar>> {
        self.components.get(q)?.span.coordinates(flat)
    }

    /// Commutator of two degree-zero maps, both given in flattened form.
    pub fn commutator_degree_zero(&self, a: &ProlongElement, b: &ProlongElement) -> ProlongElement {
        let apply = |m: &ProlongElement, j: usize, v: &SparseVec| -> SparseVec {
            v.iter()
                .fold(SparseVec::new(), |acc, (c, x)| acc.add_scaled(x, &m.images[j - 1][*c]))
        };
        let images = (1..=self.depth)
            .map(|j| {
                (0..self.neg[j - 1].len())
                    .map(|x| {
                        let ab = apply(a, j, &b.images[j - 1][x]);
                        let ba = apply(b, j, &a.images[j - 1][x]);
                        ab.sub(&ba)
                    })
                    .collect()
            })
            .collect();
        ProlongElement {
            degree: 0,
            source_dims: a.source_dims.clone(),
            target_dims: a.target_dims.clone(),
            images,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::int;

    fn heisenberg3() -> GradedAlgebra {
        GradedAlgebra::build(
            &[("P", -1), ("Q", -1), ("N", -2)],
            &[("P", "Q", vec![("N", int(1))])],
        )
        .unwrap()
    }

    #[test]
    fn flatten_round_trip() {
        let t = Tower::new(heisenberg3()).unwrap();
        let (elements, _) = t.solve_degree(0, SolveMode::Full).unwrap();
        for e in &elements {
            let back = ProlongElement::unflatten(0, &t.source_dims(), &t.target_dims(0), &e.flatten());
            assert_eq!(&back, e);
        }
        // csp(2) = gl(2)
        assert_eq!(elements.len(), 4);
    }

    #[test]
    fn reduced_and_full_agree_on_degree_zero() {
        let t = Tower::new(heisenberg3()).unwrap();
        let (a, _) = t.solve_degree(0, SolveMode::Full).unwrap();
        let (b, _) = t.solve_degree(0, SolveMode::Reduced).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn missing_components_rejected() {
        let t = Tower::new(heisenberg3()).unwrap();
        assert!(matches!(t.solve_degree(2, SolveMode::Reduced), Err(Error::MissingComponents(_))));
    }

    #[test]
    fn non_fundamental_base_rejected() {
        let a = GradedAlgebra::build(&[("A", -1), ("B", -2)], &[]).unwrap();
        assert!(matches!(Tower::new(a), Err(Error::NotFundamental)));
    }
}
