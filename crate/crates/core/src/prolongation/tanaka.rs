use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::tower::{ProlongElement, SolveMode, StepStats, Tower};
use crate::error::{Error, Result};
use crate::exact_linalg::{RatMatrix, SparseVec, Subspace};
use crate::lie_core::{AlgebraJson, BasisElement, GradedAlgebra};

/// Degree cap used when none is given.
pub const DEFAULT_MAX_DEGREE: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Termination {
    /// A component came out zero; everything above it vanishes.
    Vanished,
    /// The degree cap was reached with a nonzero top component.
    Capped,
}

#[derive(Clone, Debug)]
pub struct TanakaOptions {
    pub max_degree: usize,
    pub mode: SolveMode,
}

impl Default for TanakaOptions {
    fn default() -> Self {
        Self {
            max_degree: DEFAULT_MAX_DEGREE,
            mode: SolveMode::Reduced,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ProlongationResult {
    pub tower: Tower,
    /// The prolonged algebra. For a capped run this is only the truncation
    /// at the cap and need not satisfy the Jacobi identity.
    pub assembled: GradedAlgebra,
    pub terminated: Termination,
    pub stats: Vec<StepStats>,
}

#[derive(Serialize)]
struct ResultJson {
    dims: serde_json::Map<String, serde_json::Value>,
    nu: Option<i32>,
    terminated: Termination,
    algebra: AlgebraJson,
}

impl ProlongationResult {
    pub fn base(&self) -> &GradedAlgebra {
        self.tower.base()
    }

    /// Nonnegative components as subspaces of their flattened coordinates.
    pub fn components(&self) -> Vec<(i32, Subspace)> {
        self.tower
            .components()
            .iter()
            .enumerate()
            .map(|(q, c)| (q as i32, c.span.clone()))
            .collect()
    }

    /// `(degree, dim)` from `-μ` up to the top nonzero degree.
    pub fn dims(&self) -> Vec<(i32, usize)> {
        let mu = self.tower.depth() as i32;
        let top = self.tower.components().len() as i32 - 1;
        (-mu..=top)
            .filter(|&d| d != 0 || top >= 0)
            .map(|d| (d, self.tower.dim(d).unwrap_or(0)))
            .collect()
    }

    /// Largest degree with a nonzero component.
    pub fn nu(&self) -> Option<i32> {
        self.tower
            .components()
            .iter()
            .rposition(|c| c.dim() > 0)
            .map(|q| q as i32)
    }

    pub fn total_dim(&self) -> usize {
        self.assembled.dim()
    }

    pub fn nonnegative_dim(&self) -> usize {
        self.tower.components().iter().map(|c| c.dim()).sum()
    }

    pub fn positive_dim(&self) -> usize {
        self.tower.components().iter().skip(1).map(|c| c.dim()).sum()
    }

    /// Every nonzero element of a nonnegative component acts nontrivially on
    /// `g_{-1}`: the restrictions to `g_{-1}` are linearly independent.
    pub fn is_nondegenerate(&self) -> bool {
        self.tower.components().iter().all(|c| {
            let restricted: Vec<SparseVec> = c
                .elements
                .iter()
                .map(|e| {
                    let head = ProlongElement {
                        images: e.images.iter().take(1).cloned().collect(),
                        source_dims: e.source_dims.iter().take(1).cloned().collect(),
                        target_dims: e.target_dims.iter().take(1).cloned().collect(),
                        degree: e.degree,
                    };
                    head.flatten()
                })
                .collect();
            let ambient = e_ambient(c.elements.first());
            Subspace::span(ambient, restricted).dim() == c.dim()
        })
    }

    pub fn to_json(&self) -> String {
        let doc = ResultJson {
            dims: self.dims().into_iter().map(|(d, n)| (d.to_string(), n.into())).collect(),
            nu: self.nu(),
            terminated: self.terminated,
            algebra: self.assembled.to_json_value(),
        };
        let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
        s.push('\n');
        s
    }
}

fn e_ambient(e: Option<&ProlongElement>) -> usize {
    e.map_or(0, |e| e.source_dims[0] * e.target_dims[0])
}

/// Grading-preserving derivations of a fundamental negatively graded algebra,
/// in the flattened coordinates of degree-zero maps.
pub fn der0(m: &GradedAlgebra) -> Result<Subspace> {
    let tower = Tower::new(m.clone())?;
    let (elements, _) = tower.solve_degree(0, SolveMode::Reduced)?;
    Ok(Subspace::span(
        tower.coordinate_dim(0),
        elements.iter().map(ProlongElement::flatten),
    ))
}

/// Computes and returns the degree-`p` component of a partially built tower.
pub fn prolong_step(tower: &Tower, p: usize) -> Result<Vec<ProlongElement>> {
    if tower.components().len() != p {
        return Err(Error::MissingComponents(format!(
            "degree {p} needs exactly components 0..{p}, found {}",
            tower.components().len()
        )));
    }
    Ok(tower.solve_degree(p, SolveMode::Reduced)?.0)
}

/// Checks that `g0` consists of derivations and is closed under commutator.
fn validate_fixed_g0(tower: &Tower, g0: &Subspace) -> Result<Vec<ProlongElement>> {
    let elements = tower.degree_zero_elements(g0)?;
    let (all, _) = tower.solve_degree(0, SolveMode::Reduced)?;
    let der = Subspace::span(g0.ambient_dim(), all.iter().map(ProlongElement::flatten));
    if !der.contains_subspace(g0) {
        return Err(Error::InvalidParameter(
            "fixed degree-zero part contains non-derivations".into(),
        ));
    }
    let basis = RatMatrix::from_sparse_cols(g0.ambient_dim(), g0.basis().to_vec());
    for (i, a) in elements.iter().enumerate() {
        for b in &elements[i + 1..] {
            let c = tower.commutator_degree_zero(a, b).flatten();
            if basis.solve(&c)?.is_none() {
                return Err(Error::NotClosed);
            }
        }
    }
    Ok(elements)
}

/// Tanaka prolongation of a fundamental negatively graded algebra `m`, with
/// degree zero either the full `Der₀(m)` or the supplied subalgebra.
pub fn tanaka(m: &GradedAlgebra, fixed_g0: Option<&Subspace>, options: &TanakaOptions) -> Result<ProlongationResult> {
    if options.max_degree < 1 {
        return Err(Error::InvalidParameter("degree cap must be at least 1".into()));
    }
    let mut tower = Tower::new(m.clone())?;
    let mut stats = Vec::new();
    match fixed_g0 {
        Some(g0) => {
            let elements = validate_fixed_g0(&tower, g0)?;
            stats.push(StepStats {
                degree: 0,
                dim: elements.len(),
                ..Default::default()
            });
            tower.install(elements)?;
        }
        None => {
            let (elements, s) = tower.solve_degree(0, options.mode)?;
            stats.push(s);
            tower.install(elements)?;
        }
    }
    let mut terminated = Termination::Capped;
    for p in 1..=options.max_degree {
        let (elements, s) = tower.solve_degree(p, options.mode)?;
        stats.push(s);
        if elements.is_empty() {
            terminated = Termination::Vanished;
            break;
        }
        tower.install(elements)?;
    }
    let assembled = assemble_with(&tower, terminated == Termination::Capped)?;
    Ok(ProlongationResult {
        tower,
        assembled,
        terminated,
        stats,
    })
}

/// Prolongs a non-positively graded algebra: its negative part is the base
/// and the adjoint action of its degree-zero part is the fixed `g_0`.
pub fn tanaka_nonpositive(alg: &GradedAlgebra, options: &TanakaOptions) -> Result<ProlongationResult> {
    let (m, g0) = split_nonpositive(alg)?;
    tanaka(&m, Some(&g0), options)
}

/// Negative part of `alg` and the degree-zero action on it.
pub fn split_nonpositive(alg: &GradedAlgebra) -> Result<(GradedAlgebra, Subspace)> {
    if let Some(b) = alg.basis().iter().find(|b| b.degree > 0) {
        return Err(Error::InvalidParameter(format!("`{}` has positive degree", b.name)));
    }
    let negative: Vec<usize> = alg.basis().iter().filter(|b| b.degree < 0).map(|b| b.index).collect();
    let pos: HashMap<usize, usize> = negative.iter().enumerate().map(|(i, &g)| (g, i)).collect();
    let basis: Vec<BasisElement> = negative
        .iter()
        .enumerate()
        .map(|(i, &g)| BasisElement {
            name: alg.name(g).to_string(),
            degree: alg.degree(g),
            index: i,
        })
        .collect();
    let mut table = BTreeMap::new();
    for (&(i, j), v) in alg.structure_constants() {
        if let (Some(&a), Some(&b)) = (pos.get(&i), pos.get(&j)) {
            table.insert((a, b), v.reindex(|t| pos.get(&t).copied()));
        }
    }
    let m = GradedAlgebra::from_table(basis, table)?;
    let tower = Tower::new(m.clone())?;
    let (s, t) = (tower.source_dims(), tower.target_dims(0));
    let flats: Vec<SparseVec> = alg
        .indices_of_degree(0)
        .into_iter()
        .map(|u| {
            let images: Vec<Vec<SparseVec>> = (1..=tower.depth())
                .map(|j| {
                    tower
                        .negative_indices(j)
                        .iter()
                        .map(|&x| {
                            let gx = negative[x];
                            alg.bracket_basis(u, gx).reindex(|g| pos.get(&g).map(|&l| tower.local_index(l)))
                        })
                        .collect()
                })
                .collect();
            ProlongElement {
                degree: 0,
                source_dims: s.clone(),
                target_dims: t.clone(),
                images,
            }
            .flatten()
        })
        .collect();
    let n0 = flats.len();
    let g0 = Subspace::span(tower.coordinate_dim(0), flats);
    if g0.dim() != n0 {
        return Err(Error::InvalidParameter(
            "degree-zero part acts degenerately on the negative part".into(),
        ));
    }
    Ok((m, g0))
}

/// Location of a basis vector in the assembled algebra.
struct Layout {
    base_dim: usize,
    offsets: Vec<usize>,
}

impl Layout {
    fn global(&self, tower: &Tower, degree: i32, local: usize) -> usize {
        if degree < 0 {
            tower.negative_indices((-degree) as usize)[local]
        } else {
            self.base_dim + self.offsets[degree as usize] + local
        }
    }

    fn globalize(&self, tower: &Tower, degree: i32, v: &SparseVec) -> SparseVec {
        v.reindex(|t| Some(self.global(tower, degree, t)))
    }
}

/// Assembles the full prolonged algebra. The bracket of nonnegative elements
/// is the unique map with `[[u,v],x] = [u,[v,x]] - [v,[u,x]]` on negative `x`.
/// The tower must have vanished above its last component.
pub fn assemble(tower: &Tower) -> Result<GradedAlgebra> {
    assemble_with(tower, false)
}

/// With `truncate`, brackets landing above the last component are dropped and
/// the Jacobi identity is not checked: the result is the truncation of an
/// unfinished prolongation.
fn assemble_with(tower: &Tower, truncate: bool) -> Result<GradedAlgebra> {
    let base = tower.base();
    let comps = tower.components();
    let top = comps.len() as i32 - 1;
    let mut offsets = Vec::with_capacity(comps.len());
    let mut acc = 0;
    for c in comps {
        offsets.push(acc);
        acc += c.dim();
    }
    let layout = Layout {
        base_dim: base.dim(),
        offsets,
    };
    let mut basis: Vec<BasisElement> = base.basis().to_vec();
    for (q, c) in comps.iter().enumerate() {
        for i in 0..c.dim() {
            basis.push(BasisElement {
                name: format!("g{q}_{i}"),
                degree: q as i32,
                index: basis.len(),
            });
        }
    }
    let mut table: BTreeMap<(usize, usize), SparseVec> = base.structure_constants().clone();

    for (q, c) in comps.iter().enumerate() {
        for (i, e) in c.elements.iter().enumerate() {
            let u = layout.global(tower, q as i32, i);
            for j in 1..=tower.depth() {
                for (b, img) in e.images[j - 1].iter().enumerate() {
                    if img.is_zero() {
                        continue;
                    }
                    let x = layout.global(tower, -(j as i32), b);
                    // stored as [x, u] = -[u, x]; negative indices come first
                    table.insert((x, u), layout.globalize(tower, q as i32 - j as i32, img).neg());
                }
            }
        }
    }

    // brackets between nonnegative elements, by increasing total degree
    let mut nn: HashMap<(usize, usize, usize, usize), SparseVec> = HashMap::new();
    let nn_get = |nn: &HashMap<(usize, usize, usize, usize), SparseVec>, q1: usize, i1: usize, q2: usize, i2: usize| {
        if (q1, i1) == (q2, i2) {
            SparseVec::new()
        } else if (q1, i1) < (q2, i2) {
            nn.get(&(q1, i1, q2, i2)).cloned().unwrap_or_default()
        } else {
            nn.get(&(q2, i2, q1, i1)).map(SparseVec::neg).unwrap_or_default()
        }
    };
    // [u, y] for u = (q, i) and y given in coordinates of degree d
    let act = |nn: &HashMap<(usize, usize, usize, usize), SparseVec>, q: usize, i: usize, d: i32, y: &SparseVec| {
        let mut out = SparseVec::new();
        for (t, c) in y.iter() {
            let part = if d < 0 {
                comps[q].elements[i].images[(-d - 1) as usize][*t].clone()
            } else {
                nn_get(nn, q, i, d as usize, *t)
            };
            out = out.add_scaled(c, &part);
        }
        out
    };
    let sources = tower.source_dims();
    for s in 0..=(2 * top.max(0)) as usize {
        for q1 in 0..=s / 2 {
            let q2 = s - q1;
            if q2 as i32 > top {
                continue;
            }
            for i1 in 0..comps[q1].dim() {
                let start = if q1 == q2 { i1 + 1 } else { 0 };
                for i2 in start..comps[q2].dim() {
                    let (u, v) = (&comps[q1].elements[i1], &comps[q2].elements[i2]);
                    let images: Vec<Vec<SparseVec>> = (1..=tower.depth())
                        .map(|j| {
                            (0..sources[j - 1])
                                .map(|b| {
                                    let vx = &v.images[j - 1][b];
                                    let ux = &u.images[j - 1][b];
                                    let d2 = q2 as i32 - j as i32;
                                    let d1 = q1 as i32 - j as i32;
                                    act(&nn, q1, i1, d2, vx).sub(&act(&nn, q2, i2, d1, ux))
                                })
                                .collect()
                        })
                        .collect();
                    let coords = if s as i32 <= top {
                        let w = ProlongElement {
                            degree: s,
                            source_dims: sources.clone(),
                            target_dims: tower.target_dims(s),
                            images,
                        };
                        let coords = tower.coordinates_in(s, &w.flatten()).ok_or_else(|| {
                            Error::Consistency(format!(
                                "bracket of g{q1}_{i1} and g{q2}_{i2} leaves the degree-{s} component"
                            ))
                        })?;
                        SparseVec::from_pairs(coords.into_iter().enumerate().collect())
                    } else {
                        if !truncate && images.iter().flatten().any(|img| !img.is_zero()) {
                            return Err(Error::Consistency(format!(
                                "bracket of g{q1}_{i1} and g{q2}_{i2} is nonzero above the top degree"
                            )));
                        }
                        SparseVec::new()
                    };
                    if !coords.is_zero() {
                        let key = (layout.global(tower, q1 as i32, i1), layout.global(tower, q2 as i32, i2));
                        table.insert(key, layout.globalize(tower, s as i32, &coords));
                    }
                    nn.insert((q1, i1, q2, i2), coords);
                }
            }
        }
    }
    if truncate {
        GradedAlgebra::from_table_graded(basis, table)
    } else {
        GradedAlgebra::from_table(basis, table)
    }
}

/// Matrix form of each element of `g_0` acting on `g_{-1}`.
pub fn degree_zero_matrices(result: &ProlongationResult) -> Vec<RatMatrix> {
    result
        .tower
        .components()
        .first()
        .map(|c| c.elements.iter().map(|e| e.map(1)).collect())
        .unwrap_or_default()
}
