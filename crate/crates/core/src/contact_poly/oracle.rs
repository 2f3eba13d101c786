//! Degree-by-degree computation of the prolongation of `n ⊕ s` inside the
//! contact polynomials. Component `i` consists of the polynomials of
//! standard weight `i+2` whose brackets with every `x_j` and `y_j` land in
//! component `i-1`. Every constraint respects the second grading, so each
//! component is solved one second-weight block at a time.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::space::{constrained_span, monomials_with_weights, second_weight_range, PolyMap, PolySpan};
use super::{bracket_x, bracket_y, Grading, Weight, WeightedPolynomial};
use crate::error::{Error, Result};
use crate::paper_models::{heisenberg_polynomials, secant_ideal, s_polynomials};

type P = WeightedPolynomial;

/// One component, split by second weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GnsComponent {
    pub degree: usize,
    pub blocks: BTreeMap<i64, PolySpan>,
}

impl GnsComponent {
    pub fn dim(&self) -> usize {
        self.blocks.values().map(PolySpan::dim).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Echelon bases of the blocks, highest second weight first.
    pub fn basis(&self) -> Vec<P> {
        self.blocks.values().rev().flat_map(|b| b.basis().iter().cloned()).collect()
    }

    fn block(&self, w: i64) -> Option<&PolySpan> {
        self.blocks.get(&w)
    }

    fn from_polynomials(k: usize, degree: usize, polys: &[P]) -> Result<Self> {
        let mut by_weight: BTreeMap<i64, Vec<P>> = BTreeMap::new();
        for p in polys {
            match (p.weight(Grading::Standard), p.weight(Grading::Second)) {
                (Weight::Homogeneous(s), Weight::Homogeneous(w)) if s == degree as i64 + 2 => {
                    by_weight.entry(w).or_default().push(p.clone());
                }
                (Weight::Zero, _) => {}
                _ => {
                    return Err(Error::InvalidParameter(format!(
                        "`{p}` is not bihomogeneous of standard weight {}",
                        degree + 2
                    )))
                }
            }
        }
        Ok(Self {
            degree,
            blocks: by_weight
                .into_iter()
                .map(|(w, ps)| (w, PolySpan::new(k, &ps)))
                .filter(|(_, s)| !s.is_zero())
                .collect(),
        })
    }
}

/// The degree-zero component: the polynomials of `s`.
pub fn s_component(k: usize) -> Result<GnsComponent> {
    let polys: Vec<P> = s_polynomials(k)?.into_iter().map(|(_, p)| p).collect();
    GnsComponent::from_polynomials(k, 0, &polys)
}

/// Component `i >= 1`, given components `0..i`.
pub fn gns_component(k: usize, i: usize, previous: &[GnsComponent]) -> Result<GnsComponent> {
    if i == 0 {
        return Err(Error::InvalidParameter("component index must be at least 1".into()));
    }
    if previous.len() != i {
        return Err(Error::MissingComponents(format!(
            "component {i} needs components 0..{i}, got {}",
            previous.len()
        )));
    }
    let prev = &previous[i - 1];
    let zero = PolySpan::zero(k);
    let weight = i as i64 + 2;
    let (lo, hi) = second_weight_range(k, weight);
    let blocks: Vec<(i64, PolySpan)> = (lo..=hi)
        .into_par_iter()
        .map(|w| {
            let domain = monomials_with_weights(k, weight, w);
            let mut constraints: Vec<(PolyMap<'_>, &PolySpan)> = Vec::with_capacity(2 * k + 2);
            for j in 0..=k {
                // {x_j, ·} shifts the second weight by j - 2, {y_j, ·} by -j
                let tx = prev.block(w + j as i64 - 2).unwrap_or(&zero);
                let ty = prev.block(w - j as i64).unwrap_or(&zero);
                constraints.push((Box::new(move |p: &P| bracket_x(j, p)), tx));
                constraints.push((Box::new(move |p: &P| bracket_y(j, p)), ty));
            }
            (w, constrained_span(k, &domain, &constraints))
        })
        .filter(|(_, s)| !s.is_zero())
        .collect();
    Ok(GnsComponent {
        degree: i,
        blocks: blocks.into_iter().collect(),
    })
}

#[derive(Clone, Debug)]
pub struct OracleResult {
    pub k: usize,
    /// Components `0, 1, ...` up to the last nonzero one.
    pub components: Vec<GnsComponent>,
}

impl OracleResult {
    /// Dimensions by standard degree, from -2 up.
    pub fn dims(&self) -> Vec<(i32, usize)> {
        let mut out = vec![(-2, 1), (-1, 2 * self.k + 2)];
        out.extend(self.components.iter().map(|c| (c.degree as i32, c.dim())));
        out
    }

    pub fn total_dim(&self) -> usize {
        self.dims().iter().map(|(_, d)| d).sum()
    }

    /// Largest standard degree with a nonzero component.
    pub fn top_degree(&self) -> i32 {
        self.components.len() as i32 - 1
    }

    /// Dimensions over (standard degree, second degree), negative part included.
    pub fn bidegree_table(&self) -> BTreeMap<(i32, i32), usize> {
        let k = self.k;
        let mut table = BTreeMap::new();
        for (_, p) in heisenberg_polynomials(k) {
            let s = match p.weight(Grading::Standard) {
                Weight::Homogeneous(w) => w as i32 - 2,
                _ => unreachable!("basis polynomials are homogeneous"),
            };
            let t = match p.weight(Grading::Second) {
                Weight::Homogeneous(w) => w as i32 - 2,
                _ => unreachable!("basis polynomials are homogeneous"),
            };
            *table.entry((s, t)).or_insert(0) += 1;
        }
        for c in &self.components {
            for (w, b) in &c.blocks {
                *table.entry((c.degree as i32, *w as i32 - 2)).or_insert(0) += b.dim();
            }
        }
        table
    }

    /// Dimensions by second degree (marginal of the bidegree table).
    pub fn dims_by_second(&self) -> BTreeMap<i32, usize> {
        let mut out = BTreeMap::new();
        for ((_, t), d) in self.bidegree_table() {
            *out.entry(t).or_insert(0) += d;
        }
        out
    }

    /// For each positive component, whether it equals the span of the
    /// maximal catalecticant minors of the same index.
    pub fn secant_agreement(&self) -> Result<Vec<(usize, bool)>> {
        let k = self.k;
        let mut out = Vec::new();
        let top = (k / 2).saturating_sub(1);
        for i in 1..=top.max(self.components.len().saturating_sub(1)) {
            let expected = if i <= top {
                PolySpan::new(k, &secant_ideal(k, i)?)
            } else {
                PolySpan::zero(k)
            };
            let found = self
                .components
                .get(i)
                .map(|c| PolySpan::new(k, &c.basis()))
                .unwrap_or_else(|| PolySpan::zero(k));
            out.push((i, found == expected));
        }
        Ok(out)
    }
}

/// Iterates components until one vanishes; fails if `cap` components are
/// nonzero.
pub fn oracle_full(k: usize, cap: usize) -> Result<OracleResult> {
    let mut components = vec![s_component(k)?];
    for i in 1..=cap {
        let c = gns_component(k, i, &components)?;
        if c.is_zero() {
            return Ok(OracleResult { k, components });
        }
        components.push(c);
    }
    Err(Error::CapReached(cap))
}

/// Bidegree table of the full oracle result.
pub fn bidegree_table(k: usize) -> Result<BTreeMap<(i32, i32), usize>> {
    Ok(oracle_full(k, crate::prolongation::DEFAULT_MAX_DEGREE)?.bidegree_table())
}
