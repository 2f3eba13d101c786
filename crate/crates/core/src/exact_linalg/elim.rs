//! Row reduction kernels. Every entry point returns the reduced row-echelon
//! form (leading ones, pivots strictly increasing), which is unique, so the
//! choice of kernel is never observable.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{Scalar, SparseVec};

/// Scales a rational row by the lcm of its denominators.
fn integerize(row: &[Scalar]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .filter(|v| !v.is_zero())
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    row.iter()
        .map(|v| v.numer() * (&lcm / v.denom()))
        .collect()
}

/// Fraction-free forward elimination. Pivot is the first nonzero entry in
/// column order; every division by the previous pivot is exact.
pub fn bareiss_echelon(mut a: Vec<Vec<BigInt>>, cols: usize) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let m = a.len();
    let mut prev = BigInt::one();
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..cols {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let (top, bottom) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pivot = pivot_row[c].clone();
        for row in bottom.iter_mut() {
            let factor = std::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let t = &pivot * &row[j] - &factor * &pivot_row[j];
                let (q, rem) = t.div_rem(&prev);
                debug_assert!(rem.is_zero(), "inexact Bareiss division");
                row[j] = q;
            }
        }
        prev = pivot;
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

/// RREF through the fraction-free forward pass followed by one exact
/// normalization and back substitution over the rationals.
pub fn rref_bareiss(rows: &[Vec<Scalar>], cols: usize) -> Vec<SparseVec> {
    let ints: Vec<Vec<BigInt>> = rows.iter().map(|r| integerize(r)).collect();
    let (echelon, pivots) = bareiss_echelon(ints, cols);
    let mut out: Vec<SparseVec> = echelon
        .into_iter()
        .zip(&pivots)
        .map(|(row, &c)| {
            let d = row[c].clone();
            SparseVec::from_pairs(
                row.into_iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(j, v)| (j, Scalar::new(v, d.clone())))
                    .collect(),
            )
        })
        .collect();
    back_substitute(&mut out, &pivots);
    out
}

/// Clears entries above each pivot, bottom row first.
fn back_substitute(rows: &mut [SparseVec], pivots: &[usize]) {
    for i in (0..rows.len()).rev() {
        let (above, below) = rows.split_at_mut(i);
        let pivot_row = &below[0];
        let c = pivots[i];
        for row in above.iter_mut() {
            let f = row.get(c);
            if !f.is_zero() {
                *row = row.add_scaled(&-f, pivot_row);
            }
        }
    }
}

/// Textbook Gauss-Jordan over the rationals. Kept as an independent reference
/// for the fraction-free and sparse kernels.
pub fn rref_naive(rows: &[Vec<Scalar>], cols: usize) -> Vec<SparseVec> {
    let mut a: Vec<Vec<Scalar>> = rows.to_vec();
    let m = a.len();
    let mut r = 0;
    for c in 0..cols {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..m {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let (pivot, row) = if i < r {
                    let (lo, hi) = a.split_at_mut(r);
                    (&hi[0], &mut lo[i])
                } else {
                    let (lo, hi) = a.split_at_mut(i);
                    (&lo[r], &mut hi[0])
                };
                for (x, p) in row.iter_mut().zip(pivot) {
                    *x -= &f * p;
                }
            }
        }
        r += 1;
    }
    a.truncate(r);
    a.iter().map(|row| SparseVec::from_dense(row)).collect()
}

/// Sparse incremental elimination. Rows are inserted shortest first; each
/// stored row keeps its leading entry normalized to one.
pub fn rref_sparse(rows: Vec<SparseVec>) -> Vec<SparseVec> {
    let mut rows = rows;
    rows.retain(|r| !r.is_zero());
    rows.sort_by_key(|r| r.nnz());
    let mut pivots: BTreeMap<usize, SparseVec> = BTreeMap::new();
    for mut row in rows {
        while let Some((c, v)) = row.leading().cloned() {
            match pivots.get(&c) {
                Some(p) => row = row.add_scaled(&-v, p),
                None => {
                    let inv = v.recip();
                    pivots.insert(c, row.scale(&inv));
                    break;
                }
            }
        }
    }
    let (cols, mut out): (Vec<usize>, Vec<SparseVec>) = pivots.into_iter().unzip();
    back_substitute_sparse(&mut out, &cols);
    out
}

/// Back substitution for rows that are echelon by leading entry but may hold
/// entries in later pivot columns.
fn back_substitute_sparse(rows: &mut [SparseVec], pivots: &[usize]) {
    let pivot_pos: BTreeMap<usize, usize> = pivots.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    for i in (0..rows.len()).rev() {
        let mut row = std::mem::take(&mut rows[i]);
        loop {
            // first entry past the pivot that sits in a pivot column
            let hit = row
                .iter()
                .skip(1)
                .find(|(c, _)| pivot_pos.contains_key(c))
                .map(|(c, v)| (*c, v.clone()));
            match hit {
                Some((c, v)) => {
                    let other = &rows[pivot_pos[&c]];
                    row = row.add_scaled(&-v, other);
                }
                None => break,
            }
        }
        rows[i] = row;
    }
}

/// Nullspace basis read off a RREF: one vector per free column.
pub fn kernel_from_rref(rref: &[SparseVec], cols: usize) -> Vec<SparseVec> {
    let pivots: Vec<usize> = rref.iter().map(|r| r.leading().expect("nonzero row").0).collect();
    let mut is_pivot = vec![false; cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    // column view of the non-pivot part
    let mut by_col: BTreeMap<usize, Vec<(usize, Scalar)>> = BTreeMap::new();
    for (row, &p) in rref.iter().zip(&pivots) {
        for (c, v) in row.iter().skip(1) {
            by_col.entry(*c).or_default().push((p, -v));
        }
    }
    (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|f| {
            let mut pairs = by_col.remove(&f).unwrap_or_default();
            pairs.push((f, Scalar::one()));
            SparseVec::from_pairs(pairs)
        })
        .collect()
}

/// True when every entry of `rref` is a valid leading-one echelon form.
pub fn is_rref(rows: &[SparseVec]) -> bool {
    let mut last: Option<usize> = None;
    let pivots: Vec<usize> = rows.iter().filter_map(|r| r.leading().map(|e| e.0)).collect();
    if pivots.len() != rows.len() {
        return false;
    }
    for (row, &p) in rows.iter().zip(&pivots) {
        if last.is_some_and(|l| l >= p) || !row.get(p).is_one() {
            return false;
        }
        last = Some(p);
        for (other, &q) in rows.iter().zip(&pivots) {
            if q != p && !other.get(p).is_zero() {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::{frac, int};

    fn ints(rows: &[&[i64]]) -> Vec<Vec<Scalar>> {
        rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()
    }

    #[test]
    fn three_kernels_agree_on_small_matrix() {
        let m = ints(&[&[2, 4, 1, 0], &[1, 2, 0, 3], &[3, 6, 1, 3]]);
        let a = rref_bareiss(&m, 4);
        let b = rref_naive(&m, 4);
        let c = rref_sparse(m.iter().map(|r| SparseVec::from_dense(r)).collect());
        assert_eq!(a, b);
        assert_eq!(a, c);
        assert_eq!(a.len(), 2);
        assert!(is_rref(&a));
        assert_eq!(a[0].get(3), int(3));
        assert_eq!(a[1].get(3), int(-6));
    }

    #[test]
    fn bareiss_handles_rationals() {
        let m = vec![
            vec![frac(1, 2), frac(1, 3)],
            vec![frac(1, 4), frac(1, 6)],
        ];
        let r = rref_bareiss(&m, 2);
        assert_eq!(r, vec![SparseVec::from_pairs(vec![(0, int(1)), (1, frac(2, 3))])]);
    }

    #[test]
    fn kernel_of_rank_one() {
        let m = ints(&[&[1, 2], &[2, 4]]);
        let r = rref_bareiss(&m, 2);
        let k = kernel_from_rref(&r, 2);
        assert_eq!(k, vec![SparseVec::from_pairs(vec![(0, int(-2)), (1, int(1))])]);
    }
}
