mod common;

use proptest::prelude::*;
use proptest::test_runner::TestRunner;

use prolong_core::exact_linalg::elim::{kernel_from_rref, rref_bareiss, rref_naive, rref_sparse};
use prolong_core::exact_linalg::{frac, int, parse_scalar};
use prolong_core::paper_models::{curve_point, hankel};
use prolong_core::{RatMatrix, Scalar, SparseVec, Subspace};

fn v(xs: &[i64]) -> SparseVec {
    SparseVec::from_dense(&xs.iter().map(|&x| int(x)).collect::<Vec<_>>())
}

#[test]
fn scalars_are_in_lowest_terms() {
    let s = frac(6, -4);
    assert_eq!((s.numer().to_string(), s.denom().to_string()), ("-3".into(), "2".into()));
    assert_eq!(frac(0, 7).denom().to_string(), "1");
    assert_eq!(parse_scalar("-10/4"), Some(frac(-5, 2)));
    assert_eq!(parse_scalar("7"), Some(int(7)));
    assert_eq!(parse_scalar("1/0"), None);
}

#[test]
fn nullspace_examples() {
    assert_eq!(RatMatrix::identity(2).nullspace().dim(), 0);
    let z = RatMatrix::zeros(1, 3).nullspace();
    assert_eq!(z, Subspace::full(3));
    let m = RatMatrix::from_i64(&[&[1, 2], &[2, 4]]);
    let n = m.nullspace();
    assert_eq!(n.dim(), 1);
    // kernel spanned by (-2, 1), held with a leading one
    assert_eq!(n.basis()[0], SparseVec::from_dense(&[int(1), frac(-1, 2)]));
    assert!(n.contains(&v(&[-2, 1])));
}

#[test]
fn rank_examples() {
    assert_eq!(RatMatrix::identity(5).rank(), 5);
    assert_eq!(RatMatrix::zeros(3, 4).rank(), 0);
    // the 2x3 catalecticant at a point of the twisted cubic has rank one
    let p = curve_point(3, int(1), int(1)).unwrap();
    let rows = hankel(3, 0).unwrap().evaluate(&p.coords);
    assert_eq!(RatMatrix::from_rows(3, rows).rank(), 1);
}

#[test]
fn intersect_examples() {
    let a = Subspace::span(3, [v(&[1, 0, 1]), v(&[0, 1, 0])]);
    assert_eq!(a.intersect(&a).unwrap(), a);
    let b = Subspace::span(3, [v(&[1, 1, 1])]);
    assert_eq!(a.intersect(&b).unwrap(), b);
    let p = Subspace::span(4, [v(&[1, 0, 0, 0]), v(&[0, 1, 0, 0])]);
    let q = Subspace::span(4, [v(&[0, 0, 1, 0]), v(&[0, 0, 0, 1])]);
    assert!(p.intersect(&q).unwrap().is_zero());
    assert!(a.intersect(&p).is_err());
}

#[test]
fn solve_examples() {
    let b = v(&[3, -1, 4]);
    assert_eq!(RatMatrix::identity(3).solve(&b).unwrap(), Some(b.clone()));
    assert_eq!(RatMatrix::zeros(3, 3).solve(&b).unwrap(), None);
    let m = RatMatrix::from_i64(&[&[2, 0], &[0, 3]]);
    let x = m.solve(&v(&[1, 1])).unwrap().unwrap();
    assert_eq!(x.to_dense(2), vec![frac(1, 2), frac(1, 3)]);
    // free variables are set to zero
    let m = RatMatrix::from_i64(&[&[1, 1]]);
    assert_eq!(m.solve(&v(&[5])).unwrap().unwrap().to_dense(2), vec![int(5), int(0)]);
}

#[test]
fn canonical_echelon_form() {
    let a = Subspace::span(3, [v(&[1, 2, 3]), v(&[0, 1, 1])]);
    let b = Subspace::span(3, [v(&[1, 3, 4]), v(&[2, 5, 7]), v(&[1, 2, 3])]);
    assert_eq!(a, b);
    let pivots = a.pivots();
    assert!(pivots.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn sparse_and_dense_storage_agree() {
    let mut rows = vec![vec![int(0); 40]; 30];
    rows[3][7] = frac(2, 3);
    rows[10][0] = int(-1);
    rows[29][39] = int(5);
    let dense = RatMatrix::from_rows(40, rows.clone());
    let sparse = RatMatrix::from_sparse_rows(40, rows.iter().map(|r| SparseVec::from_dense(r)).collect());
    for i in 0..30 {
        for j in 0..40 {
            assert_eq!(dense.get(i, j), sparse.get(i, j));
        }
    }
    assert_eq!(dense.rank(), sparse.rank());
    assert_eq!(dense.nullspace(), sparse.nullspace());
}

fn matrix(max: usize) -> impl Strategy<Value = (usize, usize, Vec<Vec<Scalar>>)> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        // a mix of dense and mostly zero entries, so both storage paths run
        let entry = prop_oneof![3 => Just(int(0)), 2 => common::small_rational()];
        (Just(r), Just(c), prop::collection::vec(prop::collection::vec(entry, c), r))
    })
}

#[test]
fn rank_equals_transpose_rank() {
    let mut runner = TestRunner::new(common::config("rank_transpose", 0x5eed_0001, 64));
    runner
        .run(&matrix(30), |(_, c, rows)| {
            let m = RatMatrix::from_rows(c, rows);
            prop_assert_eq!(m.rank(), m.transpose().rank());
            Ok(())
        })
        .unwrap();
}

#[test]
fn kernels_agree() {
    let mut runner = TestRunner::new(common::config("elimination_kernels", 0x5eed_0002, 96));
    runner
        .run(&matrix(12), |(_, c, rows)| {
            let bareiss = rref_bareiss(&rows, c);
            let naive = rref_naive(&rows, c);
            let sparse = rref_sparse(rows.iter().map(|r| SparseVec::from_dense(r)).collect());
            prop_assert_eq!(&bareiss, &naive);
            prop_assert_eq!(&bareiss, &sparse);
            prop_assert_eq!(kernel_from_rref(&bareiss, c), kernel_from_rref(&naive, c));
            Ok(())
        })
        .unwrap();
}

#[test]
fn nullspace_is_the_exact_kernel() {
    let mut runner = TestRunner::new(common::config("nullspace", 0x5eed_0003, 96));
    runner
        .run(&matrix(15), |(_, c, rows)| {
            let m = RatMatrix::from_rows(c, rows);
            let n = m.nullspace();
            prop_assert_eq!(m.rank() + n.dim(), c);
            for b in n.basis() {
                prop_assert!(m.mul_vec(b).is_zero());
            }
            Ok(())
        })
        .unwrap();
}

#[test]
fn span_is_independent_of_spanning_set() {
    let mut runner = TestRunner::new(common::config("canonical_span", 0x5eed_0004, 64));
    let strat = (matrix(8), prop::collection::vec(common::small_rational(), 64));
    runner
        .run(&strat, |((_, c, rows), mix)| {
            let vs: Vec<SparseVec> = rows.iter().map(|r| SparseVec::from_dense(r)).collect();
            // add random combinations of the rows to the spanning set
            let mut more = vs.clone();
            for (i, w) in mix.chunks(vs.len()).enumerate().take(4) {
                let comb = vs.iter().zip(w).fold(SparseVec::new(), |acc, (x, c)| acc.add_scaled(c, x));
                more.insert(i.min(more.len()), comb);
            }
            more.reverse();
            prop_assert_eq!(Subspace::span(c, vs), Subspace::span(c, more));
            Ok(())
        })
        .unwrap();
}
