use std::time::Instant;

use prolong_core::exact_linalg::int;
use prolong_core::paper_models::{binomial, irreducible_gl2, make_heisenberg, make_m, make_s, secant_ideal};
use prolong_core::prolongation::{
    der0, hessian_space, prolong_step, split_nonpositive, tanaka, tanaka_nonpositive, LinearMapSpace, ProlongElement,
    ProlongationResult, SolveMode, TanakaOptions, Termination, Tower,
};
use prolong_core::contact_poly::PolySpan;
use prolong_core::{Error, GradedAlgebra, RatMatrix, SparseVec, Subspace};

fn abelian(n: usize) -> GradedAlgebra {
    let names: Vec<String> = (0..n).map(|i| format!("V{i}")).collect();
    GradedAlgebra::build_owned(names.into_iter().map(|s| (s, -1)).collect(), vec![]).unwrap()
}

fn full(m: &GradedAlgebra) -> ProlongationResult {
    tanaka(m, None, &TanakaOptions::default()).unwrap()
}

/// Coordinates of the flattened degree-zero map acting as `-j` on `g_{-j}`.
fn grading_map(tower: &Tower) -> SparseVec {
    let s = tower.source_dims();
    let images = (1..=tower.depth())
        .map(|j| (0..s[j - 1]).map(|b| SparseVec::from_pairs(vec![(b, int(-(j as i64)))])).collect())
        .collect();
    ProlongElement {
        degree: 0,
        source_dims: s.clone(),
        target_dims: tower.target_dims(0),
        images,
    }
    .flatten()
}

#[test]
fn der0_examples() {
    for k in 2..=4 {
        let n1 = 2 * k + 2;
        // dim csp(2m) = m(2m+1) + 1
        let expected = n1 * (n1 + 1) / 2 + 1;
        assert_eq!(der0(&make_heisenberg(k).unwrap().0).unwrap().dim(), expected, "k = {k}");
    }
    assert_eq!(der0(&make_heisenberg(2).unwrap().0).unwrap().dim(), 22);
    assert_eq!(der0(&abelian(3)).unwrap().dim(), 9);
    let m3 = make_m(3).unwrap();
    let tower = Tower::new(m3.clone()).unwrap();
    assert!(der0(&m3).unwrap().contains(&grading_map(&tower)));
    let non_fundamental = GradedAlgebra::build(&[("A", -1), ("B", -2)], &[]).unwrap();
    assert!(matches!(der0(&non_fundamental), Err(Error::NotFundamental)));
}

#[test]
fn prolong_step_examples() {
    for n in 1..=3 {
        let mut tower = Tower::new(abelian(n)).unwrap();
        assert!(matches!(prolong_step(&tower, 1), Err(Error::MissingComponents(_))));
        let (g0, _) = tower.solve_degree(0, SolveMode::Reduced).unwrap();
        assert_eq!(g0.len(), n * n);
        tower.install(g0).unwrap();
        assert_eq!(prolong_step(&tower, 1).unwrap().len(), n * n * (n + 1) / 2);
    }
    // a zero degree-zero part forces zero in degree one
    let m = make_m(3).unwrap();
    let mut tower = Tower::new(m).unwrap();
    let zero = Subspace::zero(tower.coordinate_dim(0));
    tower.install(tower.degree_zero_elements(&zero).unwrap()).unwrap();
    assert!(prolong_step(&tower, 1).unwrap().is_empty());
}

#[test]
fn reduced_and_full_modes_agree() {
    for k in 2..=4 {
        let m = make_m(k).unwrap();
        let reduced = full(&m);
        let opts = TanakaOptions {
            mode: SolveMode::Full,
            ..Default::default()
        };
        let all = tanaka(&m, None, &opts).unwrap();
        assert_eq!(reduced.components(), all.components(), "k = {k}");
    }
}

#[test]
fn m2_is_21_dimensional() {
    let r = full(&make_m(2).unwrap());
    assert_eq!(r.total_dim(), 21);
    assert_eq!(r.nu(), Some(2));
    assert_eq!(r.positive_dim(), 6);
    assert_eq!(r.base().dim(), 6);
    assert_eq!(r.dims(), vec![(-2, 3), (-1, 3), (0, 9), (1, 3), (2, 3)]);
    assert_eq!(r.terminated, Termination::Vanished);
}

#[test]
fn tanaka_errors() {
    let m = make_m(3).unwrap();
    let opts = TanakaOptions {
        max_degree: 0,
        ..Default::default()
    };
    assert!(matches!(tanaka(&m, None, &opts), Err(Error::InvalidParameter(_))));

    // span of the two off-diagonal maps of gl(2) is not closed
    let a2 = abelian(2);
    let off = Subspace::span(4, [SparseVec::unit(1), SparseVec::unit(2)]);
    assert!(matches!(tanaka(&a2, Some(&off), &TanakaOptions::default()), Err(Error::NotClosed)));

    // identity on g_{-1} and zero on the rest is not a derivation of m(3)
    let tower = Tower::new(m.clone()).unwrap();
    let id1 = SparseVec::from_pairs(vec![(0, int(1)), (4, int(1)), (8, int(1))]);
    let bad = Subspace::span(tower.coordinate_dim(0), [id1]);
    assert!(matches!(tanaka(&m, Some(&bad), &TanakaOptions::default()), Err(Error::InvalidParameter(_))));
}

#[test]
fn infinite_type_is_capped() {
    // sl(2) on the plane prolongs forever: degree p has dimension p + 3
    let a2 = abelian(2);
    let sl2 = Subspace::span(
        4,
        [
            SparseVec::unit(1),
            SparseVec::unit(2),
            SparseVec::from_pairs(vec![(0, int(1)), (3, int(-1))]),
        ],
    );
    let opts = TanakaOptions {
        max_degree: 3,
        ..Default::default()
    };
    let r = tanaka(&a2, Some(&sl2), &opts).unwrap();
    assert_eq!(r.terminated, Termination::Capped);
    assert_eq!(r.dims(), vec![(-1, 2), (0, 3), (1, 4), (2, 5), (3, 6)]);
    assert!(r.to_json().contains("\"capped\""));
}

#[test]
fn vanishing_propagates() {
    for k in 2..=5 {
        let r = full(&make_m(k).unwrap());
        let mut tower = r.tower.clone();
        let top = tower.components().len();
        assert!(tower.solve_degree(top, SolveMode::Reduced).unwrap().0.is_empty());
        tower.install(Vec::new()).unwrap();
        assert!(prolong_step(&tower, top + 1).unwrap().is_empty(), "k = {k}");
    }
}

#[test]
fn assembled_algebras_are_lie_and_nondegenerate() {
    for k in 2..=6 {
        let r = full(&make_m(k).unwrap());
        assert!(r.assembled.check_jacobi().is_empty(), "k = {k}");
        assert!(r.is_nondegenerate(), "k = {k}");
        assert_eq!(r.nonnegative_dim() + r.base().dim(), r.total_dim());
    }
}

#[test]
fn assembled_restricts_to_the_base() {
    for k in 2..=5 {
        let m = make_m(k).unwrap();
        let r = full(&m);
        for i in 0..m.dim() {
            assert_eq!(r.assembled.name(i), m.name(i));
            assert_eq!(r.assembled.degree(i), m.degree(i));
            for j in 0..m.dim() {
                assert_eq!(r.assembled.bracket_basis(i, j), m.bracket_basis(i, j));
            }
        }
    }
}

/// Matrices of `ad u` on the negative part, flattened, for the given indices.
fn ad_on_negative(alg: &GradedAlgebra, us: &[usize]) -> Vec<SparseVec> {
    let neg: Vec<usize> = (0..alg.dim()).filter(|&i| alg.degree(i) < 0).collect();
    us.iter()
        .map(|&u| {
            let cols: Vec<SparseVec> = neg.iter().map(|&x| alg.bracket_basis(u, x)).collect();
            RatMatrix::from_sparse_cols(alg.dim(), cols).flatten()
        })
        .collect()
}

#[test]
fn fixed_degree_zero_is_reproduced() {
    for k in 3..=5 {
        let ns = make_s(k).unwrap().algebra;
        let (_, g0) = split_nonpositive(&ns).unwrap();
        let r = tanaka_nonpositive(&ns, &TanakaOptions::default()).unwrap();
        assert_eq!(r.components()[0].1, g0);
        // negative part and the action of degree zero on it, basis-free
        let n_neg = ns.indices_of_degree(-1).len() + ns.indices_of_degree(-2).len();
        for i in 0..n_neg {
            for j in 0..n_neg {
                assert_eq!(r.assembled.bracket_basis(i, j), ns.bracket_basis(i, j));
            }
        }
        let dim = ns.dim().max(r.assembled.dim());
        let restrict = |alg: &GradedAlgebra| {
            let v = ad_on_negative(alg, &alg.indices_of_degree(0));
            // keep only rows that land on the negative part
            Subspace::span(dim * n_neg, v.into_iter().map(|x| x.reindex(Some)))
        };
        assert_eq!(restrict(&r.assembled).dim(), ns.indices_of_degree(0).len());
        assert!(r.assembled.check_jacobi().is_empty());
        assert!(r.is_nondegenerate());
    }
}

#[test]
fn ns_prolongation_matches_minor_counts() {
    for k in 3..=7 {
        let r = tanaka_nonpositive(&make_s(k).unwrap().algebra, &TanakaOptions::default()).unwrap();
        for (d, n) in r.dims() {
            if d >= 1 {
                assert_eq!(n, binomial(k - d as usize, d as usize + 2), "k = {k}, degree {d}");
            }
        }
        assert_eq!(r.nu(), Some((k / 2 - 1) as i32));
    }
}

#[test]
fn grading_element_acts_by_degree() {
    let r = full(&make_m(3).unwrap());
    let alg = &r.assembled;
    let zero = alg.indices_of_degree(0);
    let neg: Vec<usize> = (0..alg.dim()).filter(|&i| alg.degree(i) < 0).collect();
    let cols: Vec<SparseVec> = zero
        .iter()
        .map(|&u| {
            let m = RatMatrix::from_sparse_cols(alg.dim(), neg.iter().map(|&x| alg.bracket_basis(u, x)).collect());
            m.flatten()
        })
        .collect();
    let target = RatMatrix::from_sparse_cols(
        alg.dim(),
        neg.iter().map(|&x| SparseVec::from_pairs(vec![(x, int(alg.degree(x) as i64))])).collect(),
    )
    .flatten();
    let flat_dim = alg.dim() * neg.len();
    let sol = RatMatrix::from_sparse_cols(flat_dim, cols).solve(&target).unwrap().unwrap();
    let e = sol.reindex(|c| Some(zero[c]));
    for u in 0..alg.dim() {
        let got = alg.bracket_vec(&e, &SparseVec::unit(u));
        assert_eq!(got, SparseVec::from_pairs(vec![(u, int(alg.degree(u) as i64))]), "{}", alg.name(u));
    }
    let top = alg.indices_of_degree(2);
    for &a in &top {
        for &b in &top {
            assert!(alg.bracket_basis(a, b).is_zero());
        }
    }
}

#[test]
fn result_json() {
    let r = full(&make_m(2).unwrap());
    let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
    let keys: Vec<&String> = v["dims"].as_object().unwrap().keys().collect();
    assert_eq!(keys, ["-2", "-1", "0", "1", "2"]);
    assert_eq!(v["dims"]["0"], 9);
    assert_eq!(v["nu"], 2);
    assert_eq!(v["terminated"], "vanished");
    let alg = GradedAlgebra::from_json(&v["algebra"].to_string()).unwrap();
    assert_eq!(alg.dim(), 21);
    assert_eq!(alg.to_json(), r.assembled.to_json());
}

#[test]
fn standard_prolongation_examples() {
    assert_eq!(LinearMapSpace::full(3, 2).standard_prolongation().dim(), 2 * 3 * 4 / 2);
    assert!(irreducible_gl2(4).unwrap().standard_prolongation().is_zero());
    let l = hessian_space(4, &secant_ideal(4, 0).unwrap()).unwrap();
    assert_eq!(l.dim(), binomial(4, 2));
    assert_eq!(l.standard_prolongation().dim(), binomial(3, 3));
}

#[test]
fn direct_and_iterated_prolongations_agree() {
    let start = Instant::now();
    for k in 3..=6 {
        let l = hessian_space(k, &secant_ideal(k, 0).unwrap()).unwrap();
        for i in 1..=3 {
            assert_eq!(l.direct_prolongation(i), l.prolongation(i), "k = {k}, i = {i}");
        }
    }
    eprintln!("direct vs iterated: {:?}", start.elapsed());
}

#[test]
fn partial_derivatives_fall_one_step() {
    for k in 4..=7 {
        let l = hessian_space(k, &secant_ideal(k, 0).unwrap()).unwrap();
        let mut below = PolySpan::new(k, &l.symmetric_polynomials(k, 2).unwrap());
        let mut current = l;
        for r in 1..k {
            current = current.standard_prolongation();
            if current.is_zero() {
                break;
            }
            let polys = current.symmetric_polynomials(k, r + 2).unwrap();
            for p in &polys {
                for j in 0..=k {
                    assert!(below.contains(&p.dx(j)), "k = {k}, r = {r}");
                }
            }
            below = PolySpan::new(k, &polys);
        }
    }
}
