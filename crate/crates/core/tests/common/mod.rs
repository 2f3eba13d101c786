#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

use prolong_core::contact_poly::{monomials_with_weights, second_weight_range, Monomial, WeightedPolynomial};
use prolong_core::exact_linalg::frac;
use prolong_core::Scalar;

/// Fixed-seed proptest configuration. The seed is printed so a failing run
/// can be named in a bug report.
pub fn config(name: &str, seed: u64, cases: u32) -> Config {
    eprintln!("proptest {name}: seed {seed}, {cases} cases");
    Config {
        cases,
        rng_seed: RngSeed::Fixed(seed),
        failure_persistence: None,
        ..Config::default()
    }
}

pub fn small_rational() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| frac(p, q))
}

pub fn nonzero_rational() -> impl Strategy<Value = Scalar> {
    ((1i64..=6), any::<bool>(), 1i64..=4).prop_map(|(p, neg, q)| frac(if neg { -p } else { p }, q))
}

/// Every monomial in the variables of `k` with standard weight at most `max_weight`.
pub fn monomials_up_to(k: usize, max_weight: i64) -> Vec<Monomial> {
    let mut out = Vec::new();
    for w in 0..=max_weight {
        let (lo, hi) = second_weight_range(k, w);
        for s in lo..=hi {
            out.extend(monomials_with_weights(k, w, s));
        }
    }
    out
}

/// Random polynomials with up to `terms` terms of standard weight at most `max_weight`.
pub fn polynomial(k: usize, max_weight: i64, terms: usize) -> impl Strategy<Value = WeightedPolynomial> {
    let monos = monomials_up_to(k, max_weight);
    let n = monos.len();
    prop::collection::vec((0..n, nonzero_rational()), 1..=terms).prop_map(move |ts| {
        WeightedPolynomial::from_terms(k, ts.into_iter().map(|(i, c)| (monos[i].clone(), c)))
    })
}

/// Random polynomials homogeneous for both gradings.
pub fn bihomogeneous(k: usize, max_weight: i64) -> impl Strategy<Value = WeightedPolynomial> {
    (0..=max_weight)
        .prop_flat_map(move |w| {
            let (lo, hi) = second_weight_range(k, w);
            (Just(w), lo..=hi)
        })
        .prop_filter_map("empty weight space", move |(w, s)| {
            let monos = monomials_with_weights(k, w, s);
            (!monos.is_empty()).then_some(monos)
        })
        .prop_flat_map(move |monos| {
            let n = monos.len();
            prop::collection::vec((0..n, nonzero_rational()), 1..=3).prop_map(move |ts| {
                WeightedPolynomial::from_terms(k, ts.into_iter().map(|(i, c)| (monos[i].clone(), c)))
            })
        })
        .prop_filter("nonzero", |p| !p.is_zero())
}
