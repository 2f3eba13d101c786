//! One line per acceptance criterion. Every criterion runs even when an
//! earlier one fails; the test fails at the end if any did.

mod common;

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::TestRunner;

use prolong_core::contact_poly::{contact_bracket, oracle_full, to_field, Grading, PolySpan, Weight, WeightedPolynomial};
use prolong_core::exact_linalg::int;
use prolong_core::paper_models::{binomial, irreducible_gl2, make_m, secant_ideal, secant_point};
use prolong_core::prolongation::{hessian_space, tanaka, ProlongationResult, TanakaOptions};
use prolong_core::verify::cross_check;

type P = WeightedPolynomial;
type Criterion = fn() -> Result<String, String>;

fn prolong_m(k: usize) -> ProlongationResult {
    tanaka(&make_m(k).unwrap(), None, &TanakaOptions::default()).unwrap()
}

fn br(f: &P, g: &P) -> P {
    contact_bracket(f, g).unwrap()
}

fn criterion_1() -> Result<String, String> {
    let got: Vec<usize> = (3..=6).map(|k| prolong_m(k).total_dim()).collect();
    if got == [17, 23, 32, 46] {
        Ok(format!("totals {got:?}"))
    } else {
        Err(format!("totals {got:?}, expected [17, 23, 32, 46]"))
    }
}

fn criterion_2() -> Result<String, String> {
    let got: Vec<Option<i32>> = (3..=7).map(|k| prolong_m(k).nu()).collect();
    let want = [2, 4, 7, 10, 14].map(Some);
    if got == want {
        Ok(format!("nu {got:?}"))
    } else {
        Err(format!("nu {got:?}, expected {want:?}"))
    }
}

fn criterion_3() -> Result<String, String> {
    let r = prolong_m(2);
    let plus: usize = r.dims().iter().filter(|(d, _)| *d > 0).map(|(_, n)| n).sum();
    let minus: usize = r.dims().iter().filter(|(d, _)| *d < 0).map(|(_, n)| n).sum();
    let got = (r.total_dim(), r.nu(), plus, minus);
    if got == (21, Some(2), 6, 6) {
        Ok(format!("total 21, nu 2, positive {plus}, negative {minus}"))
    } else {
        Err(format!("(total, nu, positive, negative) = {got:?}"))
    }
}

fn criterion_4() -> Result<String, String> {
    for k in 3..=8 {
        let o = oracle_full(k, 32).map_err(|e| e.to_string())?;
        for i in 1..=k / 2 + 1 {
            let comp = o.components.iter().find(|c| c.degree == i);
            let dim = comp.map_or(0, |c| c.dim());
            let want = if i + 2 <= k - i { binomial(k - i, i + 2) } else { 0 };
            if dim != want {
                return Err(format!("k = {k}, i = {i}: dim {dim}, expected {want}"));
            }
            if let Some(c) = comp.filter(|c| !c.is_zero()) {
                let minors = secant_ideal(k, i).map_err(|e| e.to_string())?;
                if PolySpan::new(k, &c.basis()) != PolySpan::new(k, &minors) {
                    return Err(format!("k = {k}, i = {i}: span differs from minors"));
                }
            }
        }
        if o.top_degree() != (k / 2 - 1) as i32 {
            return Err(format!("k = {k}: top degree {}", o.top_degree()));
        }
    }
    Ok("k = 3..8".into())
}

fn criterion_5() -> Result<String, String> {
    let mut checked = 0;
    for k in 4..=7 {
        let o = oracle_full(k, 32).map_err(|e| e.to_string())?;
        let l = hessian_space(k, &secant_ideal(k, 0).unwrap()).unwrap();
        let mut current = l.clone();
        for i in 1..=k / 2 {
            current = current.standard_prolongation();
            let prolonged = PolySpan::new(k, &current.symmetric_polynomials(k, i + 2).unwrap());
            let oracle = o
                .components
                .iter()
                .find(|c| c.degree == i)
                .map_or(PolySpan::new(k, &[]), |c| PolySpan::new(k, &c.basis()));
            if i < k / 2 {
                let minors = PolySpan::new(k, &secant_ideal(k, i).unwrap());
                if prolonged != minors || minors != oracle {
                    return Err(format!("k = {k}, i = {i}"));
                }
                checked += 1;
            } else if !current.is_zero() || prolonged.dim() != 0 || oracle.dim() != 0 {
                return Err(format!("k = {k}, i = {i}: expected zero"));
            }
        }
    }
    Ok(format!("{checked} (k, i) pairs"))
}

fn criterion_6() -> Result<String, String> {
    for k in 3..=5 {
        let r = cross_check(k).map_err(|e| e.to_string())?;
        if !r.pass() {
            let bad: Vec<_> = r.checks.iter().filter(|c| !c.pass).map(|c| c.name.clone()).collect();
            return Err(format!("k = {k}: {bad:?}"));
        }
    }
    Ok("k = 3..5".into())
}

fn criterion_7() -> Result<String, String> {
    let k = 2;
    let p = || common::polynomial(k, 6, 3);
    let mut r = TestRunner::new(common::config("acceptance jacobi", 0x5eed_0502, 100));
    let res = r.run(&(p(), p(), p()), |(f, g, h)| {
        let j = br(&f, &br(&g, &h)).add(&br(&g, &br(&h, &f))).add(&br(&h, &br(&f, &g)));
        prop_assert!(j.is_zero());
        Ok(())
    });
    res.map_err(|e| format!("contact Jacobi: {e}"))?;

    let p = || common::polynomial(k, 4, 3);
    let mut r = TestRunner::new(common::config("acceptance homomorphism", 0x5eed_0602, 50));
    let res = r.run(&(p(), p()), |(f, g)| {
        prop_assert_eq!(to_field(&f).commutator(&to_field(&g)), to_field(&br(&f, &g)));
        Ok(())
    });
    res.map_err(|e| format!("field homomorphism: {e}"))?;

    for k in 3..=7 {
        for rr in 0..=k / 2 - 1 {
            let minors = secant_ideal(k, rr).unwrap();
            let param = (common::small_rational(), common::small_rational(), common::nonzero_rational())
                .prop_filter("nonzero pair", |(u, v, _)| !(num_traits::Zero::is_zero(u) && num_traits::Zero::is_zero(v)));
            let strat = prop::collection::vec(param, rr + 1);
            let seed = 0x5eed_0200 + (k * 10 + rr) as u64;
            let mut r = TestRunner::new(common::config(&format!("acceptance secant k={k} r={rr}"), seed, 50));
            let res = r.run(&strat, |params| {
                let xs = secant_point(k, rr, &params).unwrap();
                for m in &minors {
                    prop_assert_eq!(m.eval_x(&xs), int(0));
                }
                Ok(())
            });
            res.map_err(|e| format!("minor vanishing k = {k}, r = {rr}: {e}"))?;
        }
    }

    for k in 2..=6 {
        let r = prolong_m(k);
        if !r.assembled.check_jacobi().is_empty() {
            return Err(format!("Jacobi report nonempty for k = {k}"));
        }
        if !r.is_nondegenerate() {
            return Err(format!("degenerate component for k = {k}"));
        }
    }

    for grading in [Grading::Standard, Grading::Second] {
        let p = || common::bihomogeneous(3, 5);
        let mut r = TestRunner::new(common::config(&format!("acceptance grading {grading:?}"), 0x5eed_0700, 96));
        let res = r.run(&(p(), p()), |(f, g)| {
            let (Weight::Homogeneous(a), Weight::Homogeneous(b)) = (f.weight(grading), g.weight(grading)) else {
                return Err(TestCaseError::fail("not homogeneous"));
            };
            match br(&f, &g).weight(grading) {
                Weight::Zero => {}
                Weight::Homogeneous(c) => prop_assert_eq!(c, a + b - 2),
                Weight::Inhomogeneous => return Err(TestCaseError::fail("inhomogeneous bracket")),
            }
            Ok(())
        });
        res.map_err(|e| format!("grading additivity {grading:?}: {e}"))?;
    }
    Ok("all property suites".into())
}

fn criterion_8() -> Result<String, String> {
    let mut dims = Vec::new();
    for m in 2..=6 {
        let d = irreducible_gl2(m).map_err(|e| e.to_string())?.standard_prolongation().dim();
        dims.push(d);
        if (d == 0) != (m >= 4) {
            return Err(format!("m = {m}: prolongation dim {d}"));
        }
    }
    Ok(format!("prolongation dims for m = 2..6: {dims:?}"))
}

#[test]
fn acceptance() {
    let criteria: [(&str, Criterion); 8] = [
        ("total dimension", criterion_1),
        ("depth", criterion_2),
        ("k = 2", criterion_3),
        ("oracle components", criterion_4),
        ("triple equality", criterion_5),
        ("cross-check", criterion_6),
        ("property suites", criterion_7),
        ("gl(2) prolongation", criterion_8),
    ];
    let mut failed = 0;
    for (n, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            Err(e.downcast_ref::<String>().cloned().or(e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let secs = Duration::as_secs_f64(&t.elapsed());
        // written to the handle directly so the lines survive output capture
        let line = match outcome {
            Ok(msg) => format!("criterion {}: PASS  {name}: {msg} ({secs:.1}s)", n + 1),
            Err(msg) => {
                failed += 1;
                format!("criterion {}: FAIL  {name}: {msg} ({secs:.1}s)", n + 1)
            }
        };
        let _ = writeln!(std::io::stdout().lock(), "{line}");
    }
    assert_eq!(failed, 0, "{failed} criteria failed");
}
