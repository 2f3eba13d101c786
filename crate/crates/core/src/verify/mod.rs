//! Dimension and depth checks for the family `m(k)`, the cross-check between
//! the abstract engine and the polynomial oracle, and report rendering.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;

use crate::contact_poly::oracle_full;
use crate::error::{Error, Result};
use crate::paper_models::{binomial, make_m};
use crate::prolongation::{tanaka, ProlongationResult, TanakaOptions, DEFAULT_MAX_DEGREE};

/// Fibonacci numbers with `Fib_1 = Fib_2 = 1`.
#[derive(Clone, Debug)]
pub struct FibTable {
    values: Vec<u128>,
}

impl FibTable {
    /// Table up to `Fib_n`; `n <= 186` fits in 128 bits.
    pub fn new(n: usize) -> Self {
        assert!(n <= 186, "Fib_{n} overflows 128 bits");
        let mut values = vec![0u128, 1, 1];
        while values.len() <= n {
            let l = values.len();
            values.push(values[l - 1] + values[l - 2]);
        }
        Self { values }
    }

    pub fn get(&self, n: usize) -> u128 {
        self.values[n]
    }

    /// `Σ_{i=0}^{⌊k/2⌋+1} C(k+2-i, i)`: compositions of `k+2` into 1s and 2s.
    pub fn composition_count(k: usize) -> u128 {
        (0..=k / 2 + 1).map(|i| binomial(k + 2 - i, i) as u128).sum()
    }
}

pub fn expected_total(k: usize) -> usize {
    FibTable::new(k + 3).get(k + 3) as usize + k + 6
}

pub fn expected_nu(k: usize) -> i32 {
    ((k + 1) * (k + 1) / 4) as i32 - 2
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: i64,
    pub computed: i64,
    pub pass: bool,
}

impl Check {
    fn new(name: &str, expected: i64, computed: i64) -> Self {
        Self {
            name: name.to_string(),
            expected,
            computed,
            pass: expected == computed,
        }
    }
}

fn require_k(k: usize) -> Result<()> {
    if k < 3 {
        return Err(Error::InvalidParameter(format!("formula checks need k >= 3, got {k}")));
    }
    Ok(())
}

fn options() -> TanakaOptions {
    TanakaOptions {
        max_degree: max_degree_from_env(),
        ..Default::default()
    }
}

/// Cap from `PROLONG_MAX_DEGREE`, or the default.
pub fn max_degree_from_env() -> usize {
    std::env::var("PROLONG_MAX_DEGREE")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_DEGREE)
}

fn prolong_m(k: usize) -> Result<ProlongationResult> {
    tanaka(&make_m(k)?, None, &options())
}

/// Total dimension of the prolongation of `m(k)` against `Fib_{k+3}+k+6`.
pub fn check_fibonacci(k: usize) -> Result<Check> {
    require_k(k)?;
    let r = prolong_m(k)?;
    Ok(fib_check(k, &r))
}

/// Top degree of the prolongation of `m(k)` against `⌊(k+1)²/4⌋ - 2`.
pub fn check_depth(k: usize) -> Result<Check> {
    require_k(k)?;
    let r = prolong_m(k)?;
    Ok(depth_check(k, &r))
}

fn fib_check(k: usize, r: &ProlongationResult) -> Check {
    Check::new("total_dim", expected_total(k) as i64, r.total_dim() as i64)
}

fn depth_check(k: usize, r: &ProlongationResult) -> Check {
    Check::new("nu", expected_nu(k) as i64, r.nu().map_or(-1, i64::from))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Tanaka,
    Oracle,
    Both,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub k: usize,
    pub method: Method,
    /// Engine dimensions by degree of `m(k)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub engine_dims: Option<BTreeMap<i32, usize>>,
    /// Oracle dimensions by second degree.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_dims: Option<BTreeMap<i32, usize>>,
    /// Oracle dimensions by standard (Heisenberg) degree.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_standard_dims: Option<BTreeMap<i32, usize>>,
    pub total_dim: usize,
    pub nu: Option<i32>,
    pub checks: Vec<Check>,
    pub timings: BTreeMap<String, f64>,
}

impl Report {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

fn nonzero(dims: Vec<(i32, usize)>) -> BTreeMap<i32, usize> {
    dims.into_iter().filter(|(_, d)| *d > 0).collect()
}

/// Formula checks on the engine alone.
pub fn verify_k(k: usize) -> Result<Report> {
    require_k(k)?;
    let t = Instant::now();
    let r = prolong_m(k)?;
    let secs = t.elapsed().as_secs_f64();
    Ok(Report {
        k,
        method: Method::Tanaka,
        engine_dims: Some(nonzero(r.dims())),
        oracle_dims: None,
        oracle_standard_dims: None,
        total_dim: r.total_dim(),
        nu: r.nu(),
        checks: vec![fib_check(k, &r), depth_check(k, &r)],
        timings: [("tanaka".to_string(), secs)].into(),
    })
}

/// Oracle alone: totals, depth in the second grading and agreement of every
/// positive component with the catalecticant minors.
pub fn oracle_report(k: usize, cap: usize) -> Result<Report> {
    require_k(k)?;
    let t = Instant::now();
    let o = oracle_full(k, cap)?;
    let secs = t.elapsed().as_secs_f64();
    let by_second = o.dims_by_second();
    let nu = by_second.keys().next_back().copied();
    let mut checks = vec![
        Check::new("total_dim", expected_total(k) as i64, o.total_dim() as i64),
        Check::new("nu", expected_nu(k) as i64, nu.map_or(-1, i64::from)),
    ];
    for (i, ok) in o.secant_agreement()? {
        checks.push(Check::new(&format!("secant_component_{i}"), 1, ok as i64));
    }
    Ok(Report {
        k,
        method: Method::Oracle,
        engine_dims: None,
        oracle_dims: Some(by_second),
        oracle_standard_dims: Some(nonzero(o.dims())),
        total_dim: o.total_dim(),
        nu,
        checks,
        timings: [("oracle".to_string(), secs)].into(),
    })
}

/// Engine on `m(k)` against the oracle on `n ⊕ s`: equal totals and equal
/// per-degree tables once the oracle is regraded by the second grading.
pub fn cross_check(k: usize) -> Result<Report> {
    require_k(k)?;
    let t = Instant::now();
    let r = prolong_m(k)?;
    let t_engine = t.elapsed().as_secs_f64();
    let t = Instant::now();
    let o = oracle_full(k, max_degree_from_env())?;
    let t_oracle = t.elapsed().as_secs_f64();
    let engine = nonzero(r.dims());
    let oracle = o.dims_by_second();
    let mut checks = vec![
        fib_check(k, &r),
        depth_check(k, &r),
        Check::new("oracle_total", r.total_dim() as i64, o.total_dim() as i64),
        Check::new("marginals_equal", 1, (engine == oracle) as i64),
    ];
    for (i, ok) in o.secant_agreement()? {
        checks.push(Check::new(&format!("secant_component_{i}"), 1, ok as i64));
    }
    Ok(Report {
        k,
        method: Method::Both,
        engine_dims: Some(engine),
        oracle_dims: Some(oracle),
        oracle_standard_dims: Some(nonzero(o.dims())),
        total_dim: r.total_dim(),
        nu: r.nu(),
        checks,
        timings: [("tanaka".to_string(), t_engine), ("oracle".to_string(), t_oracle)].into(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Table,
    Json,
    Csv,
}

fn dims_line(d: &BTreeMap<i32, usize>) -> String {
    d.iter().map(|(g, n)| format!("{g}:{n}")).collect::<Vec<_>>().join(" ")
}

/// Renders reports in order of `k`.
pub fn render(reports: &[Report], format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Json => {
            out = serde_json::to_string_pretty(reports).expect("serializable");
            out.push('\n');
        }
        Format::Csv => {
            out.push_str("k,method,check,expected,computed,pass\n");
            for r in reports {
                let m = serde_json::to_value(r.method).expect("serializable");
                for c in &r.checks {
                    let _ = writeln!(
                        out,
                        "{},{},{},{},{},{}",
                        r.k,
                        m.as_str().unwrap_or_default(),
                        c.name,
                        c.expected,
                        c.computed,
                        c.pass
                    );
                }
            }
        }
        Format::Table => {
            for r in reports {
                let _ = writeln!(out, "k = {}  total = {}  nu = {}", r.k, r.total_dim, r.nu.map_or("-".into(), |n| n.to_string()));
                if let Some(d) = &r.engine_dims {
                    let _ = writeln!(out, "  engine   {}", dims_line(d));
                }
                if let Some(d) = &r.oracle_dims {
                    let _ = writeln!(out, "  oracle   {}", dims_line(d));
                }
                for c in &r.checks {
                    let _ = writeln!(
                        out,
                        "  {:<22} expected {:>6}  computed {:>6}  {}",
                        c.name,
                        c.expected,
                        c.computed,
                        if c.pass { "PASS" } else { "FAIL" }
                    );
                }
            }
        }
    }
    out
}
