use std::fmt::Write as _;
use std::fs;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

use prolong_core::contact_poly::oracle_full;
use prolong_core::paper_models::{make_gprime, make_heisenberg, make_m, make_s};
use prolong_core::prolongation::{tanaka, tanaka_nonpositive, SolveMode, TanakaOptions};
use prolong_core::verify::{self, max_degree_from_env, Report};
use prolong_core::{Error, GradedAlgebra};

/// Above this `k` the exact coefficients grow enough to make runs slow.
const LARGE_K: usize = 7;

#[derive(Parser)]
#[command(name = "prolong", version, about = "Exact Tanaka prolongation of graded nilpotent Lie algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    M,
    Gprime,
    Heisenberg,
    Ns,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
    Poly,
}

#[derive(Subcommand)]
enum Command {
    /// Emit one of the built-in algebras as JSON.
    Model {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        k: usize,
        /// Output file; stdout if omitted.
        #[arg(long)]
        emit: Option<PathBuf>,
        /// `json` (default) or, for `ns`, `poly` to list the polynomial images.
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Prolong an algebra read from a JSON file. Nonpositive inputs keep
    /// their degree-zero part fixed.
    Tanaka {
        #[arg(long)]
        input: PathBuf,
        /// Defaults to PROLONG_MAX_DEGREE, then 64.
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        /// Solve for maps on every negative component, not only degree -1.
        #[arg(long)]
        full: bool,
    },
    /// Contact-polynomial prolongation of `n ⊕ s`.
    Oracle {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Dimension and depth formulas for `m(k)`.
    Verify {
        /// A single value or an inclusive range `a..b`.
        #[arg(long, default_value = "3..6")]
        k: String,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        /// Permit k above 7.
        #[arg(long)]
        allow_large: bool,
    },
    /// Engine against oracle, per degree and in total.
    CrossCheck {
        #[arg(long, default_value = "3..5")]
        k: String,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        #[arg(long)]
        allow_large: bool,
    },
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_)
            | Error::Json(_)
            | Error::Io(_)
            | Error::InvalidParameter(_)
            | Error::DuplicateName(_)
            | Error::UnknownName(_)
            | Error::Grading { .. }
            | Error::SelfBracket(_)
            | Error::NotFundamental
            | Error::NonNegativeDegree(_)
            | Error::Jacobi(..) => Failure::Usage(e.to_string()),
            _ => Failure::Check(e.to_string()),
        }
    }
}

type Outcome = std::result::Result<bool, Failure>;

fn parse_range(s: &str) -> std::result::Result<RangeInclusive<usize>, Failure> {
    let bad = || Failure::Usage(format!("bad k range `{s}`, expected N or A..B"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a, b.trim_start_matches('=')),
        None => (s, s),
    };
    let a: usize = a.trim().parse().map_err(|_| bad())?;
    let b: usize = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok(a..=b)
}

fn check_range(range: &RangeInclusive<usize>, allow_large: bool) -> std::result::Result<(), Failure> {
    if *range.start() < 3 {
        return Err(Failure::Usage("formula checks need k >= 3".into()));
    }
    if *range.end() > LARGE_K {
        if !allow_large {
            return Err(Failure::Usage(format!("k > {LARGE_K} needs --allow-large")));
        }
        eprintln!("warning: k > {LARGE_K}; exact coefficients grow quickly and runs may take a long time");
    }
    Ok(())
}

fn report_format(f: Format) -> std::result::Result<verify::Format, Failure> {
    match f {
        Format::Table => Ok(verify::Format::Table),
        Format::Json => Ok(verify::Format::Json),
        Format::Csv => Ok(verify::Format::Csv),
        Format::Poly => Err(Failure::Usage("`poly` applies to polynomial output only".into())),
    }
}

fn run_reports(
    k: &str,
    format: Format,
    allow_large: bool,
    f: impl Fn(usize) -> prolong_core::Result<Report> + Sync,
) -> Outcome {
    let range = parse_range(k)?;
    check_range(&range, allow_large)?;
    let fmt = report_format(format)?;
    let reports: Vec<Report> = range.into_par_iter().map(&f).collect::<prolong_core::Result<_>>()?;
    print!("{}", verify::render(&reports, fmt));
    Ok(reports.iter().all(Report::pass))
}

fn model(family: Family, k: usize, emit: Option<PathBuf>, format: Format) -> Outcome {
    let text = match (family, format) {
        (Family::Ns, Format::Poly) => {
            let ns = make_s(k)?;
            let mut out = String::new();
            for (b, p) in ns.algebra.basis().iter().zip(&ns.images) {
                let _ = writeln!(out, "{}\t{}\t{}", b.name, b.degree, p);
            }
            out
        }
        (_, Format::Json) => {
            let alg: GradedAlgebra = match family {
                Family::M => make_m(k)?,
                Family::Gprime => make_gprime(k)?,
                Family::Heisenberg => make_heisenberg(k)?.0,
                Family::Ns => make_s(k)?.algebra,
            };
            let mut s = alg.to_json();
            s.push('\n');
            s
        }
        _ => return Err(Failure::Usage("model supports --format json, or poly with --family ns".into())),
    };
    match emit {
        Some(path) => fs::write(&path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    Ok(true)
}

fn tanaka_cmd(input: PathBuf, max_degree: Option<usize>, format: Format, full: bool) -> Outcome {
    let text = fs::read_to_string(&input).map_err(|e| Failure::Usage(format!("{}: {e}", input.display())))?;
    let alg = GradedAlgebra::from_json(&text)?;
    let options = TanakaOptions {
        max_degree: max_degree.unwrap_or_else(max_degree_from_env),
        mode: if full { SolveMode::Full } else { SolveMode::Reduced },
    };
    let r = if alg.basis().iter().any(|b| b.degree == 0) {
        tanaka_nonpositive(&alg, &options)?
    } else {
        tanaka(&alg, None, &options)?
    };
    let terminated = serde_json::to_value(r.terminated).expect("serializable");
    let terminated = terminated.as_str().unwrap_or_default();
    match format {
        Format::Json => println!("{}", r.to_json()),
        Format::Csv => {
            println!("degree,dim");
            for (d, n) in r.dims() {
                println!("{d},{n}");
            }
        }
        Format::Table => {
            println!("degree  dim");
            for (d, n) in r.dims() {
                println!("{d:>6}  {n}");
            }
            println!("total {}  nu {}  {terminated}", r.total_dim(), r.nu().map_or("-".into(), |n| n.to_string()));
        }
        Format::Poly => return Err(Failure::Usage("tanaka has no polynomial output".into())),
    }
    Ok(true)
}

fn oracle_cmd(k: usize, max_degree: Option<usize>, format: Format) -> Outcome {
    let o = oracle_full(k, max_degree.unwrap_or_else(max_degree_from_env))?;
    let agreement = o.secant_agreement()?;
    let ok = agreement.iter().all(|(_, a)| *a);
    match format {
        Format::Table => {
            println!("degree  dim");
            for (d, n) in o.dims() {
                println!("{d:>6}  {n}");
            }
            println!("total {}", o.total_dim());
            println!("second grading  {}", dims_line(o.dims_by_second().into_iter()));
            for (i, a) in &agreement {
                println!("component {i} matches catalecticant minors: {}", if *a { "yes" } else { "NO" });
            }
        }
        Format::Csv => {
            println!("degree,second_degree,dim");
            for ((s, t), n) in o.bidegree_table() {
                println!("{s},{t},{n}");
            }
        }
        Format::Json => {
            let comps: Vec<_> = o
                .components
                .iter()
                .map(|c| {
                    json!({
                        "degree": c.degree,
                        "dim": c.dim(),
                        "basis": c.basis().iter().map(|p| p.to_json_value()).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let dims: serde_json::Map<String, serde_json::Value> =
                o.dims().into_iter().map(|(d, n)| (d.to_string(), json!(n))).collect();
            let doc = json!({
                "k": k,
                "dims": dims,
                "total": o.total_dim(),
                "components": comps,
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
        }
        Format::Poly => {
            for c in &o.components {
                println!("# degree {} dim {}", c.degree, c.dim());
                for p in c.basis() {
                    println!("{p}");
                }
            }
        }
    }
    Ok(ok)
}

fn dims_line(it: impl Iterator<Item = (i32, usize)>) -> String {
    it.map(|(g, n)| format!("{g}:{n}")).collect::<Vec<_>>().join(" ")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Model { family, k, emit, format } => model(family, k, emit, format),
        Command::Tanaka {
            input,
            max_degree,
            format,
            full,
        } => tanaka_cmd(input, max_degree, format, full),
        Command::Oracle { k, max_degree, format } => oracle_cmd(k, max_degree, format),
        Command::Verify { k, format, allow_large } => run_reports(&k, format, allow_large, verify::verify_k),
        Command::CrossCheck { k, format, allow_large } => run_reports(&k, format, allow_large, verify::cross_check),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
