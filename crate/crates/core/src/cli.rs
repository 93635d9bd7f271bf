//! Command-line interface.
//!
//! Every command prints one document in the chosen format. JSON output is an
//! object with `params`, `result` and `meta`. Exit codes: 0 on success, 1 on
//! a verification failure or internal error, 2 on bad usage or parameters.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::circuit::enumerate_stable_circuits;
use crate::ehrhart::{is_gorenstein, stable_delta_vector, GorensteinReport};
use crate::error::Error;
use crate::hrep::{facets, FacetReport};
use crate::stable::{characteristic_vector, enumerate_stable_subsets};
use crate::verify::{run_verify, VerifyOptions, VerifyReport};

pub const THREADS_ENV: &str = "STABHULL_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "stabhull",
    version,
    about = "Exact computations on r-stable hypersimplices"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Args, Serialize)]
pub struct Triple {
    /// Size of the cycle [n]
    #[arg(long)]
    pub n: usize,
    /// Subset size
    #[arg(long)]
    pub k: usize,
    /// Stability parameter
    #[arg(long, default_value_t = 1)]
    pub r: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Plain,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write to FILE instead of stdout
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the r-stable characteristic vectors
    Vertices {
        #[command(flatten)]
        params: Triple,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Facet inequalities (closed form, simplex case, or empirical)
    Facets {
        #[command(flatten)]
        params: Triple,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Maximal cells of the restricted circuit triangulation
    Triangulate {
        #[command(flatten)]
        params: Triple,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Ehrhart δ-vector of the projected polytope
    Ehrhart {
        #[command(flatten)]
        params: Triple,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Gorenstein report
    Gorenstein {
        #[command(flatten)]
        params: Triple,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Cross-check every closed form against the oracles on a grid
    Verify {
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        /// Largest n for the circuit enumeration checks
        #[arg(long, default_value_t = 7)]
        max_circuit_n: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
}

impl Command {
    fn output(&self) -> &OutputArgs {
        match self {
            Command::Vertices { output, .. }
            | Command::Facets { output, .. }
            | Command::Triangulate { output, .. }
            | Command::Ehrhart { output, .. }
            | Command::Gorenstein { output, .. }
            | Command::Verify { output, .. } => output,
        }
    }
}

/// Rendered output and the exit code it implies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub code: i32,
}

fn meta() -> Value {
    json!({
        "tool": "stabhull",
        "version": env!("CARGO_PKG_VERSION"),
        "arithmetic": "exact: num-bigint integers, num-rational rationals, checked i128 in the facet oracle",
    })
}

fn envelope(params: Value, result: Value) -> String {
    let doc = json!({ "params": params, "result": result, "meta": meta() });
    let mut s = serde_json::to_string_pretty(&doc).expect("JSON values serialize");
    s.push('\n');
    s
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

fn csv_doc(header: &[String], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("CSV is UTF-8")
}

fn join<T: ToString>(xs: &[T], sep: &str) -> String {
    xs.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(sep)
}

fn ok(text: String) -> Output {
    Output { text, code: 0 }
}

/// Run a parsed command.
pub fn execute(command: &Command) -> Result<Output, Error> {
    let format = command.output().format;
    match command {
        Command::Vertices { params, .. } => vertices(params, format),
        Command::Facets { params, .. } => facets_cmd(params, format),
        Command::Triangulate { params, .. } => triangulate(params, format),
        Command::Ehrhart { params, .. } => ehrhart(params, format),
        Command::Gorenstein { params, .. } => gorenstein(params, format),
        Command::Verify {
            max_n,
            max_circuit_n,
            ..
        } => {
            if *max_n < 4 {
                return Err(Error::InvalidArgument("--max-n must be at least 4".into()));
            }
            let report = run_verify(VerifyOptions {
                max_n: *max_n,
                max_circuit_n: *max_circuit_n,
            });
            let code = if report.passed { 0 } else { 1 };
            Ok(Output {
                text: render_verify(&report, format),
                code,
            })
        }
    }
}

fn vertices(p: &Triple, format: Format) -> Result<Output, Error> {
    let subsets = enumerate_stable_subsets(p.n, p.k, p.r)?;
    let text = match format {
        Format::Json => {
            let list: Vec<Value> = subsets
                .iter()
                .map(|s| json!({ "subset": s.elements(), "vector": characteristic_vector(s) }))
                .collect();
            envelope(
                to_value(p),
                json!({ "count": subsets.len(), "vertices": list }),
            )
        }
        Format::Csv => {
            let header: Vec<String> = (1..=p.n).map(|i| format!("x{i}")).collect();
            let rows: Vec<Vec<String>> = subsets
                .iter()
                .map(|s| {
                    characteristic_vector(s)
                        .0
                        .iter()
                        .map(ToString::to_string)
                        .collect()
                })
                .collect();
            csv_doc(&header, &rows)
        }
        Format::Plain => subsets
            .iter()
            .map(|s| join(&characteristic_vector(s).0, " ") + "\n")
            .collect(),
    };
    Ok(ok(text))
}

fn facets_cmd(p: &Triple, format: Format) -> Result<Output, Error> {
    let rep: FacetReport = facets(p.n, p.k, p.r)?;
    let poly = &rep.polytope;
    let text = match format {
        Format::Json => envelope(
            to_value(p),
            json!({
                "source": rep.source,
                "empirical": rep.empirical,
                "count": poly.halfspaces().len(),
                "equations": poly.equations(),
                "halfspaces": poly.halfspaces(),
            }),
        ),
        Format::Csv => {
            let mut header: Vec<String> = vec!["kind".into()];
            header.extend((1..=p.n).map(|i| format!("a{i}")));
            header.push("rhs".into());
            let mut rows = Vec::new();
            for e in poly.equations() {
                let mut row = vec!["eq".to_string()];
                row.extend(e.normal().iter().map(ToString::to_string));
                row.push(e.value().to_string());
                rows.push(row);
            }
            for h in poly.halfspaces() {
                let mut row = vec!["le".to_string()];
                row.extend(h.normal().iter().map(ToString::to_string));
                row.push(h.offset().to_string());
                rows.push(row);
            }
            csv_doc(&header, &rows)
        }
        Format::Plain => {
            let mut s = String::new();
            if rep.empirical {
                s.push_str("# empirical: computed by the oracle, no closed form\n");
            }
            for e in poly.equations() {
                let _ = writeln!(s, "{e}");
            }
            for h in poly.halfspaces() {
                let _ = writeln!(s, "{h}");
            }
            s
        }
    };
    Ok(ok(text))
}

fn triangulate(p: &Triple, format: Format) -> Result<Output, Error> {
    enumerate_stable_subsets(p.n, p.k, p.r)?;
    let circuits = enumerate_stable_circuits(p.n, p.k, p.r)?;
    let text = match format {
        Format::Json => envelope(
            to_value(p),
            json!({ "count": circuits.len(), "circuits": circuits }),
        ),
        Format::Csv => {
            let header: Vec<String> = (1..=p.n).map(|i| format!("w{i}")).collect();
            let rows: Vec<Vec<String>> = circuits
                .iter()
                .map(|c| c.labels().iter().map(ToString::to_string).collect())
                .collect();
            csv_doc(&header, &rows)
        }
        Format::Plain => circuits
            .iter()
            .map(|c| join(c.labels(), " ") + "\n")
            .collect(),
    };
    Ok(ok(text))
}

fn ehrhart(p: &Triple, format: Format) -> Result<Output, Error> {
    let d = stable_delta_vector(p.n, p.k, p.r)?;
    // a lattice polytope is Gorenstein iff its δ-vector is palindromic
    let gorenstein = d.is_palindromic();
    let text = match format {
        Format::Json => envelope(
            to_value(p),
            json!({
                "delta": d,
                "normalized_volume": d.sum(),
                "palindromic": d.is_palindromic(),
                "unimodal": d.is_unimodal(),
                "gorenstein": gorenstein,
            }),
        ),
        Format::Csv => {
            let mut header: Vec<String> = ["n", "k", "r", "d"].map(String::from).to_vec();
            header.extend((0..=d.dimension()).map(|i| format!("delta_{i}")));
            header.extend(["q", "gorenstein", "unimodal"].map(String::from));
            let mut row = vec![
                p.n.to_string(),
                p.k.to_string(),
                p.r.to_string(),
                d.dimension().to_string(),
            ];
            row.extend(d.coefficients().iter().map(ToString::to_string));
            row.extend([
                d.codegree().to_string(),
                gorenstein.to_string(),
                d.is_unimodal().to_string(),
            ]);
            csv_doc(&header, &[row])
        }
        Format::Plain => format!(
            "delta = ({})\ndegree = {}\ncodegree = {}\nunimodal = {}\npalindromic = {}\n",
            join(d.coefficients(), ", "),
            d.degree(),
            d.codegree(),
            d.is_unimodal(),
            d.is_palindromic()
        ),
    };
    Ok(ok(text))
}

fn gorenstein(p: &Triple, format: Format) -> Result<Output, Error> {
    let g: GorensteinReport = is_gorenstein(p.n, p.k, p.r)?;
    let second = g
        .second_interior_point
        .as_ref()
        .map(|w| join(&w.0, " "))
        .unwrap_or_default();
    let text = match format {
        Format::Json => envelope(to_value(p), to_value(&g)),
        Format::Csv => {
            let header = [
                "n",
                "k",
                "r",
                "route",
                "codegree",
                "alpha",
                "interior_point",
                "second_interior_point",
                "interior_lattice_points",
                "reflexive",
                "closed_form_verdict",
                "gorenstein",
                "palindromic",
                "unimodal",
            ]
            .map(String::from);
            let route = to_value(&g.route).as_str().unwrap_or_default().to_string();
            let row = vec![
                g.n.to_string(),
                g.k.to_string(),
                g.r.to_string(),
                route,
                g.codegree.to_string(),
                g.alpha.map(|a| a.to_string()).unwrap_or_default(),
                join(&g.interior_point.0, " "),
                second,
                g.interior_lattice_points.to_string(),
                g.reflexive.to_string(),
                g.closed_form_verdict.to_string(),
                g.gorenstein.to_string(),
                g.palindromic.to_string(),
                g.unimodal.to_string(),
            ];
            csv_doc(&header, &[row])
        }
        Format::Plain => {
            let mut s = String::new();
            let _ = writeln!(s, "gorenstein = {}", g.gorenstein);
            let _ = writeln!(s, "closed form (n = kr + k) = {}", g.closed_form_verdict);
            let _ = writeln!(s, "reflexive = {}", g.reflexive);
            let _ = writeln!(s, "codegree = {}", g.codegree);
            if let Some(a) = g.alpha {
                let _ = writeln!(s, "alpha = {a}");
            }
            let _ = writeln!(s, "interior point = ({})", join(&g.interior_point.0, ", "));
            if !second.is_empty() {
                let _ = writeln!(s, "second interior point = ({})", second.replace(' ', ", "));
            }
            let _ = writeln!(
                s,
                "interior lattice points of qP = {}",
                g.interior_lattice_points
            );
            let _ = writeln!(s, "delta = ({})", join(g.delta.coefficients(), ", "));
            let _ = writeln!(s, "palindromic = {}", g.palindromic);
            let _ = writeln!(s, "unimodal = {}", g.unimodal);
            s
        }
    };
    Ok(ok(text))
}

fn render_verify(report: &VerifyReport, format: Format) -> String {
    let cells = report.cells.iter().chain(&report.simplex_cells);
    match format {
        Format::Json => envelope(
            json!({ "max_n": report.max_n, "max_circuit_n": report.max_circuit_n }),
            to_value(report),
        ),
        Format::Csv => {
            let header = ["n", "k", "r", "check", "passed", "detail"].map(String::from);
            let rows: Vec<Vec<String>> = cells
                .flat_map(|c| {
                    c.checks.iter().map(move |ch| {
                        vec![
                            c.n.to_string(),
                            c.k.to_string(),
                            c.r.to_string(),
                            ch.name.to_string(),
                            ch.passed.to_string(),
                            ch.detail.clone(),
                        ]
                    })
                })
                .collect();
            csv_doc(&header, &rows)
        }
        Format::Plain => {
            let mut s = String::new();
            for c in cells {
                for ch in &c.checks {
                    let status = if ch.passed { "PASS" } else { "FAIL" };
                    let _ = writeln!(
                        s,
                        "({},{},{}) {:<22} {status}  {}",
                        c.n, c.k, c.r, ch.name, ch.detail
                    );
                }
            }
            let _ = writeln!(
                s,
                "checks: {}, failures: {}",
                report.checks_run, report.failures
            );
            s
        }
    }
}

fn configure_threads() -> Result<(), Error> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = raw.trim().parse().ok().filter(|&t| t > 0).ok_or_else(|| {
        Error::InvalidArgument(format!(
            "{THREADS_ENV} must be a positive integer, got {raw:?}"
        ))
    })?;
    // a second call in the same process keeps the existing pool
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global();
    Ok(())
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::InvalidArgument(_)
        | Error::UnsupportedParameters { .. }
        | Error::EmptyFamily { .. } => 2,
        _ => 1,
    }
}

/// Parse arguments, run, write the output; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return 2;
    }
    let out = match execute(&cli.command) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code_for(&e);
        }
    };
    match &cli.command.output().out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &out.text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return 1;
            }
        }
        None => print!("{}", out.text),
    }
    if out.code != 0 {
        eprintln!("verification failed");
    }
    out.code
}
