//! `crystal`: build crystallizations, reduce them, compute invariants and
//! decide h-vector conditions. Every command prints JSON with sorted keys.
//!
//! Exit codes: 0 success, 1 a check came out negative, 2 usage or input
//! error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use crystal_core::{checker, constructions, homology, reduction, vectors, ColoredGraph, SimplicialPoset};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "crystal", version, about = "Crystallizations, dipole moves and h''-vectors")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a colored graph or a simplicial poset.
    #[command(subcommand)]
    Build(Build),
    /// f, h, GF(2) Betti and h'' of a graph or poset file.
    Invariants { file: PathBuf },
    /// Cancel dipoles in a colored graph.
    Reduce(ReduceArgs),
    /// Decide h-vector conditions.
    #[command(subcommand)]
    Check(Check),
    /// Render a graph (or a colorable poset) in another format.
    Export {
        file: PathBuf,
        #[arg(long, value_enum)]
        format: ExportFormat,
    },
}

#[derive(Subcommand)]
enum Build {
    /// The graph Λ(n, m) presenting S^n × S^m.
    ProductSpheres {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        /// Apply the cancellation schedule and include its certificate.
        #[arg(long)]
        reduce: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The antipodal quotient of the n-dimensional cross-polytope boundary.
    Rp {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Validate a graph or poset file and print its poset.
    FromJson { file: PathBuf },
}

#[derive(Args)]
struct ReduceArgs {
    file: PathBuf,
    #[arg(long, value_enum)]
    schedule: Schedule,
    /// Required for `--schedule murai`.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    /// Write the certificate here instead of printing it.
    #[arg(long)]
    certificate: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Schedule {
    Murai,
    Greedy,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportFormat {
    Dot,
}

#[derive(Subcommand)]
enum Check {
    SphereH {
        #[arg(long, allow_hyphen_values = true)]
        h: String,
    },
    RpH {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        h: String,
    },
    ManifoldH {
        #[arg(long)]
        d: usize,
        #[arg(long, allow_hyphen_values = true)]
        h: String,
    },
}

/// Why a command stopped.
enum Failure {
    /// A check answered "no"; the JSON is still printed.
    Negative(Value),
    Input(String),
}

impl From<crystal_core::Error> for Failure {
    fn from(e: crystal_core::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<Value, Failure>;

enum Input {
    Graph(ColoredGraph),
    Poset(SimplicialPoset),
}

fn read_input(path: &Path) -> Result<Input, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    if value.get("cells").is_some() {
        Ok(Input::Poset(SimplicialPoset::from_json_value(value)?))
    } else if value.get("edges").is_some() {
        Ok(Input::Graph(ColoredGraph::from_json_value(value)?))
    } else {
        Err(Failure::Input(format!("{}: expected a graph (\"edges\") or a poset (\"cells\")", path.display())))
    }
}

fn read_graph(path: &Path) -> Result<ColoredGraph, Failure> {
    match read_input(path)? {
        Input::Graph(g) => Ok(g),
        Input::Poset(_) => Err(Failure::Input(format!("{}: expected a colored graph", path.display()))),
    }
}

fn poset_of(input: Input) -> Result<SimplicialPoset, Failure> {
    match input {
        Input::Graph(g) => Ok(SimplicialPoset::from_graph(&g)?),
        Input::Poset(p) => Ok(p),
    }
}

fn write_json(path: &Path, value: &Value) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).expect("json renders");
    fs::write(path, text + "\n").map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn certificate_json(c: &reduction::Certificate) -> Value {
    serde_json::to_value(c).expect("certificate serializes")
}

fn emit_graph(graph: &ColoredGraph, certificate: Option<&reduction::Certificate>, out: Option<&Path>) -> Outcome {
    let mut summary = json!({ "vertices": graph.vertex_count(), "d": graph.d() });
    if let Some(c) = certificate {
        summary["certificate"] = certificate_json(c);
    }
    match out {
        Some(path) => {
            write_json(path, &graph.to_json())?;
            summary["out"] = json!(path.display().to_string());
        }
        None => summary["graph"] = graph.to_json(),
    }
    Ok(summary)
}

fn build(cmd: Build) -> Outcome {
    match cmd {
        Build::ProductSpheres { n, m, reduce, out } => {
            if reduce {
                let (g, cert) = reduction::reduce_product_spheres(n, m)?;
                emit_graph(&g, Some(&cert), out.as_deref())
            } else {
                emit_graph(&constructions::product_spheres_graph(n, m)?, None, out.as_deref())
            }
        }
        Build::Rp { n, out } => {
            let p = constructions::cross_polytope_quotient(n)?;
            match out {
                Some(path) => {
                    write_json(&path, &p.to_json())?;
                    Ok(json!({ "cells": p.cell_count(), "d": p.d(), "out": path.display().to_string() }))
                }
                None => Ok(p.to_json()),
            }
        }
        Build::FromJson { file } => {
            let input = read_input(&file)?;
            if let Input::Graph(g) = &input {
                let report = g.validate_admissible();
                if !report.is_ok() {
                    let violations: Vec<String> = report.violations.iter().map(ToString::to_string).collect();
                    return Err(Failure::Negative(json!({ "admissible": false, "violations": violations })));
                }
            }
            Ok(poset_of(input)?.to_json())
        }
    }
}

fn invariants(file: &Path) -> Outcome {
    let p = poset_of(read_input(file)?)?;
    let betti = homology::betti_gf2(&p)?;
    let h = p.h_vector();
    let hpp = homology::h_double_prime(&h, &betti)?;
    Ok(json!({
        "d": p.d(),
        "f": p.f_vector(),
        "h": h,
        "betti": betti,
        "h_double_prime": hpp,
    }))
}

fn reduce(args: ReduceArgs) -> Outcome {
    let g = read_graph(&args.file)?;
    let result = match args.schedule {
        Schedule::Murai => {
            let (Some(n), Some(m)) = (args.n, args.m) else {
                return Err(Failure::Input("--schedule murai needs --n and --m".into()));
            };
            reduction::reduce_with_murai(&g, n, m)
        }
        Schedule::Greedy => reduction::reduce_greedy(&g),
    };
    let (out, cert) = match result {
        Ok(r) => r,
        Err(e @ crystal_core::Error::NotADipole { .. }) => {
            return Err(Failure::Negative(json!({ "ok": false, "failed_condition": e.to_string() })))
        }
        Err(e) => return Err(e.into()),
    };
    let mut summary = emit_graph(&out, None, args.out.as_deref())?;
    summary["crystallization"] = json!(reduction::is_crystallization(&out));
    match &args.certificate {
        Some(path) => {
            write_json(path, &certificate_json(&cert))?;
            summary["certificate_out"] = json!(path.display().to_string());
        }
        None => summary["certificate"] = certificate_json(&cert),
    }
    Ok(summary)
}

fn check(cmd: Check) -> Outcome {
    let result = match cmd {
        Check::SphereH { h } => checker::check_sphere_h(&vectors::parse_int_list(&h)?)?,
        Check::RpH { n, h } => checker::check_rp_h(&vectors::parse_int_list(&h)?, n)?,
        Check::ManifoldH { d, h } => checker::check_manifold_h(&vectors::parse_int_list(&h)?, d)?,
    };
    if result.ok {
        Ok(result.to_json())
    } else {
        Err(Failure::Negative(result.to_json()))
    }
}

fn export(file: &Path, format: ExportFormat) -> Result<String, Failure> {
    let graph = match read_input(file)? {
        Input::Graph(g) => g,
        Input::Poset(p) => match p.proper_coloring()? {
            crystal_core::simplicial_poset::ColoringOutcome::Colored(c) => p.to_graph(&c)?,
            crystal_core::simplicial_poset::ColoringOutcome::NotColorable { .. } => {
                return Err(Failure::Input("poset has no proper coloring, so no dual graph".into()))
            }
        },
    };
    match format {
        ExportFormat::Dot => Ok(graph.to_dot()),
    }
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    use std::io::Write;
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn print(value: &Value) {
    emit(&(serde_json::to_string_pretty(value).expect("json renders") + "\n"));
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Build(b) => build(b),
        Command::Invariants { file } => invariants(&file),
        Command::Reduce(args) => reduce(args),
        Command::Check(c) => check(c),
        Command::Export { file, format } => match export(&file, format) {
            Ok(text) => {
                emit(&text);
                return ExitCode::SUCCESS;
            }
            Err(f) => Err(f),
        },
    };
    match outcome {
        Ok(value) => {
            print(&value);
            ExitCode::SUCCESS
        }
        Err(Failure::Negative(value)) => {
            print(&value);
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
