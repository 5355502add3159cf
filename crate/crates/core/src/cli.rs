//! Command-line front end. Every command goes through the public library API.
//!
//! Exit codes: 0 success, 1 a fatal MISMATCH in a verification report,
//! 2 malformed arguments or input, 3 a domain error.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::catalog::{build_catalog, Family};
use crate::error::{Error, Result};
use crate::format::{sig12, tidy_json};
use crate::graph::{read_graph, to_edge_list, GeneratorSpec, Graph};
use crate::invariants::{verify_all, InvariantReport, ModeSelection, VerificationRecord};
use crate::ops::{parse_op_list, OperationKind};
use crate::spectral::{self, MatrixKind};
use crate::tolerance::Tolerances;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "graph-energy",
    version,
    about = "Spectra, energies and walk invariants of graph operations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    /// Jacobi convergence tolerance.
    #[arg(long, default_value_t = 1e-11, global = true)]
    solver_tol: f64,

    /// Eigenvalue grouping tolerance.
    #[arg(long, default_value_t = 1e-7, global = true)]
    group_tol: f64,

    /// Absolute MATCH tolerance.
    #[arg(long, default_value_t = 1e-7, global = true)]
    match_tol: f64,

    /// Largest matrix order handed to the eigensolver.
    #[arg(long, default_value_t = 4096, global = true)]
    max_order: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Graph file (edge list or JSON).
    #[arg(long = "in", value_name = "PATH")]
    input: Option<std::path::PathBuf>,

    /// Generator spec: k:n, cycle:n, star:n, path:n, petersen.
    #[arg(long = "gen", value_name = "SPEC")]
    generator: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Emit a graph.
    Build {
        #[command(flatten)]
        source: Source,
    },
    /// Apply an operation and echo its vertex/edge contract.
    Op {
        #[command(flatten)]
        source: Source,
        /// splitting:m, shadow:m, dup:m, h1:m[:i:j], h2:m, h3:m
        #[arg(long, value_name = "OP")]
        apply: String,
    },
    /// Grouped spectrum and energy.
    Spectrum {
        #[command(flatten)]
        source: Source,
        /// adjacency, randic or laplacian.
        #[arg(long, default_value = "adjacency")]
        matrix: String,
    },
    /// Energies, walk invariants, spanning trees and integrality.
    Invariants {
        #[command(flatten)]
        source: Source,
    },
    /// Compare closed forms with the oracle on the constructed graphs.
    Verify {
        #[command(flatten)]
        source: Source,
        /// Comma-separated operation specs.
        #[arg(long, value_name = "OPS")]
        ops: String,
        /// as_printed, corrected or both.
        #[arg(long, default_value = "both")]
        mode: String,
    },
    /// Equienergetic pairs and integral graphs over a base graph.
    Catalog {
        /// duplicate-vs-shadow, shadow-randic-integral, h2-integral, h3-integral.
        #[arg(long)]
        family: String,
        /// Base graph generator spec.
        #[arg(long, value_name = "SPEC", conflicts_with = "input")]
        base: Option<String>,
        /// Base graph file.
        #[arg(long = "in", value_name = "PATH")]
        input: Option<std::path::PathBuf>,
        #[arg(long, default_value_t = 3)]
        max_m: usize,
    },
}

/// A rendered command result.
struct Report {
    json: Value,
    /// Header and rows for CSV output; `None` flattens the JSON.
    table: Option<(Vec<&'static str>, Vec<Vec<String>>)>,
    /// Human-readable form; `None` flattens the JSON.
    text: Option<String>,
    exit: i32,
}

impl Report {
    fn new(value: impl Serialize) -> Result<Self> {
        Ok(Report {
            json: serde_json::to_value(value)?,
            table: None,
            text: None,
            exit: EXIT_OK,
        })
    }
}

/// Parses `args` (including the program name) and runs one command.
/// The report goes to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{rendered}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{rendered}");
                    EXIT_PARSE
                }
            };
        }
    };

    let format = cli.format;
    match execute(cli).and_then(|report| render(&report, format).map(|s| (s, report.exit))) {
        Ok((text, code)) => match out.write_all(text.as_bytes()) {
            Ok(()) => code,
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                EXIT_PARSE
            }
        },
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_domain() {
                EXIT_DOMAIN
            } else {
                EXIT_PARSE
            }
        }
    }
}

fn tolerances(cli: &Cli) -> Result<Tolerances> {
    let tol = Tolerances {
        solver: cli.solver_tol,
        grouping: cli.group_tol,
        match_abs: cli.match_tol,
        max_order: cli.max_order,
        ..Tolerances::default()
    };
    tol.validate()?;
    Ok(tol)
}

fn load(source: &Source) -> Result<(Graph, String)> {
    match (&source.input, &source.generator) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path)?;
            Ok((read_graph(&text)?, path.display().to_string()))
        }
        (None, Some(spec)) => load_generator(spec),
        (None, None) => Err(Error::Parse("one of --in or --gen is required".into())),
    }
}

fn load_generator(spec: &str) -> Result<(Graph, String)> {
    let spec: GeneratorSpec = spec.parse()?;
    Ok((spec.build()?, spec.to_string()))
}

fn summary(g: &Graph, source: &str) -> Value {
    json!({ "order": g.order(), "size": g.size(), "source": source })
}

fn edge_rows(g: &Graph) -> Vec<Vec<String>> {
    g.edges()
        .iter()
        .map(|&(u, v)| vec![u.to_string(), v.to_string()])
        .collect()
}

fn execute(cli: Cli) -> Result<Report> {
    let tol = tolerances(&cli)?;
    match &cli.command {
        Command::Build { source } => {
            let (g, _) = load(source)?;
            let mut report = Report::new(&g)?;
            report.table = Some((vec!["u", "v"], edge_rows(&g)));
            report.text = Some(to_edge_list(&g));
            Ok(report)
        }
        Command::Op { source, apply } => {
            let (g, _) = load(source)?;
            let op: OperationKind = apply.parse()?;
            let h = op.apply(&g)?;
            let contract = json!({
                "op": op,
                "base_order": g.order(),
                "base_size": g.size(),
                "expected_order": op.expected_order(g.order()),
                "expected_size": op.expected_size(g.size()),
                "order": h.order(),
                "size": h.size(),
                "holds": h.order() == op.expected_order(g.order()) && h.size() == op.expected_size(g.size()),
            });
            let mut report = Report::new(json!({ "graph": &h, "contract": contract }))?;
            report.table = Some((vec!["u", "v"], edge_rows(&h)));
            report.text = Some(format!(
                "# {op}: order {} (expected {}), size {} (expected {})\n{}",
                h.order(),
                op.expected_order(g.order()),
                h.size(),
                op.expected_size(g.size()),
                to_edge_list(&h)
            ));
            Ok(report)
        }
        Command::Spectrum { source, matrix } => {
            let (g, name) = load(source)?;
            let kind: MatrixKind = matrix.parse()?;
            let energy = spectral::energy_with(&g, kind, &tol)?;
            let mut report = Report::new(json!({
                "graph": summary(&g, &name),
                "matrix": kind,
                "spectrum": &energy.spectrum,
                "energy": energy.value,
            }))?;
            report.table = Some((
                vec!["value", "multiplicity"],
                energy
                    .spectrum
                    .groups()
                    .iter()
                    .rev()
                    .map(|grp| vec![sig12(grp.value), grp.multiplicity.to_string()])
                    .collect(),
            ));
            report.text = Some(format!(
                "{kind} spectrum {}\nenergy {}\n",
                energy.spectrum,
                sig12(energy.value)
            ));
            Ok(report)
        }
        Command::Invariants { source } => {
            let (g, name) = load(source)?;
            let inv = InvariantReport::compute(&g, &tol)?;
            Report::new(json!({ "graph": summary(&g, &name), "invariants": inv }))
        }
        Command::Verify { source, ops, mode } => {
            let (g, name) = load(source)?;
            let ops = parse_op_list(ops)?;
            if ops.is_empty() {
                return Err(Error::Parse("--ops lists no operation".into()));
            }
            let modes: ModeSelection = mode.parse()?;
            let records = verify_all(&g, &ops, modes, &tol)?;
            verify_report(&g, &name, &records)
        }
        Command::Catalog {
            family,
            base,
            input,
            max_m,
        } => {
            let family: Family = family.parse()?;
            let (g, name) = match (input, base) {
                (Some(path), _) => load(&Source {
                    input: Some(path.clone()),
                    generator: None,
                })?,
                (None, Some(spec)) => load_generator(spec)?,
                (None, None) => {
                    return Err(Error::Parse("one of --base or --in is required".into()))
                }
            };
            let catalog = build_catalog(&g, family, *max_m, &tol)?;
            let mut report =
                Report::new(json!({ "graph": summary(&g, &name), "catalog": &catalog }))?;
            report.text = Some(catalog_text(&catalog));
            Ok(report)
        }
    }
}

fn opt(x: Option<f64>) -> String {
    x.map(sig12).unwrap_or_default()
}

fn verify_report(g: &Graph, name: &str, records: &[VerificationRecord]) -> Result<Report> {
    let mut report = Report::new(json!({ "graph": summary(g, name), "records": records }))?;
    if records.iter().any(VerificationRecord::is_fatal_mismatch) {
        report.exit = EXIT_MISMATCH;
    }
    report.table = Some((
        vec![
            "formula_id",
            "closed_form",
            "oracle",
            "abs_diff",
            "verdict",
            "note",
        ],
        records
            .iter()
            .map(|r| {
                vec![
                    r.formula_id.clone(),
                    opt(r.closed_form),
                    opt(r.oracle),
                    opt(r.abs_diff),
                    r.verdict.to_string(),
                    r.note.clone(),
                ]
            })
            .collect(),
    ));
    let width = records
        .iter()
        .map(|r| r.formula_id.len())
        .max()
        .unwrap_or(0);
    let mut text = String::new();
    for r in records {
        text.push_str(&format!(
            "{:<8} {:<width$} closed_form={} oracle={} abs_diff={}",
            r.verdict.to_string(),
            r.formula_id,
            opt(r.closed_form),
            opt(r.oracle),
            opt(r.abs_diff),
        ));
        if !r.note.is_empty() {
            text.push_str("  # ");
            text.push_str(&r.note);
        }
        text.push('\n');
    }
    report.text = Some(text);
    Ok(report)
}

fn catalog_text(c: &crate::catalog::Catalog) -> String {
    let mut text = String::new();
    for p in &c.pairs {
        text.push_str(&format!(
            "{} vs {}: energy {} / {} ({}), randic energy {} / {} ({})\n",
            p.first,
            p.second,
            sig12(p.adjacency.energy_first),
            sig12(p.adjacency.energy_second),
            if p.adjacency.equienergetic {
                "equienergetic"
            } else {
                "different"
            },
            sig12(p.randic.energy_first),
            sig12(p.randic.energy_second),
            if p.randic.equienergetic {
                "equienergetic"
            } else {
                "different"
            },
        ));
    }
    for h in &c.integral {
        text.push_str(&format!(
            "{} {}: {} {}\n",
            h.op,
            h.kind,
            if h.integral {
                "integral"
            } else {
                "not integral"
            },
            h.spectrum
        ));
    }
    text
}

/// `(dotted.path, scalar)` pairs in key order.
fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let join = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(map) => map.iter().for_each(|(k, x)| flatten(&join(k), x, out)),
        Value::Array(items) => items
            .iter()
            .enumerate()
            .for_each(|(i, x)| flatten(&join(&i.to_string()), x, out)),
        Value::Null => out.push((prefix.to_string(), String::new())),
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        Value::Number(n) => out.push((
            prefix.to_string(),
            n.as_f64()
                .filter(|_| n.is_f64())
                .map(sig12)
                .unwrap_or_else(|| n.to_string()),
        )),
        Value::Bool(b) => out.push((prefix.to_string(), b.to_string())),
    }
}

fn csv_string(header: &[&str], rows: &[Vec<String>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(header).map_err(io)?;
    for row in rows {
        w.write_record(row).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
}

fn render(report: &Report, format: Format) -> Result<String> {
    let mut json = report.json.clone();
    tidy_json(&mut json);
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(&json)? + "\n"),
        Format::Csv => match &report.table {
            Some((header, rows)) => csv_string(header, rows),
            None => {
                let mut pairs = Vec::new();
                flatten("", &json, &mut pairs);
                let rows: Vec<Vec<String>> = pairs.into_iter().map(|(k, v)| vec![k, v]).collect();
                csv_string(&["key", "value"], &rows)
            }
        },
        Format::Text => Ok(match &report.text {
            Some(t) => t.clone(),
            None => {
                let mut pairs = Vec::new();
                flatten("", &json, &mut pairs);
                pairs
                    .into_iter()
                    .map(|(k, v)| format!("{k}: {v}\n"))
                    .collect()
            }
        }),
    }
}
