//! The `cozero` command line: argument parsing, the four subcommands and
//! their renderers. `main.rs` only forwards the process arguments to
//! [`run_from_args`] and writes the result.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cozero::families::{self, check_tables};
use cozero::spectrum::{self, compare_multisets};
use cozero::{
    CozeroGraph, Error as CoreError, IdealLattice, PolyElement, RingContext, SpectrumMultiset,
    DEFAULT_MAX_N, DEFAULT_TOL,
};
use serde::{Deserialize, Serialize};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_MISMATCH: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "cozero",
    version,
    about = "Laplacian spectra of cozero-divisor graphs of Z_n[x]/(x^2)"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Largest modulus that may be enumerated.
    #[arg(long, global = true, env = "COZERO_MAX_N", default_value_t = DEFAULT_MAX_N)]
    pub max_n: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Laplacian spectrum of the cozero-divisor graph.
    Spectrum(SpectrumArgs),
    /// Reduced graph: one vertex per principal ideal, weighted by generators.
    Reduced(ExportArgs),
    /// The full cozero-divisor graph.
    Graph(ExportArgs),
    /// Cross-check every route for a range of moduli.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Structural,
    Oracle,
    #[value(name = "closed_form")]
    ClosedForm,
    All,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Structural => "structural",
            Method::Oracle => "oracle",
            Method::ClosedForm => "closed_form",
            Method::All => "all",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Dot,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    /// Modulus n.
    pub n: u64,
    #[arg(long, value_enum, default_value_t = Method::Structural)]
    pub method: Method,
    /// Eigenvalue tolerance.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    /// text, json or csv.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    /// Modulus n.
    pub n: u64,
    /// text, json or dot.
    #[arg(long, value_enum, default_value_t = Format::Dot)]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 2)]
    pub from: u64,
    #[arg(long)]
    pub to: u64,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    /// text, csv or json.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// Validated settings of a single-modulus run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub n: u64,
    pub method: Method,
    pub tol: f64,
    pub max_n: u64,
    pub output_format: Format,
    pub output_path: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(
        n: u64,
        method: Method,
        tol: f64,
        max_n: u64,
        format: Format,
    ) -> Result<Self, CliError> {
        if n < 2 {
            return Err(CliError::Usage(format!("n must be at least 2, got {n}")));
        }
        if n > max_n {
            return Err(CoreError::CapExceeded { n, max_n }.into());
        }
        check_tol(tol)?;
        Ok(Self {
            n,
            method,
            tol,
            max_n,
            output_format: format,
            output_path: None,
        })
    }

    fn ctx(&self) -> Result<RingContext, CliError> {
        Ok(RingContext::with_cap(self.n, self.max_n)?)
    }
}

fn check_tol(tol: f64) -> Result<(), CliError> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(CliError::Usage(format!(
            "tolerance must be positive, got {tol}"
        )))
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(CoreError),
    Io(std::io::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

/// What a command produced: the rendered body, diagnostics and exit code.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_from_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome {
                    code,
                    stderr: text,
                    ..Outcome::default()
                }
            } else {
                Outcome {
                    code,
                    stdout: text,
                    ..Outcome::default()
                }
            }
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let result = match &cli.command {
        Command::Spectrum(a) => cmd_spectrum(a, cli.max_n),
        Command::Reduced(a) => cmd_reduced(a, cli.max_n),
        Command::Graph(a) => cmd_graph(a, cli.max_n),
        Command::Verify(a) => cmd_verify(a, cli.max_n),
    };
    let (output, produced) = match result {
        Ok(pair) => pair,
        Err(e) => {
            return Outcome {
                code: EXIT_ERROR,
                stderr: format!("error: {e}\n"),
                ..Outcome::default()
            }
        }
    };
    match output {
        Some(path) => match std::fs::write(&path, &produced.stdout) {
            Ok(()) => Outcome {
                stdout: String::new(),
                ..produced
            },
            Err(e) => Outcome {
                code: EXIT_ERROR,
                stderr: format!("error: cannot write {}: {e}\n", path.display()),
                ..Outcome::default()
            },
        },
        None => produced,
    }
}

type CmdResult = Result<(Option<PathBuf>, Outcome), CliError>;

fn unsupported_format(cmd: &str, format: Format) -> CliError {
    CliError::Usage(format!("{cmd} does not support --format {format:?}").to_lowercase())
}

// ---------------------------------------------------------------------------
// spectrum

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenvalueRow {
    pub value: f64,
    /// `value` rounded to six decimals, for stable diffs.
    pub rounded: f64,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub method: String,
    /// `None` when the method does not apply to this modulus.
    pub matches: Option<bool>,
    pub max_deviation: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub n: u64,
    pub method: String,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub tolerance: f64,
    pub eigenvalues: Vec<EigenvalueRow>,
    /// With `--method all`: every other route against the structural one.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub comparisons: Vec<Comparison>,
}

impl SpectrumReport {
    /// The multiset this report was rendered from.
    pub fn to_multiset(&self) -> SpectrumMultiset {
        SpectrumMultiset::from_entries(
            self.eigenvalues.iter().map(|e| (e.value, e.multiplicity)),
            self.tolerance,
        )
    }
}

fn round6(v: f64) -> f64 {
    let r = (v * 1e6).round() / 1e6;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

fn eigenvalue_rows(s: &SpectrumMultiset) -> Vec<EigenvalueRow> {
    s.entries()
        .iter()
        .map(|e| EigenvalueRow {
            value: e.value,
            rounded: round6(e.value),
            multiplicity: e.multiplicity,
        })
        .collect()
}

/// Edge count of the full graph from the reduced graph: classes are
/// edgeless, and adjacent classes are completely joined.
fn edge_count(lattice: &IdealLattice) -> usize {
    let r = lattice.reduced_graph();
    r.edges()
        .iter()
        .map(|&(i, j)| r.weights[i] * r.weights[j])
        .sum()
}

fn compute(
    cfg: &RunConfig,
    lattice: &IdealLattice,
    method: Method,
) -> Result<SpectrumMultiset, CoreError> {
    let ctx = lattice.ctx();
    match method {
        Method::Structural => spectrum::structural_spectrum_of(lattice, cfg.tol),
        Method::Oracle => CozeroGraph::build(ctx)?.oracle_spectrum(cfg.tol),
        Method::ClosedForm => families::closed_form_spectrum(ctx, cfg.tol),
        Method::All => unreachable!("expanded by the caller"),
    }
}

/// Computes the spectrum (or all three) for one modulus.
pub fn spectrum_report(cfg: &RunConfig) -> Result<SpectrumReport, CliError> {
    let ctx = cfg.ctx()?;
    let lattice = IdealLattice::enumerate(&ctx)?;
    let primary = match cfg.method {
        Method::All => Method::Structural,
        m => m,
    };
    let base = compute(cfg, &lattice, primary)?;
    let mut comparisons = Vec::new();
    if cfg.method == Method::All {
        for other in [Method::Oracle, Method::ClosedForm] {
            let cmp = match compute(cfg, &lattice, other) {
                Ok(s) => match compare_multisets(&s, &base, cfg.tol) {
                    Ok(r) => Comparison {
                        method: other.name().into(),
                        matches: Some(r.matches),
                        max_deviation: Some(r.worst_deviation),
                        note: None,
                    },
                    Err(e) => Comparison {
                        method: other.name().into(),
                        matches: Some(false),
                        max_deviation: None,
                        note: Some(e.to_string()),
                    },
                },
                Err(
                    e @ (CoreError::UnsupportedFamily(_) | CoreError::DegenerateParameters { .. }),
                ) => Comparison {
                    method: other.name().into(),
                    matches: None,
                    max_deviation: None,
                    note: Some(e.to_string()),
                },
                Err(e) => return Err(e.into()),
            };
            comparisons.push(cmp);
        }
    }
    Ok(SpectrumReport {
        n: cfg.n,
        method: cfg.method.name().into(),
        vertex_count: ctx.vertex_count(),
        edge_count: edge_count(&lattice),
        tolerance: base.tolerance(),
        eigenvalues: eigenvalue_rows(&base),
        comparisons,
    })
}

fn cmd_spectrum(a: &SpectrumArgs, max_n: u64) -> CmdResult {
    if !matches!(a.format, Format::Text | Format::Json | Format::Csv) {
        return Err(unsupported_format("spectrum", a.format));
    }
    let cfg = RunConfig {
        output_path: a.output.clone(),
        ..RunConfig::new(a.n, a.method, a.tol, max_n, a.format)?
    };
    let report = spectrum_report(&cfg)?;
    let mismatch = report.comparisons.iter().any(|c| c.matches == Some(false));
    let stdout = match cfg.output_format {
        Format::Json => json(&report),
        Format::Csv => spectrum_csv(&report),
        _ => spectrum_text(&report),
    };
    Ok((
        cfg.output_path,
        Outcome {
            code: if mismatch { EXIT_MISMATCH } else { EXIT_OK },
            stdout,
            stderr: String::new(),
        },
    ))
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn spectrum_text(r: &SpectrumReport) -> String {
    let s = r.to_multiset();
    let mut out = String::new();
    let _ = writeln!(
        out,
        "n = {} ({}): {} vertices, {} edges",
        r.n, r.method, r.vertex_count, r.edge_count
    );
    let _ = writeln!(out, "{s}");
    if let Ok((radius, connectivity)) = spectrum::extremes(&s) {
        let _ = writeln!(
            out,
            "spectral radius {}, algebraic connectivity {}",
            round6(radius),
            round6(connectivity)
        );
    }
    for c in &r.comparisons {
        let verdict = match (c.matches, c.max_deviation) {
            (Some(true), Some(d)) => format!("match (max deviation {d:.1e})"),
            (Some(false), Some(d)) => format!("MISMATCH (max deviation {d:.3e})"),
            (Some(false), None) => format!("MISMATCH ({})", c.note.as_deref().unwrap_or("")),
            _ => format!("n/a ({})", c.note.as_deref().unwrap_or("")),
        };
        let _ = writeln!(out, "{} vs structural: {verdict}", c.method);
    }
    out
}

fn spectrum_csv(r: &SpectrumReport) -> String {
    let mut out = String::from("n,method,value,rounded,multiplicity\n");
    for e in &r.eigenvalues {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            r.n, r.method, e.value, e.rounded, e.multiplicity
        );
    }
    out
}

// ---------------------------------------------------------------------------
// reduced / graph

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducedVertex {
    pub id: usize,
    pub label: String,
    pub generator: String,
    pub weight: usize,
    pub degree: usize,
    pub weighted_degree: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducedExport {
    pub n: u64,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub vertices: Vec<ReducedVertex>,
    pub edges: Vec<(usize, usize)>,
}

/// Reduced graph with vertices sorted by canonical generator.
pub fn reduced_export(n: u64, max_n: u64) -> Result<ReducedExport, CliError> {
    let ctx = RingContext::with_cap(n, max_n)?;
    let lattice = IdealLattice::enumerate(&ctx)?;
    let r = lattice.reduced_graph();
    let mut order: Vec<usize> = (0..r.vertex_count()).collect();
    order.sort_by_key(|&i| r.generators[i]);
    let mut position = vec![0; order.len()];
    for (pos, &i) in order.iter().enumerate() {
        position[i] = pos;
    }
    let vertices = order
        .iter()
        .enumerate()
        .map(|(id, &i)| ReducedVertex {
            id,
            label: r.labels[i].clone(),
            generator: r.generators[i].to_string(),
            weight: r.weights[i],
            degree: r.degree(i),
            weighted_degree: r.weighted_degree(i),
        })
        .collect();
    let mut edges: Vec<(usize, usize)> = r
        .edges()
        .into_iter()
        .map(|(i, j)| {
            let (a, b) = (position[i], position[j]);
            (a.min(b), a.max(b))
        })
        .collect();
    edges.sort_unstable();
    Ok(ReducedExport {
        n,
        vertex_count: r.vertex_count(),
        edge_count: edges.len(),
        vertices,
        edges,
    })
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn cmd_reduced(a: &ExportArgs, max_n: u64) -> CmdResult {
    let r = reduced_export(a.n, max_n)?;
    let stdout = match a.format {
        Format::Json => json(&r),
        Format::Dot => {
            let mut out = format!("graph reduced_{} {{\n  node [shape=ellipse];\n", r.n);
            for v in &r.vertices {
                let _ = writeln!(
                    out,
                    "  v{} [label=\"{}\\n<{}>  w={}\"];",
                    v.id,
                    dot_escape(&v.label),
                    dot_escape(&v.generator),
                    v.weight
                );
            }
            for (i, j) in &r.edges {
                let _ = writeln!(out, "  v{i} -- v{j};");
            }
            out.push_str("}\n");
            out
        }
        Format::Text => {
            let mut out = format!(
                "reduced graph of n = {}: {} vertices, {} edges\n",
                r.n, r.vertex_count, r.edge_count
            );
            let _ = writeln!(
                out,
                "{:>4}  {:<14} {:<10} {:>7} {:>6} {:>8}",
                "id", "class", "generator", "weight", "degree", "D"
            );
            for v in &r.vertices {
                let _ = writeln!(
                    out,
                    "{:>4}  {:<14} {:<10} {:>7} {:>6} {:>8}",
                    v.id,
                    v.label,
                    format!("<{}>", v.generator),
                    v.weight,
                    v.degree,
                    v.weighted_degree
                );
            }
            let edges: Vec<String> = r.edges.iter().map(|(i, j)| format!("{i}-{j}")).collect();
            let _ = writeln!(out, "edges: {}", edges.join(" "));
            out
        }
        f => return Err(unsupported_format("reduced", f)),
    };
    Ok((
        a.output.clone(),
        Outcome {
            stdout,
            ..Outcome::default()
        },
    ))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphExport {
    pub n: u64,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub components: usize,
    pub vertices: Vec<String>,
    pub edges: Vec<(usize, usize)>,
}

pub fn graph_export(n: u64, max_n: u64) -> Result<GraphExport, CliError> {
    let g = CozeroGraph::build(&RingContext::with_cap(n, max_n)?)?;
    Ok(GraphExport {
        n,
        vertex_count: g.vertex_count(),
        edge_count: g.edge_count(),
        components: g.connectivity_report().component_count,
        vertices: g.vertices().iter().map(PolyElement::to_string).collect(),
        edges: g.edges().collect(),
    })
}

fn cmd_graph(a: &ExportArgs, max_n: u64) -> CmdResult {
    let g = graph_export(a.n, max_n)?;
    let stdout = match a.format {
        Format::Json => json(&g),
        Format::Dot => {
            let mut out = format!("graph cozero_{} {{\n", g.n);
            for (i, v) in g.vertices.iter().enumerate() {
                let _ = writeln!(out, "  v{i} [label=\"{}\"];", dot_escape(v));
            }
            for (i, j) in &g.edges {
                let _ = writeln!(out, "  v{i} -- v{j};");
            }
            out.push_str("}\n");
            out
        }
        Format::Text => {
            let mut adjacency = vec![Vec::new(); g.vertex_count];
            for &(i, j) in &g.edges {
                adjacency[i].push(j);
                adjacency[j].push(i);
            }
            let mut out = format!(
                "cozero-divisor graph of n = {}: {} vertices, {} edges, {} components\n",
                g.n, g.vertex_count, g.edge_count, g.components
            );
            for (i, nbrs) in adjacency.iter_mut().enumerate() {
                nbrs.sort_unstable();
                let names: Vec<&str> = nbrs.iter().map(|&j| g.vertices[j].as_str()).collect();
                let _ = writeln!(out, "{}: {}", g.vertices[i], names.join(" "));
            }
            out
        }
        f => return Err(unsupported_format("graph", f)),
    };
    Ok((
        a.output.clone(),
        Outcome {
            stdout,
            ..Outcome::default()
        },
    ))
}

// ---------------------------------------------------------------------------
// verify

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TableStatus {
    Pass,
    Fail,
    #[serde(rename = "n_a")]
    NotApplicable,
}

impl TableStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            TableStatus::Pass => "pass",
            TableStatus::Fail => "fail",
            TableStatus::NotApplicable => "n_a",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyRow {
    pub n: u64,
    pub vertex_count: usize,
    pub edge_count: usize,
    /// Structural and oracle spectra agree.
    #[serde(rename = "match")]
    pub matches: bool,
    pub max_eig_dev: f64,
    pub components: usize,
    pub prime_power: bool,
    /// `connected`, or `disconnected, isolated=<g>` with the isolated class.
    pub connectivity: String,
    /// Disconnected exactly for prime powers, with the expected isolated class.
    pub connectivity_ok: bool,
    /// Published class cardinalities match the enumeration.
    pub table_check: TableStatus,
    /// Published degrees that differ from the computed ones.
    pub degree_discrepancies: Vec<String>,
    pub error: Option<String>,
}

impl VerifyRow {
    pub fn passes(&self) -> bool {
        self.error.is_none()
            && self.matches
            && self.connectivity_ok
            && self.table_check != TableStatus::Fail
    }

    fn failed(n: u64, error: String) -> Self {
        Self {
            n,
            vertex_count: 0,
            edge_count: 0,
            matches: false,
            max_eig_dev: f64::NAN,
            components: 0,
            prime_power: false,
            connectivity: String::new(),
            connectivity_ok: false,
            table_check: TableStatus::NotApplicable,
            degree_discrepancies: Vec::new(),
            error: Some(error),
        }
    }
}

/// All checks for one modulus; failures are recorded in the row.
pub fn verify_one(n: u64, tol: f64, max_n: u64) -> VerifyRow {
    verify_inner(n, tol, max_n).unwrap_or_else(|e| VerifyRow::failed(n, e.to_string()))
}

fn verify_inner(n: u64, tol: f64, max_n: u64) -> Result<VerifyRow, CoreError> {
    let ctx = RingContext::with_cap(n, max_n)?;
    let lattice = IdealLattice::enumerate(&ctx)?;
    let graph = CozeroGraph::build(&ctx)?;
    let structural = spectrum::structural_spectrum_of(&lattice, tol)?;
    let oracle = graph.oracle_spectrum(tol)?;
    let report = compare_multisets(&structural, &oracle, tol)?;

    let conn = graph.connectivity_report();
    let prime_power = ctx.is_prime_power();
    let isolated_class = match ctx.factorization() {
        [(p, k)] => lattice.find(PolyElement::new(p.pow(k - 1), 0)),
        _ => None,
    };
    let connectivity_ok = match isolated_class {
        Some(c) => {
            let mut expected = lattice.generators(c);
            expected.sort();
            // A single vertex (n = 2) is trivially connected.
            (conn.component_count > 1 || graph.vertex_count() == 1)
                && conn.isolated_vertices == expected
        }
        None => conn.is_connected(),
    };
    let connectivity = if conn.is_connected() {
        "connected".to_string()
    } else {
        let classes: Vec<String> = isolated_class
            .map(|c| format!("<{}>", lattice.ideals()[c].canonical_generator))
            .into_iter()
            .collect();
        format!("disconnected, isolated={}", classes.join("+"))
    };

    let (table_check, degree_discrepancies) = match check_tables(&lattice) {
        Ok(rows) => {
            let status = if rows.iter().all(|r| r.cardinality_ok()) {
                TableStatus::Pass
            } else {
                TableStatus::Fail
            };
            let notes = rows
                .iter()
                .filter(|r| !r.degree_ok())
                .map(|r| {
                    format!(
                        "{}: published degree {}, computed {}",
                        r.label,
                        r.expected_degree.unwrap_or_default(),
                        r.actual_degree
                            .map_or("missing".to_string(), |d| d.to_string())
                    )
                })
                .collect();
            (status, notes)
        }
        Err(CoreError::UnsupportedFamily(_)) => (TableStatus::NotApplicable, Vec::new()),
        Err(e) => return Err(e),
    };

    Ok(VerifyRow {
        n,
        vertex_count: graph.vertex_count(),
        edge_count: graph.edge_count(),
        matches: report.matches && report.multiplicity_mismatches.is_empty(),
        max_eig_dev: report.worst_deviation,
        components: conn.component_count,
        prime_power,
        connectivity,
        connectivity_ok,
        table_check,
        degree_discrepancies,
        error: None,
    })
}

/// Verifies every modulus in `from..=to` on all available cores. Rows come
/// back ordered by `n`.
pub fn verify_range(from: u64, to: u64, tol: f64, max_n: u64) -> Vec<VerifyRow> {
    let moduli: Vec<u64> = (from..=to).collect();
    let next = AtomicUsize::new(0);
    let rows = Mutex::new(Vec::with_capacity(moduli.len()));
    let workers = std::thread::available_parallelism()
        .map_or(1, |w| w.get())
        .min(moduli.len().max(1));
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(&n) = moduli.get(i) else { break };
                let row = verify_one(n, tol, max_n);
                rows.lock()
                    .expect("no worker panics while holding the lock")
                    .push(row);
            });
        }
    });
    let mut rows = rows.into_inner().expect("workers finished");
    rows.sort_by_key(|r| r.n);
    rows
}

fn cmd_verify(a: &VerifyArgs, max_n: u64) -> CmdResult {
    if a.from < 2 || a.from > a.to {
        return Err(CliError::Usage(format!(
            "invalid range {}..={}",
            a.from, a.to
        )));
    }
    if a.to > max_n {
        return Err(CoreError::CapExceeded { n: a.to, max_n }.into());
    }
    check_tol(a.tol)?;
    let rows = verify_range(a.from, a.to, a.tol, max_n);
    let all_pass = rows.iter().all(VerifyRow::passes);
    let stdout = match a.format {
        Format::Csv => verify_csv(&rows),
        Format::Json => json(&rows),
        Format::Text => verify_text(&rows),
        f => return Err(unsupported_format("verify", f)),
    };
    let mut stderr = String::new();
    if a.format != Format::Text {
        for r in &rows {
            for note in &r.degree_discrepancies {
                let _ = writeln!(stderr, "note: n = {}: {note}", r.n);
            }
            if let Some(e) = &r.error {
                let _ = writeln!(stderr, "error: n = {}: {e}", r.n);
            }
        }
    }
    Ok((
        a.output.clone(),
        Outcome {
            code: if all_pass { EXIT_OK } else { EXIT_MISMATCH },
            stdout,
            stderr,
        },
    ))
}

pub const VERIFY_CSV_HEADER: &str =
    "n,vertex_count,edge_count,match,max_eig_dev,components,prime_power,table_check";

fn verify_csv(rows: &[VerifyRow]) -> String {
    let mut out = format!("{VERIFY_CSV_HEADER}\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{:.3e},{},{},{}",
            r.n,
            r.vertex_count,
            r.edge_count,
            r.matches,
            r.max_eig_dev,
            r.components,
            r.prime_power,
            r.table_check.as_str()
        );
    }
    out
}

fn verify_text(rows: &[VerifyRow]) -> String {
    let mut out = format!(
        "{:>4} {:>6} {:>8} {:>8} {:>9}  {:<34} {:<6} {}\n",
        "n", "|V|", "|E|", "spectra", "max_dev", "connectivity", "tables", "status"
    );
    for r in rows {
        let status = if r.passes() { "ok" } else { "FAIL" };
        let _ = writeln!(
            out,
            "{:>4} {:>6} {:>8} {:>8} {:>9.1e}  {:<34} {:<6} {}",
            r.n,
            r.vertex_count,
            r.edge_count,
            if r.matches { "match" } else { "MISMATCH" },
            r.max_eig_dev,
            r.connectivity,
            r.table_check.as_str(),
            status
        );
    }
    for r in rows {
        if let Some(e) = &r.error {
            let _ = writeln!(out, "error: n = {}: {e}", r.n);
        }
        for note in &r.degree_discrepancies {
            let _ = writeln!(out, "note: n = {}: {note}", r.n);
        }
    }
    let passed = rows.iter().filter(|r| r.passes()).count();
    let _ = writeln!(out, "{passed} of {} moduli pass", rows.len());
    out
}
