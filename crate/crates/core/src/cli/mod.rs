//! Command-line front end. [`run`] returns the exit code and both output
//! streams so that the commands can be driven from tests.

pub mod document;
pub mod service;
pub mod suite;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::classify::{self, ClusterTypeVerdict};
use crate::cluster;
use crate::error::{Error, Result};
use crate::flagmodels;
use crate::seedgen::{self, ExchangeMatrix};
use document::{SeedDocument, SeedRequest, FORMAT_VERSION};

/// Cap used by `classify --deep` unless `--cap` is given.
pub const DEEP_CAP: usize = 20_000_000;

#[derive(Parser, Debug)]
#[command(name = "flagcluster", version, about = "Cluster structures on partial flag varieties")]
pub struct Cli {
    /// Machine-readable JSON on stdout.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build the initial seed B(i, J).
    Seed(SeedArgs),
    /// Mutate a seed document.
    Mutate(MutateArgs),
    /// Decide the cluster type.
    Classify(ClassifyArgs),
    /// Quadric seed and its exchange relations.
    Quadric {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        verify: bool,
    },
    /// Rectangular grid seed of a Grassmannian.
    Grid {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        j: usize,
        #[arg(long)]
        verify: bool,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, default_value = "paper")]
        suite: String,
        /// Include the rank 7 and 8 classification rows.
        #[arg(long)]
        deep: bool,
        /// Run a single check, e.g. AC-3.
        #[arg(long)]
        only: Option<String>,
    },
    /// Serve the JSON API.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
    },
}

#[derive(Args, Debug)]
pub struct SeedArgs {
    /// Dynkin type, e.g. A5 or D4.
    #[arg(long = "type")]
    pub diagram: Option<String>,
    #[arg(long = "J", value_delimiter = ',')]
    pub j: Option<Vec<usize>>,
    /// Reduced word in R(w0, K), letters separated by commas.
    #[arg(long, value_delimiter = ',')]
    pub word: Option<Vec<usize>>,
    /// Append the degree rows (type A).
    #[arg(long)]
    pub extend: bool,
    #[arg(long)]
    pub preset: Option<String>,
    /// Allow types B, C, F and G.
    #[arg(long)]
    pub extended: bool,
    /// Write the quiver as Graphviz DOT.
    #[arg(long)]
    pub dot: Option<PathBuf>,
    /// Write the seed document.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct MutateArgs {
    /// Seed document (JSON).
    #[arg(long)]
    pub seed: PathBuf,
    /// Column labels in execution order, e.g. `4,5,1`.
    #[arg(long, value_delimiter = ',', conflicts_with = "compose")]
    pub seq: Option<Vec<String>>,
    /// Composition written right to left, e.g. `μ1μ5μ4` (runs 4, then 5, then 1).
    #[arg(long)]
    pub compose: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub dot: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    #[arg(long = "type")]
    pub diagram: Option<String>,
    #[arg(long = "J", value_delimiter = ',')]
    pub j: Option<Vec<usize>>,
    /// Seed document, exchange matrix, or bare principal part (JSON).
    #[arg(long, conflicts_with = "diagram")]
    pub matrix: Option<PathBuf>,
    #[arg(long)]
    pub extended: bool,
    /// Raise the search cap for large mutation classes.
    #[arg(long)]
    pub deep: bool,
    #[arg(long)]
    pub cap: Option<usize>,
    /// Write the Dynkin-form quiver as DOT.
    #[arg(long)]
    pub dot: Option<PathBuf>,
}

#[derive(Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let json_mode = cli.json;
    match execute(cli) {
        Ok(o) => o,
        Err(e) => {
            let stderr = if json_mode {
                let v = json!({"v": FORMAT_VERSION, "error": {"kind": e.kind(), "message": e.to_string()}});
                format!("{v}\n")
            } else {
                format!("error: {e}\n")
            };
            Outcome { code: 1, stdout: String::new(), stderr }
        }
    }
}

fn ok(stdout: String) -> Outcome {
    Outcome { code: 0, stdout, stderr: String::new() }
}

fn json_line(v: &Value) -> String {
    format!("{}\n", serde_json::to_string_pretty(v).expect("values serialize"))
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::Invalid(format!("cannot write {}: {e}", path.display())))
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))
}

fn execute(cli: Cli) -> Result<Outcome> {
    let json_mode = cli.json;
    match cli.command {
        Command::Seed(a) => cmd_seed(a, json_mode),
        Command::Mutate(a) => cmd_mutate(a, json_mode),
        Command::Classify(a) => cmd_classify(a, json_mode),
        Command::Quadric { n, verify } => cmd_quadric(n, verify, json_mode),
        Command::Grid { n, j, verify } => cmd_grid(n, j, verify, json_mode),
        Command::Verify { suite, deep, only } => cmd_verify(&suite, deep, only.as_deref(), json_mode),
        Command::Serve { port, host } => {
            let rt = tokio::runtime::Runtime::new().map_err(|e| Error::Invalid(e.to_string()))?;
            rt.block_on(service::serve(&host, port)).map_err(|e| Error::Invalid(format!("serve: {e}")))?;
            Ok(ok(String::new()))
        }
    }
}

/// Plain-text table of an exchange matrix with row and column labels.
pub fn render_matrix(b: &ExchangeMatrix) -> String {
    let width = b
        .row_labels()
        .iter()
        .map(|l| l.chars().count())
        .chain(b.entries().iter().flatten().map(|x| x.to_string().len()))
        .max()
        .unwrap_or(1)
        .max(2);
    let cell = |s: &str| format!("{s:>width$} ");
    let mut out = cell("");
    for c in b.col_labels() {
        out += &cell(c);
    }
    out = out.trim_end().to_string();
    out.push('\n');
    for (label, row) in b.row_labels().iter().zip(b.entries()) {
        let mut line = cell(label);
        for x in row {
            line += &cell(&x.to_string());
        }
        out += line.trim_end();
        out.push('\n');
    }
    out
}

fn render_document(doc: &SeedDocument) -> String {
    let mut out = String::new();
    if let Some(d) = &doc.diagram {
        let _ = writeln!(out, "type {d}");
    }
    if let Some(j) = &doc.j {
        let _ = writeln!(out, "J = {j:?}");
    }
    if let Some(w) = &doc.word {
        let _ = writeln!(out, "word {}", w.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","));
    }
    let _ = writeln!(out, "exchange matrix ({} x {}):", doc.matrix.nrows(), doc.matrix.ncols());
    out += &render_matrix(&doc.matrix);
    if !doc.initial_labels.is_empty() {
        let _ = writeln!(out, "initial minors:");
        for l in &doc.initial_labels {
            match &l.polynomial {
                Some(p) => {
                    let _ = writeln!(out, "  {:>4}  {}  = {p}", l.row, l.minor);
                }
                None => {
                    let _ = writeln!(out, "  {:>4}  {}", l.row, l.minor);
                }
            }
        }
    }
    for n in &doc.notes {
        let _ = writeln!(out, "note: {n}");
    }
    out
}

fn cmd_seed(a: SeedArgs, json_mode: bool) -> Result<Outcome> {
    let req = SeedRequest {
        diagram: a.diagram,
        j: a.j,
        word: a.word,
        preset: a.preset,
        extend: a.extend,
        extended: a.extended,
    };
    let doc = document::build_seed(&req)?;
    if let Some(p) = &a.out {
        write_file(p, &doc.to_json())?;
    }
    if let Some(p) = &a.dot {
        write_file(p, &doc.matrix.to_dot("seed"))?;
    }
    Ok(ok(if json_mode { format!("{}\n", doc.to_json()) } else { render_document(&doc) }))
}

fn cmd_mutate(a: MutateArgs, json_mode: bool) -> Result<Outcome> {
    let mut doc = SeedDocument::from_json(&read_file(&a.seed)?)?;
    let seq = match (a.seq, a.compose) {
        (Some(s), None) => s,
        (None, Some(c)) => cluster::parse_composition(&c)?,
        _ => return Err(Error::Missing("--seq or --compose".into())),
    };
    let mut steps = Vec::new();
    let mut text = String::new();
    for token in &seq {
        let label = doc.resolve_label(token)?;
        let (next, var) = doc.mutate(&label)?;
        let _ = writeln!(text, "mu_{label}: {label} = {var}");
        steps.push(json!({"label": label, "text": var}));
        doc = next;
    }
    if let Some(p) = &a.out {
        write_file(p, &doc.to_json())?;
    }
    if let Some(p) = &a.dot {
        write_file(p, &doc.matrix.to_dot("seed"))?;
    }
    if json_mode {
        let v = json!({"v": FORMAT_VERSION, "sequence": seq, "steps": steps, "seed": doc});
        return Ok(ok(json_line(&v)));
    }
    text += &render_matrix(&doc.matrix);
    Ok(ok(text))
}

fn matrix_from_file(path: &Path) -> Result<ExchangeMatrix> {
    let s = read_file(path)?;
    let v: Value = serde_json::from_str(&s).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
    if v.get("vars").is_some() {
        return Ok(SeedDocument::from_json(&s)?.matrix);
    }
    if v.get("entries").is_some() {
        return serde_json::from_value(v).map_err(|e| Error::MalformedMatrix(e.to_string()));
    }
    let p: Vec<Vec<i64>> = serde_json::from_value(v).map_err(|e| Error::MalformedMatrix(e.to_string()))?;
    ExchangeMatrix::from_principal(p)
}

fn cmd_classify(a: ClassifyArgs, json_mode: bool) -> Result<Outcome> {
    let cap = a.cap.unwrap_or(if a.deep { DEEP_CAP.max(classify::cap_from_env()) } else { classify::cap_from_env() });
    let v = match &a.matrix {
        Some(p) => classify::is_finite_type(&matrix_from_file(p)?, cap)?,
        None => {
            let req = service::ClassifyRequest {
                diagram: Some(a.diagram.clone().ok_or_else(|| Error::Missing("--type or --matrix".into()))?),
                j: a.j.clone(),
                extended: a.extended,
                ..Default::default()
            };
            service::classify_request(&req, cap)?.1
        }
    };
    let report = service::verdict_json(&v);
    if let (Some(p), Some(dot)) = (&a.dot, report.get("dot").and_then(Value::as_str)) {
        write_file(p, dot)?;
    }
    let code = if matches!(v, ClusterTypeVerdict::Unknown { .. }) { 3 } else { 0 };
    let stdout = if json_mode {
        json_line(&report)
    } else {
        let mut s = format!("{v}\n");
        match &v {
            ClusterTypeVerdict::Finite { sequence, .. } => {
                let _ = writeln!(s, "sequence: {}", fmt_seq(sequence));
            }
            ClusterTypeVerdict::Infinite { witness: classify::InfiniteWitness::EntryBound { sequence, .. } } => {
                let _ = writeln!(s, "sequence: {}", fmt_seq(sequence));
            }
            ClusterTypeVerdict::Unknown { explored } => {
                let _ = writeln!(s, "cap reached after {explored} quivers; try --deep or --cap");
            }
            _ => {}
        }
        s
    };
    Ok(Outcome { code, stdout, stderr: String::new() })
}

fn fmt_seq(s: &[String]) -> String {
    if s.is_empty() {
        "(none)".into()
    } else {
        s.join(",")
    }
}

fn cmd_quadric(n: usize, verify: bool, json_mode: bool) -> Result<Outcome> {
    let b = seedgen::quadric_seed(n)?;
    if !verify {
        return Ok(ok(if json_mode {
            json_line(&json!({"v": FORMAT_VERSION, "matrix": b}))
        } else {
            render_matrix(&b)
        }));
    }
    let rels = flagmodels::verify_quadric_relations(n)?;
    let pass = rels.iter().all(|r| r.holds && r.seed_agrees);
    let stdout = if json_mode {
        let list: Vec<Value> = rels
            .iter()
            .map(|r| json!({"k": r.k, "lhs": r.lhs, "rhs": r.rhs, "rhs_y": r.rhs_y, "holds": r.holds, "seed_agrees": r.seed_agrees}))
            .collect();
        json_line(&json!({"v": FORMAT_VERSION, "n": n, "passed": pass, "relations": list}))
    } else {
        let mut s = String::new();
        for r in &rels {
            let mark = if r.holds && r.seed_agrees { "PASS" } else { "FAIL" };
            let _ = writeln!(s, "[{mark}] k={}: {} = {}   ({})", r.k, r.lhs, r.rhs, r.rhs_y);
        }
        let _ = writeln!(s, "{}", if pass { "all relations hold" } else { "some relations fail" });
        s
    };
    Ok(Outcome { code: if pass { 0 } else { 1 }, stdout, stderr: String::new() })
}

fn cmd_grid(n: usize, j: usize, verify: bool, json_mode: bool) -> Result<Outcome> {
    let g = seedgen::grassmannian_grid_seed(n, j)?;
    let mut checks = Vec::new();
    if verify {
        checks.push(("matches the flag seed", flagmodels::grid_pipeline_matching(n, j)?.is_some()));
        if j >= 2 && j < n {
            checks.push(("corner exchange relation", flagmodels::verify_grid_corner_relation(n, j)?));
        }
    }
    let pass = checks.iter().all(|c| c.1);
    let stdout = if json_mode {
        let list: Vec<Value> = checks.iter().map(|(n, p)| json!({"check": n, "passed": p})).collect();
        json_line(&json!({"v": FORMAT_VERSION, "subsets": g.subsets, "matrix": g.matrix, "checks": list, "passed": pass}))
    } else {
        let mut s = String::new();
        for r in 0..g.rows() {
            let row: Vec<String> = (0..g.cols())
                .map(|c| if g.is_frozen(r, c) { format!("[{}]", g.label(r, c)) } else { g.label(r, c) })
                .collect();
            let _ = writeln!(s, "{}", row.join("  "));
        }
        s += &render_matrix(&g.matrix);
        for (name, p) in &checks {
            let _ = writeln!(s, "[{}] {name}", if *p { "PASS" } else { "FAIL" });
        }
        s
    };
    Ok(Outcome { code: if pass { 0 } else { 1 }, stdout, stderr: String::new() })
}

fn cmd_verify(suite_name: &str, deep: bool, only: Option<&str>, json_mode: bool) -> Result<Outcome> {
    if suite_name != "paper" {
        return Err(Error::Invalid(format!("unknown suite {suite_name:?}")));
    }
    let report = match only {
        Some(id) => {
            let c = suite::run_check(id, deep).ok_or_else(|| Error::Invalid(format!("unknown check {id:?}")))?;
            suite::SuiteReport {
                v: FORMAT_VERSION,
                suite: suite_name.into(),
                deep,
                passed: c.passed,
                millis: c.millis,
                checks: vec![c],
            }
        }
        None => suite::run_paper_suite(deep),
    };
    let stdout = if json_mode {
        json_line(&serde_json::to_value(&report).expect("reports serialize"))
    } else {
        report.render()
    };
    Ok(Outcome { code: if report.passed { 0 } else { 1 }, stdout, stderr: String::new() })
}
